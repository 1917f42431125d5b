// Copyright 2026 The polyqubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <Eigen/Dense>

#include "polyqubo/encoding.hpp"
#include "polyqubo/polysys.hpp"

namespace fixtures {

// 2 x0^2 + 3 x0 x1 + x1^2 + 2 x0 + 4 x1 - 51 = 0
// x0^2 + 2 x0 x1 + 2 x1^2 + 3 x0 + 2 x1 - 46 = 0
inline polyqubo::PolynomialSystem quadratic_system() {
    return polyqubo::PolynomialSystem(2, 2, {{-51, -46}, {2, 4, 3, 2}, {2, 3, 0, 1, 1, 2, 0, 2}});
}

inline constexpr const char* kQuadraticJson = R"({
  "n_equations": 2, "n_variables": 2, "degree": 2,
  "coeffs": [[-51, -46], [[2, 4], [3, 2]], [[[2, 3], [0, 1]], [[1, 2], [0, 2]]]]
})";

inline polyqubo::BitEncoding unit_grid(std::size_t n, unsigned bits) {
    return polyqubo::BitEncoding(std::vector<double>(n, 1.0), std::vector<double>(n, 0.0), bits);
}

}  // namespace fixtures
