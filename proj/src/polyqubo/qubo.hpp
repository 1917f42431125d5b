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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polyqubo {

/// Logical pair (i, j), i < j, represented by one auxiliary bit each.
struct QuadratizationMap {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

/// Upper-triangular QUBO E(psi) = offset + sum_{i <= j} q_ij psi_i psi_j.
///
/// Bits [0, num_logical) are logical; bit num_logical + k is the auxiliary
/// standing for aux_map().pairs[k].
class QuboMatrix {
  public:
    QuboMatrix() = default;
    QuboMatrix(std::size_t num_logical, QuadratizationMap aux_map = {}, double penalty = 0.0);

    std::size_t num_bits() const { return num_bits_; }
    std::size_t num_logical() const { return num_logical_; }
    std::size_t num_aux() const { return aux_map_.pairs.size(); }
    double offset() const { return offset_; }
    double penalty() const { return penalty_; }
    const QuadratizationMap& aux_map() const { return aux_map_; }

    /// Accumulates into (min(i,j), max(i,j)).
    void add(std::size_t i, std::size_t j, double value);
    void add_offset(double value) { offset_ += value; }
    /// Zero below the diagonal.
    double at(std::size_t i, std::size_t j) const;

    double energy(std::span<const std::uint8_t> bits) const;

    /// Extends logical bits with auxiliaries set to the products they stand for.
    std::vector<std::uint8_t> lift(std::span<const std::uint8_t> logical) const;

    /// Largest |q_ij| and smallest non-zero |q_ij| (0 when the matrix is empty).
    std::pair<double, double> coefficient_range() const;

    /// Stable text form: one header line, one "# aux" line per auxiliary, then
    /// "i j value" for every non-zero entry in row-major order.
    std::string to_text() const;
    static QuboMatrix from_text(std::string_view text);

  private:
    std::size_t num_bits_ = 0;
    std::size_t num_logical_ = 0;
    std::vector<double> q_;
    double offset_ = 0.0;
    QuadratizationMap aux_map_;
    double penalty_ = 0.0;
};

}  // namespace polyqubo
