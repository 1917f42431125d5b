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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace polyqubo {

using SolutionVector = std::vector<double>;

/// A real polynomial system F_i(x) = P0_i + sum_j P1_ij x_j + sum_jk P2_ijk x_j x_k + ...
///
/// coeffs[n] is a dense row-major tensor of shape N x V^n: the equation index
/// is outermost, followed by n variable indices. Higher-order tensors are not
/// assumed symmetric; index order is significant only through the products it
/// forms, so P2_ijk and P2_ikj both multiply x_j x_k.
class PolynomialSystem {
  public:
    PolynomialSystem(std::size_t num_equations, std::size_t num_variables,
                     std::vector<std::vector<double>> coeffs);

    /// Degree-1 system P0 + P1 x.
    static PolynomialSystem linear(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0);

    static PolynomialSystem from_json(std::string_view text);
    static PolynomialSystem load(const std::filesystem::path& path);
    std::string to_json() const;

    std::size_t num_equations() const { return num_equations_; }
    std::size_t num_variables() const { return num_variables_; }
    std::size_t degree() const { return coeffs_.size() - 1; }

    /// Flattened tensor of the given order (N * V^order entries).
    std::span<const double> coeffs(std::size_t order) const { return coeffs_.at(order); }

    std::vector<double> evaluate_residuals(std::span<const double> x) const;
    double chi_squared(std::span<const double> x) const;

    /// P1 as an N x V matrix; zero if degree < 1.
    Eigen::MatrixXd linear_matrix() const;
    Eigen::VectorXd constant_vector() const;

  private:
    void check_point(std::span<const double> x) const;

    std::size_t num_equations_;
    std::size_t num_variables_;
    std::vector<std::vector<double>> coeffs_;
};

/// V^n with overflow protection.
std::size_t tensor_width(std::size_t num_variables, std::size_t order);

}  // namespace polyqubo
