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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "polyqubo/encoding.hpp"
#include "polyqubo/polysys.hpp"
#include "polyqubo/qubo.hpp"
#include "polyqubo/solvers.hpp"

namespace polyqubo {

/// Mean response on a grid with its covariance S (symmetric, finite).
struct RegressionDataset {
    RegressionDataset(Eigen::VectorXd x_grid, Eigen::VectorXd y_mean, Eigen::MatrixXd covariance);

    std::size_t size() const { return static_cast<std::size_t>(x.size()); }

    /// CSV with an optional "x,y" header. Without a covariance file S = I.
    static RegressionDataset load_csv(const std::filesystem::path& data,
                                      const std::optional<std::filesystem::path>& covariance = std::nullopt);
    void write_csv(const std::filesystem::path& data,
                   const std::optional<std::filesystem::path>& covariance = std::nullopt) const;

    Eigen::VectorXd x;
    Eigen::VectorXd y;
    Eigen::MatrixXd covariance;
};

/// Basis functions sampled on the grid: design(i, n) = f_n(x_i).
struct BasisSet {
    std::vector<std::string> names;
    Eigen::MatrixXd design;

    std::size_t size() const { return names.size(); }

    /// {1, x, ..., x^degree}
    static BasisSet polynomial(const Eigen::VectorXd& x, unsigned degree);
    /// Parses "poly:<degree>".
    static BasisSet parse(std::string_view spec, const Eigen::VectorXd& x);
};

/// Grid 0..x_count-1, mean 8 + 4x + 7x^2, variance mean / 10 and correlation
/// corr_base^|x_i - x_j|. With a noise seed, y is one multivariate normal draw
/// about the mean with covariance S.
RegressionDataset generate_dataset(std::size_t x_count, double corr_base, std::optional<std::uint64_t> noise_seed);

/// Degree-1 system P1 p + P0 = 0 with P1 = F^T S^-1 F and P0 = -F^T S^-1 y,
/// whose root is the GLS estimate. S^-1 is applied through Cholesky solves.
PolynomialSystem normal_equations(const RegressionDataset& data, const BasisSet& basis);

/// (F p - y)^T S^-1 (F p - y)
double gls_objective(const RegressionDataset& data, const BasisSet& basis, std::span<const double> params);

enum class FitObjective {
    kGls,             ///< QUBO energy equals the GLS objective
    kNormalResidual,  ///< QUBO energy equals ||P1 p + P0||^2
};

struct FitResult {
    std::vector<double> parameters;
    BitString bits;
    /// Energy of the best sample, constants included.
    double qubo_energy = 0.0;
    /// The same energy with the QUBO's constant offset removed.
    double energy_without_offset = 0.0;
    double gls_objective = 0.0;
    /// chi^2 of the normal equations at the fitted parameters.
    double normal_chi_squared = 0.0;
    QuboMatrix qubo;
    SampleSet samples;
};

FitResult fit_qubo(const RegressionDataset& data, const BasisSet& basis, const BitEncoding& encoding,
                   const QuboBackend& backend, FitObjective objective = FitObjective::kGls);

}  // namespace polyqubo
