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

#include "polyqubo/regression.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "polyqubo/compiler.hpp"
#include "polyqubo/error.hpp"
#include "polyqubo/rng.hpp"

namespace polyqubo {

RegressionDataset::RegressionDataset(Eigen::VectorXd x_grid, Eigen::VectorXd y_mean, Eigen::MatrixXd cov)
    : x(std::move(x_grid)), y(std::move(y_mean)), covariance(std::move(cov)) {
    const Eigen::Index n = x.size();
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "dataset is empty");
    if (y.size() != n || covariance.rows() != n || covariance.cols() != n) {
        throw Error(ErrorCode::kDimensionMismatch, "dataset needs x, y of equal length and an X x X covariance");
    }
    if (!x.allFinite() || !y.allFinite() || !covariance.allFinite()) {
        throw Error(ErrorCode::kInvalidArgument, "dataset contains non-finite values");
    }
    const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
    if (!((covariance - covariance.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale)) {
        throw Error(ErrorCode::kInvalidArgument, "covariance matrix is not symmetric");
    }
}

namespace {

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream fields(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(fields, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
            } catch (const std::exception&) {
                numeric = false;
            }
        }
        if (!numeric) {
            if (line_no == 1 && rows.empty()) continue;  // header
            throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) + ": non-numeric field");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RegressionDataset RegressionDataset::load_csv(const std::filesystem::path& data,
                                              const std::optional<std::filesystem::path>& covariance) {
    const auto rows = read_rows(data);
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::VectorXd x(n), y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (rows[i].size() != 2) {
            throw Error(ErrorCode::kParse, data.string() + ": row " + std::to_string(i + 1) + " needs exactly x,y");
        }
        x(i) = rows[i][0];
        y(i) = rows[i][1];
    }
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n);
    if (covariance) {
        const auto cov_rows = read_rows(*covariance);
        if (static_cast<Eigen::Index>(cov_rows.size()) != n) {
            throw Error(ErrorCode::kDimensionMismatch, covariance->string() + ": expected " + std::to_string(n) + " rows");
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            if (static_cast<Eigen::Index>(cov_rows[i].size()) != n) {
                throw Error(ErrorCode::kDimensionMismatch,
                            covariance->string() + ": row " + std::to_string(i + 1) + " needs " + std::to_string(n) + " values");
            }
            for (Eigen::Index j = 0; j < n; ++j) s(i, j) = cov_rows[i][j];
        }
    }
    return RegressionDataset(std::move(x), std::move(y), std::move(s));
}

void RegressionDataset::write_csv(const std::filesystem::path& data,
                                  const std::optional<std::filesystem::path>& covariance_path) const {
    std::ofstream out(data);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + data.string() + "'");
    out << "x,y\n";
    for (Eigen::Index i = 0; i < x.size(); ++i) out << format_double(x(i)) << ',' << format_double(y(i)) << '\n';
    if (!covariance_path) return;
    std::ofstream cov(*covariance_path);
    if (!cov) throw Error(ErrorCode::kIo, "cannot write '" + covariance_path->string() + "'");
    for (Eigen::Index i = 0; i < covariance.rows(); ++i) {
        for (Eigen::Index j = 0; j < covariance.cols(); ++j) cov << (j ? "," : "") << format_double(covariance(i, j));
        cov << '\n';
    }
}

BasisSet BasisSet::polynomial(const Eigen::VectorXd& x, unsigned degree) {
    BasisSet basis;
    basis.design.resize(x.size(), degree + 1);
    for (unsigned n = 0; n <= degree; ++n) {
        basis.names.push_back(n == 0 ? "1" : n == 1 ? "x" : "x^" + std::to_string(n));
        for (Eigen::Index i = 0; i < x.size(); ++i) basis.design(i, n) = std::pow(x(i), static_cast<double>(n));
    }
    return basis;
}

BasisSet BasisSet::parse(std::string_view spec, const Eigen::VectorXd& x) {
    constexpr std::string_view prefix = "poly:";
    if (spec.substr(0, prefix.size()) != prefix) {
        throw Error(ErrorCode::kInvalidArgument, "unknown basis '" + std::string(spec) + "', expected poly:<degree>");
    }
    const std::string digits(spec.substr(prefix.size()));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 2) {
        throw Error(ErrorCode::kInvalidArgument, "basis degree must be a small non-negative integer");
    }
    return polynomial(x, static_cast<unsigned>(std::stoul(digits)));
}

RegressionDataset generate_dataset(std::size_t x_count, double corr_base, std::optional<std::uint64_t> noise_seed) {
    if (x_count == 0) throw Error(ErrorCode::kInvalidArgument, "dataset needs at least one grid point");
    if (!(corr_base > 0.0 && corr_base < 1.0)) throw Error(ErrorCode::kInvalidArgument, "corr_base must lie in (0, 1)");
    const auto n = static_cast<Eigen::Index>(x_count);
    Eigen::VectorXd x(n), mean(n), var(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        x(i) = static_cast<double>(i);
        mean(i) = 8.0 + 4.0 * x(i) + 7.0 * x(i) * x(i);
        var(i) = mean(i) / 10.0;
    }
    Eigen::MatrixXd s(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            s(i, j) = std::sqrt(var(i) * var(j)) * std::pow(corr_base, std::abs(x(i) - x(j)));
        }
    }
    Eigen::VectorXd y = mean;
    if (noise_seed) {
        Eigen::LLT<Eigen::MatrixXd> llt(s);
        if (llt.info() != Eigen::Success) throw Error(ErrorCode::kNumerical, "generated covariance is not positive definite");
        Rng rng(*noise_seed);
        Eigen::VectorXd z(n);
        for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
        y += llt.matrixL() * z;
    }
    return RegressionDataset(std::move(x), std::move(y), std::move(s));
}

namespace {

Eigen::LLT<Eigen::MatrixXd> factor_covariance(const RegressionDataset& data) {
    Eigen::LLT<Eigen::MatrixXd> llt(data.covariance);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::kNumerical, "covariance is singular or not positive definite (Cholesky failed)");
    }
    const double rcond = llt.rcond();
    if (!(rcond > 1e-15)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "covariance is numerically singular (reciprocal condition %.3g)", rcond);
        throw Error(ErrorCode::kNumerical, buf);
    }
    return llt;
}

void check_basis(const RegressionDataset& data, const BasisSet& basis) {
    if (basis.design.rows() != data.x.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "design matrix rows do not match the dataset size");
    }
    if (basis.design.cols() == 0 || basis.design.cols() > data.x.size()) {
        throw Error(ErrorCode::kInvalidArgument, "basis needs between 1 and X functions");
    }
    if (!basis.design.allFinite()) throw Error(ErrorCode::kInvalidArgument, "design matrix is not finite");
}

}  // namespace

PolynomialSystem normal_equations(const RegressionDataset& data, const BasisSet& basis) {
    check_basis(data, basis);
    const auto llt = factor_covariance(data);
    const Eigen::MatrixXd whitened = llt.solve(basis.design);
    Eigen::MatrixXd p1 = basis.design.transpose() * whitened;
    p1 = 0.5 * (p1 + p1.transpose()).eval();
    const Eigen::VectorXd p0 = -(basis.design.transpose() * llt.solve(data.y));
    return PolynomialSystem::linear(p1, p0);
}

double gls_objective(const RegressionDataset& data, const BasisSet& basis, std::span<const double> params) {
    check_basis(data, basis);
    if (params.size() != basis.size()) throw Error(ErrorCode::kDimensionMismatch, "one parameter per basis function");
    const Eigen::Map<const Eigen::VectorXd> p(params.data(), static_cast<Eigen::Index>(params.size()));
    const Eigen::VectorXd r = basis.design * p - data.y;
    return r.dot(factor_covariance(data).solve(r));
}

FitResult fit_qubo(const RegressionDataset& data, const BasisSet& basis, const BitEncoding& encoding,
                   const QuboBackend& backend, FitObjective objective) {
    const PolynomialSystem system = normal_equations(data, basis);
    FitResult fit;
    if (objective == FitObjective::kGls) {
        const auto llt = factor_covariance(data);
        const double yy = data.y.dot(llt.solve(data.y));
        fit.qubo = compile_quadratic_form_qubo(system.linear_matrix(), system.constant_vector(), yy, encoding);
    } else {
        fit.qubo = compile_linear_qubo(system, encoding);
    }
    fit.samples = solve_qubo(fit.qubo, backend);
    const SampleRecord& best = fit.samples.best();
    fit.bits = best.bits;
    fit.parameters = encoding.decode(best.bits);
    fit.qubo_energy = best.energy;
    fit.energy_without_offset = best.energy - fit.qubo.offset();
    fit.gls_objective = gls_objective(data, basis, fit.parameters);
    fit.normal_chi_squared = system.chi_squared(fit.parameters);
    return fit;
}

}  // namespace polyqubo
