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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyqubo/encoding.hpp"
#include "polyqubo/solvers.hpp"

namespace polyqubo {

struct ConditionedSpec {
    std::size_t size = 1;
    double kappa = 1.0;
    std::uint64_t seed = 0;
};

/// U diag(1 .. kappa, evenly spaced) U^T with U orthogonal from the QR of a
/// seeded Gaussian matrix. Symmetric positive definite with condition kappa.
Eigen::MatrixXd make_conditioned_matrix(const ConditionedSpec& spec);

/// v_i = 1 - 2i/(N-1); (1) for N = 1.
Eigen::VectorXd make_rhs(std::size_t n);

/// Linear test system used by the sweeps: P1 from make_conditioned_matrix and
/// P0 = -make_rhs, so the solution satisfies P1 x = rhs.
struct LinearInstance {
    Eigen::MatrixXd p1;
    Eigen::VectorXd p0;
};
LinearInstance make_instance(const ConditionedSpec& spec);

/// ||P1 x + P0||^2 / ||P0||^2
double relative_residual(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0, std::span<const double> x);

struct ForwardErrorPoint {
    std::vector<double> x;
    BitString bits;
    double relative_residual = 0.0;
};

/// Rounds the CG solution to the nearest grid point of the encoding.
ForwardErrorPoint forward_error_minimum(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0,
                                        const BitEncoding& encoding);

enum class SweepKind { kSize, kCondition, kPrecision };

const char* to_string(SweepKind kind);
SweepKind parse_sweep_kind(std::string_view name);

struct SweepConfig {
    SweepKind kind = SweepKind::kSize;
    /// Sizes, condition numbers or bit counts depending on kind.
    std::vector<double> values;
    std::size_t size = 12;
    double kappa = 1.1;
    unsigned bits = 2;
    std::uint64_t seed = 0;
    /// Scalar search range for every variable; defaults to [min x, max x] of
    /// the instance's CG solution.
    std::optional<double> lo;
    std::optional<double> hi;
    QuboBackend backend = BruteForceBackend{};

    /// size: kappa 1.1, R 2, N in {2..12}; condition: N 12, R 2, kappa in
    /// {1.1, 10, 100, 1000}; precision: N 4, kappa 1.1, R in {1..6}.
    static SweepConfig defaults(SweepKind kind);
};

struct SweepPoint {
    double param = 0.0;
    std::size_t size = 0;
    double kappa = 0.0;
    unsigned bits = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t num_bits = 0;
    double min_energy = 0.0;
    double relative_residual = 0.0;
    double hit_fraction = 0.0;
    std::uint64_t reads = 0;
    /// Absent for condition sweeps.
    std::optional<double> forward_error_residual;
};

struct SweepReport {
    SweepKind kind = SweepKind::kSize;
    std::vector<SweepPoint> points;

    /// Columns: param,min_energy,rel_residual,hit_fraction,forward_error_residual
    std::string to_csv() const;
    std::string to_json() const;
};

SweepReport run_sweep(const SweepConfig& config);

struct IterationRecord {
    BitEncoding encoding;
    BitString bits;
    std::vector<double> x;
    double relative_residual = 0.0;
    double hit_fraction = 0.0;
    std::uint64_t reads = 0;
    /// The incumbent sat on the edge of its range.
    bool on_boundary = false;
};

struct IterationTrace {
    std::vector<IterationRecord> records;

    double final_residual() const { return records.back().relative_residual; }
    std::string to_json() const;
};

/// Repeated compile-solve-refine on a linear system, starting from the scalar
/// range [lo, hi] for every variable. Stops early once the relative residual
/// falls below 1e-14.
IterationTrace iterate_solve(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0, unsigned bits,
                             std::size_t num_iters, const QuboBackend& backend, double lo = -1.0, double hi = 1.0);

}  // namespace polyqubo
