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
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "polyqubo/encoding.hpp"
#include "polyqubo/pubo.hpp"
#include "polyqubo/qubo.hpp"

namespace polyqubo {

struct SampleRecord {
    BitString bits;
    double energy = 0.0;
    std::uint64_t count = 0;
};

struct AnnealSchedule {
    double t_hot = 0.0;
    double t_cold = 0.0;
    std::size_t sweeps = 0;
};

/// Solver output. Records are distinct states sorted by energy, then by bits.
struct SampleSet {
    std::vector<SampleRecord> records;
    std::uint64_t total_reads = 0;
    std::uint64_t rng_seed = 0;
    std::string solver;
    std::optional<AnnealSchedule> schedule;

    const SampleRecord& best() const;
    double min_energy() const { return best().energy; }
    /// Share of reads whose energy matches the lowest observed energy.
    double hit_fraction() const;
    std::string to_json() const;
};

/// Renders bits as a '0'/'1' string, index 0 first.
std::string bits_to_string(const BitString& bits);

struct BruteForceOptions {
    std::size_t max_bits = 24;
    bool all_minimizers = false;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
};

struct GroundState {
    double energy = 0.0;
    /// One state (the lowest index) unless all minimizers were requested.
    std::vector<BitString> states;
    std::uint64_t states_visited = 0;
};

/// Exact minimum over {0,1}^L by Gray-code enumeration with incremental
/// energy updates. Ties are broken towards the smallest state index, where
/// bit k of the index is psi_k.
GroundState brute_force(const PseudoBooleanPolynomial& pubo, const BruteForceOptions& options = {});
GroundState brute_force(const QuboMatrix& qubo, const BruteForceOptions& options = {});

struct SpectrumLevel {
    double energy = 0.0;
    BitString bits;
};

/// Every state with its energy in ascending order; max_bits caps at 20.
std::vector<SpectrumLevel> spectrum(const QuboMatrix& qubo, std::size_t max_bits = 20);

struct AnnealOptions {
    std::uint64_t reads = 1000;
    std::size_t sweeps = 1000;
    std::uint64_t seed = 0;
    std::optional<double> t_hot;
    std::optional<double> t_cold;
    unsigned workers = 0;
};

/// Geometric ladder defaults: T_hot = max|q| * L, T_cold = 1e-3 * min non-zero |q|.
AnnealSchedule resolve_schedule(const QuboMatrix& qubo, const AnnealOptions& options);

/// Independent single-flip Metropolis reads; read r is seeded with seed + r,
/// so the result does not depend on the number of workers.
SampleSet simulated_anneal(const QuboMatrix& qubo, const AnnealOptions& options);

struct BruteForceBackend {
    std::size_t max_bits = 24;
};
struct AnnealBackend {
    AnnealOptions options;
};
using QuboBackend = std::variant<BruteForceBackend, AnnealBackend>;

/// Brute force yields a single record with one read.
SampleSet solve_qubo(const QuboMatrix& qubo, const QuboBackend& backend);

struct CgReport {
    Eigen::VectorXd solution;
    std::size_t iterations = 0;
    /// ||P1 x + P0|| / ||P0||
    double final_relative_residual_norm = 0.0;
    bool converged = false;
};

/// Solves P1 x + P0 = 0 for symmetric positive definite P1, starting at x = 0.
CgReport conjugate_gradient(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0, double tol = 1e-6,
                            std::size_t max_iter = 10000);

}  // namespace polyqubo
