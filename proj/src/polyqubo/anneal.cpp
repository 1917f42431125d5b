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

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <thread>

#include "polyqubo/error.hpp"
#include "polyqubo/rng.hpp"
#include "polyqubo/solvers.hpp"

namespace polyqubo {

AnnealSchedule resolve_schedule(const QuboMatrix& qubo, const AnnealOptions& options) {
    const auto [largest, smallest] = qubo.coefficient_range();
    AnnealSchedule s;
    s.sweeps = options.sweeps;
    s.t_hot = options.t_hot.value_or(largest > 0.0 ? largest * static_cast<double>(qubo.num_bits()) : 1.0);
    s.t_cold = options.t_cold.value_or(smallest > 0.0 ? 1e-3 * smallest : 1e-3);
    if (!(s.t_hot > 0.0) || !(s.t_cold > 0.0) || !std::isfinite(s.t_hot) || !std::isfinite(s.t_cold)) {
        throw Error(ErrorCode::kInvalidArgument, "annealing temperatures must be finite and > 0");
    }
    return s;
}

namespace {

BitString anneal_one(const QuboMatrix& q, const std::vector<double>& coupling, const std::vector<double>& betas,
                     std::uint64_t seed) {
    const std::size_t n = q.num_bits();
    Rng rng(seed);
    BitString bits(n);
    for (auto& b : bits) b = rng.bit() ? 1 : 0;
    std::vector<double> field(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            if (l != k && bits[l]) field[k] += coupling[k * n + l];
        }
    }
    for (double beta : betas) {
        for (std::size_t k = 0; k < n; ++k) {
            const double delta = (bits[k] ? -1.0 : 1.0) * (q.at(k, k) + field[k]);
            if (delta > 0.0 && rng.uniform() >= std::exp(-beta * delta)) continue;
            const double s = bits[k] ? -1.0 : 1.0;
            bits[k] ^= 1U;
            const double* col = coupling.data() + k * n;
            for (std::size_t l = 0; l < n; ++l) field[l] += s * col[l];
        }
    }
    return bits;
}

}  // namespace

SampleSet simulated_anneal(const QuboMatrix& qubo, const AnnealOptions& options) {
    if (options.reads == 0) throw Error(ErrorCode::kInvalidArgument, "reads must be >= 1");
    if (options.sweeps == 0) throw Error(ErrorCode::kInvalidArgument, "sweeps must be >= 1");
    const AnnealSchedule schedule = resolve_schedule(qubo, options);

    std::vector<double> betas(schedule.sweeps);
    for (std::size_t s = 0; s < schedule.sweeps; ++s) {
        const double t = schedule.sweeps == 1 ? schedule.t_cold
                                              : schedule.t_hot * std::pow(schedule.t_cold / schedule.t_hot,
                                                                          static_cast<double>(s) /
                                                                              static_cast<double>(schedule.sweeps - 1));
        betas[s] = 1.0 / t;
    }
    const std::size_t n = qubo.num_bits();
    std::vector<double> coupling(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) coupling[i * n + j] = coupling[j * n + i] = qubo.at(i, j);
    }

    std::vector<BitString> finals(options.reads);
    unsigned workers = options.workers ? options.workers : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, options.reads));
    auto work = [&](unsigned w) {
        for (std::uint64_t r = w; r < options.reads; r += workers) {
            finals[r] = anneal_one(qubo, coupling, betas, options.seed + r);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    std::map<BitString, std::uint64_t> counts;
    for (auto& b : finals) ++counts[std::move(b)];
    SampleSet out;
    out.solver = "simulated_annealing";
    out.total_reads = options.reads;
    out.rng_seed = options.seed;
    out.schedule = schedule;
    for (auto& [bits, count] : counts) {
        const double e = qubo.energy(bits);
        out.records.push_back({bits, e, count});
    }
    std::stable_sort(out.records.begin(), out.records.end(),
                     [](const SampleRecord& a, const SampleRecord& b) { return a.energy < b.energy; });
    return out;
}

SampleSet solve_qubo(const QuboMatrix& qubo, const QuboBackend& backend) {
    if (const auto* anneal = std::get_if<AnnealBackend>(&backend)) return simulated_anneal(qubo, anneal->options);
    BruteForceOptions opts;
    opts.max_bits = std::get<BruteForceBackend>(backend).max_bits;
    GroundState gs = brute_force(qubo, opts);
    SampleSet out;
    out.solver = "brute_force";
    out.total_reads = 1;
    out.records.push_back({std::move(gs.states.front()), gs.energy, 1});
    return out;
}

}  // namespace polyqubo
