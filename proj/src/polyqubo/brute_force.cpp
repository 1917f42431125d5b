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
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "polyqubo/error.hpp"
#include "polyqubo/solvers.hpp"

namespace polyqubo {

namespace {

constexpr std::size_t kHardBitLimit = 40;
constexpr std::uint64_t kResyncInterval = 1024;
constexpr std::size_t kCandidateCap = 4096;

BitString state_bits(std::uint64_t state, std::size_t n) {
    BitString bits(n);
    for (std::size_t k = 0; k < n; ++k) bits[k] = static_cast<std::uint8_t>((state >> k) & 1U);
    return bits;
}

// Incremental QUBO energy with symmetric couplings and local fields.
class QuboEvaluator {
  public:
    explicit QuboEvaluator(const QuboMatrix& q) : q_(q), n_(q.num_bits()), diag_(n_), coupling_(n_ * n_, 0.0), field_(n_) {
        for (std::size_t i = 0; i < n_; ++i) {
            diag_[i] = q.at(i, i);
            for (std::size_t j = i + 1; j < n_; ++j) {
                coupling_[i * n_ + j] = q.at(i, j);
                coupling_[j * n_ + i] = q.at(i, j);
            }
        }
    }

    void reset(std::uint64_t state) {
        state_ = state;
        for (std::size_t k = 0; k < n_; ++k) {
            double h = 0.0;
            for (std::size_t l = 0; l < n_; ++l) {
                if (l != k && ((state >> l) & 1U)) h += coupling_[k * n_ + l];
            }
            field_[k] = h;
        }
        energy_ = q_.energy(state_bits(state, n_));
    }

    void flip(std::size_t k) {
        const bool on = (state_ >> k) & 1U;
        energy_ += (on ? -1.0 : 1.0) * (diag_[k] + field_[k]);
        const double s = on ? -1.0 : 1.0;
        const double* col = coupling_.data() + k * n_;
        for (std::size_t l = 0; l < n_; ++l) field_[l] += s * col[l];
        state_ ^= std::uint64_t{1} << k;
    }

    double energy() const { return energy_; }
    std::uint64_t state() const { return state_; }
    double exact(std::uint64_t state) const { return q_.energy(state_bits(state, n_)); }

  private:
    const QuboMatrix& q_;
    std::size_t n_;
    std::vector<double> diag_;
    std::vector<double> coupling_;
    std::vector<double> field_;
    std::uint64_t state_ = 0;
    double energy_ = 0.0;
};

// Incremental PUBO energy using per-bit term lists over bit masks.
class PuboEvaluator {
  public:
    explicit PuboEvaluator(const PseudoBooleanPolynomial& p) : p_(p), n_(p.num_bits()), by_bit_(n_) {
        for (const auto& [idx, c] : p.terms()) {
            std::uint64_t mask = 0;
            for (std::uint32_t k : idx) mask |= std::uint64_t{1} << k;
            for (std::uint32_t k : idx) by_bit_[k].push_back({mask & ~(std::uint64_t{1} << k), c});
        }
    }

    void reset(std::uint64_t state) {
        state_ = state;
        energy_ = exact(state);
    }

    void flip(std::size_t k) {
        double partial = 0.0;
        for (const auto& [others, c] : by_bit_[k]) {
            if ((state_ & others) == others) partial += c;
        }
        const bool on = (state_ >> k) & 1U;
        energy_ += on ? -partial : partial;
        state_ ^= std::uint64_t{1} << k;
    }

    double energy() const { return energy_; }
    std::uint64_t state() const { return state_; }
    double exact(std::uint64_t state) const { return p_.energy(state_bits(state, n_)); }

  private:
    struct Entry {
        std::uint64_t others;
        double coefficient;
    };
    const PseudoBooleanPolynomial& p_;
    std::size_t n_;
    std::vector<std::vector<Entry>> by_bit_;
    std::uint64_t state_ = 0;
    double energy_ = 0.0;
};

struct Candidate {
    double energy;
    std::uint64_t state;
};

struct ChunkResult {
    std::vector<Candidate> candidates;
    std::uint64_t visited = 0;
};

void prune(std::vector<Candidate>& c, double window) {
    std::sort(c.begin(), c.end(), [](const Candidate& a, const Candidate& b) {
        return a.energy != b.energy ? a.energy < b.energy : a.state < b.state;
    });
    if (c.empty()) return;
    const double limit = c.front().energy + window;
    auto end = std::find_if(c.begin(), c.end(), [&](const Candidate& x) { return x.energy > limit; });
    c.erase(end, c.end());
    if (c.size() > kCandidateCap) c.resize(kCandidateCap);
}

template <class Evaluator>
ChunkResult enumerate_chunk(Evaluator eval, std::size_t low_bits, std::uint64_t prefix, double window) {
    ChunkResult out;
    eval.reset(prefix);
    double best = std::numeric_limits<double>::infinity();
    auto consider = [&] {
        const double e = eval.energy();
        if (e <= best + window) {
            out.candidates.push_back({e, eval.state()});
            if (e < best) best = e;
            if (out.candidates.size() >= 2 * kCandidateCap) prune(out.candidates, window);
        }
    };
    consider();
    const std::uint64_t count = std::uint64_t{1} << low_bits;
    for (std::uint64_t i = 1; i < count; ++i) {
        eval.flip(static_cast<std::size_t>(std::countr_zero(i)));
        if (i % kResyncInterval == 0) eval.reset(eval.state());
        consider();
    }
    out.visited = count;
    prune(out.candidates, window);
    return out;
}

template <class Evaluator>
GroundState run(const Evaluator& prototype, std::size_t n, double scale, const BruteForceOptions& options) {
    const std::size_t limit = std::min(options.max_bits, kHardBitLimit);
    if (n > limit) {
        throw Error(ErrorCode::kLimitExceeded,
                    "brute force over " + std::to_string(n) + " bits would visit 2^" + std::to_string(n) + " = " +
                        std::to_string(std::ldexp(1.0, static_cast<int>(n))) + " states; the limit is " +
                        std::to_string(limit) + " bits");
    }
    unsigned workers = options.workers ? options.workers : std::max(1U, std::thread::hardware_concurrency());
    std::size_t prefix_bits = 0;
    while ((std::size_t{1} << prefix_bits) < workers && prefix_bits + 12 < n) ++prefix_bits;
    const std::size_t low_bits = n - prefix_bits;
    const std::size_t chunks = std::size_t{1} << prefix_bits;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));

    // Retention window for the incremental pass; final ranking uses exact energies.
    const double window = 1e-9 * scale;
    std::vector<ChunkResult> results(chunks);
    auto work = [&](unsigned w) {
        for (std::size_t c = w; c < chunks; c += workers) {
            results[c] = enumerate_chunk(prototype, low_bits, static_cast<std::uint64_t>(c) << low_bits, window);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    std::vector<Candidate> merged;
    GroundState gs;
    for (auto& r : results) {
        gs.states_visited += r.visited;
        merged.insert(merged.end(), r.candidates.begin(), r.candidates.end());
    }
    for (auto& c : merged) c.energy = prototype.exact(c.state);
    std::sort(merged.begin(), merged.end(), [](const Candidate& a, const Candidate& b) {
        return a.energy != b.energy ? a.energy < b.energy : a.state < b.state;
    });
    gs.energy = merged.front().energy;
    const double tie = 1e-12 * scale;
    std::vector<std::uint64_t> ties;
    for (const auto& c : merged) {
        if (c.energy <= gs.energy + tie) ties.push_back(c.state);
    }
    std::sort(ties.begin(), ties.end());
    if (!options.all_minimizers) ties.resize(1);
    for (std::uint64_t s : ties) gs.states.push_back(state_bits(s, n));
    return gs;
}

double qubo_scale(const QuboMatrix& q) {
    double s = std::abs(q.offset());
    for (std::size_t i = 0; i < q.num_bits(); ++i) {
        for (std::size_t j = i; j < q.num_bits(); ++j) s += std::abs(q.at(i, j));
    }
    return s;
}

}  // namespace

GroundState brute_force(const PseudoBooleanPolynomial& pubo, const BruteForceOptions& options) {
    return run(PuboEvaluator(pubo), pubo.num_bits(), std::abs(pubo.offset()) + pubo.coefficient_l1(), options);
}

GroundState brute_force(const QuboMatrix& qubo, const BruteForceOptions& options) {
    return run(QuboEvaluator(qubo), qubo.num_bits(), qubo_scale(qubo), options);
}

std::vector<SpectrumLevel> spectrum(const QuboMatrix& qubo, std::size_t max_bits) {
    const std::size_t n = qubo.num_bits();
    if (n > std::min<std::size_t>(max_bits, 20)) {
        throw Error(ErrorCode::kLimitExceeded, "spectrum over " + std::to_string(n) + " bits exceeds the limit of " +
                                                   std::to_string(std::min<std::size_t>(max_bits, 20)));
    }
    std::vector<std::pair<double, std::uint64_t>> levels;
    levels.reserve(std::size_t{1} << n);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) levels.emplace_back(qubo.energy(state_bits(s, n)), s);
    std::sort(levels.begin(), levels.end());
    std::vector<SpectrumLevel> out;
    out.reserve(levels.size());
    for (const auto& [e, s] : levels) out.push_back({e, state_bits(s, n)});
    return out;
}

}  // namespace polyqubo
