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

// Acceptance runner. Prints one PASS/FAIL line per criterion; `--criterion N`
// runs a single one. Exit status is non-zero if any selected criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <bit>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "../unit/oracles.hpp"
#include "polyqubo/compiler.hpp"
#include "polyqubo/linsys_lab.hpp"
#include "polyqubo/regression.hpp"
#include "polyqubo/solvers.hpp"

using namespace polyqubo;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

PolynomialSystem worked_system() {
    return PolynomialSystem(2, 2, {{-51, -46}, {2, 4, 3, 2}, {2, 3, 0, 1, 1, 2, 0, 2}});
}

BitEncoding worked_encoding() {
    const std::vector<double> lo{0.0, 0.0}, hi{3.0, 3.0};
    return BitEncoding::from_range(lo, hi, 2);
}

Outcome worked_pubo() {
    const auto enc = worked_encoding();
    const auto gs = brute_force(compile_pubo(worked_system(), enc));
    const auto x = enc.decode(gs.states.front());
    std::ostringstream d;
    d << "x=(" << x[0] << "," << x[1] << ") E=" << gs.energy;
    return {x[0] == 2.0 && x[1] == 3.0 && std::abs(gs.energy) <= 1e-9, d.str()};
}

Outcome worked_qubo() {
    const auto pubo = compile_pubo(worked_system(), worked_encoding());
    const auto q = quadratize(pubo, choose_penalty(pubo), AuxMode::kAll);
    const auto gs = brute_force(q);
    const std::string got = bits_to_string(gs.states.front());
    return {got == "0111000111" && q.num_bits() == 10, "bits=" + got + " L=" + std::to_string(q.num_bits())};
}

Outcome regression() {
    const auto data = generate_dataset(50, 0.9, std::nullopt);
    const auto basis = BasisSet::parse("poly:2", data.x);
    const std::vector<double> lo(3, 0.0), hi(3, 15.0);
    const auto fit = fit_qubo(data, basis, BitEncoding::from_range(lo, hi, 4), BruteForceBackend{});
    const auto& p = fit.parameters;
    const std::string bits = bits_to_string(fit.bits);
    std::ostringstream d;
    d << "p=(" << p[0] << "," << p[1] << "," << p[2] << ") bits=" << bits;
    return {p == std::vector<double>{8, 4, 7} && bits == "000100101110", d.str()};
}

Outcome refinement() {
    const auto inst = make_instance({4, 1.1, 0});
    const auto trace = iterate_solve(inst.p1, inst.p0, 4, 9, BruteForceBackend{}, -1.0, 1.0);
    bool monotone = true;
    for (std::size_t k = 1; k < trace.records.size(); ++k)
        monotone = monotone && trace.records[k].relative_residual <= trace.records[k - 1].relative_residual;
    const double last = trace.final_residual();
    const auto x = trace.records.back().x;
    const double check = oracle::relative_residual(inst.p1, inst.p0, x);
    std::ostringstream d;
    d << "iterations=" << trace.records.size() << " final=" << last << " monotone=" << (monotone ? "yes" : "no");
    return {trace.records.size() <= 9 && last <= 1e-6 && monotone && oracle::close(check, last, 1e-9, 1e-30),
            d.str()};
}

Outcome cg_scaling() {
    const std::vector<double> kappas{10.0, 1e2, 1e3, 1e4};
    std::vector<double> lx, ly;
    std::ostringstream d;
    d << "iterations:";
    for (double k : kappas) {
        const auto inst = make_instance({12, k, 0});
        const auto r = conjugate_gradient(inst.p1, inst.p0, 1e-6);
        d << " " << r.iterations;
        lx.push_back(std::log(k));
        ly.push_back(std::log(static_cast<double>(r.iterations)));
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / 4.0;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / 4.0;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = sxy / sxx;
    d << " slope=" << fmt("%.4f", slope) << " (band [0.4, 0.8])";
    return {slope >= 0.4 && slope <= 0.8, d.str()};
}

Outcome energy_identity() {
    std::mt19937_64 rng(601);
    std::size_t states = 0;
    double worst = 0.0;
    for (int t = 0; t < 120; ++t) {
        const std::size_t n_var = 1 + rng() % 4;
        const std::size_t n_eq = 1 + rng() % 3;
        const std::size_t degree = 1 + rng() % 2;
        const unsigned bits = 1 + static_cast<unsigned>(rng() % (16 / n_var));
        const auto sys = oracle::random_system(rng, n_eq, n_var, degree);
        const auto enc = oracle::random_encoding(rng, n_var, bits);
        const auto pubo = compile_pubo(sys, enc);
        const std::size_t n = enc.num_bits();
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
            const auto b = oracle::bits_of(s, n);
            const double want = oracle::chi_squared(sys, oracle::decode(enc, b));
            const double got = pubo.energy(b);
            const double err = std::abs(got - want) / std::max(1.0, std::abs(want));
            worst = std::max(worst, err);
            ++states;
        }
    }
    return {worst <= 1e-9, "120 systems, " + std::to_string(states) + " states, worst rel err " + fmt("%.2e", worst)};
}

PseudoBooleanPolynomial random_quartic(std::mt19937_64& rng, std::size_t n) {
    PseudoBooleanPolynomial p(n, std::round(std::uniform_real_distribution<double>(-5, 5)(rng)));
    std::uniform_real_distribution<double> coef(-4.0, 4.0);
    const std::size_t count = 2 + rng() % 6;
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    bool quartic = false;
    for (std::size_t t = 0; t < count || !quartic; ++t) {
        const std::size_t order = quartic ? 1 + rng() % 4 : 4;
        quartic = true;
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<std::uint32_t> idx(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(order));
        p.add_term(idx, std::round(coef(rng) * 4.0) / 4.0);
    }
    return p;
}

// Dense symmetric copy of the QUBO for incremental flips.
struct Dense {
    std::size_t n;
    std::vector<double> q;
    explicit Dense(const QuboMatrix& m) : n(m.num_bits()), q(n * n, 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) q[i * n + j] = q[j * n + i] = m.at(i, j);
    }
    double flip_delta(const std::vector<std::uint8_t>& s, std::size_t k) const {
        double field = q[k * n + k];
        for (std::size_t j = 0; j < n; ++j)
            if (j != k && s[j]) field += q[k * n + j];
        return s[k] ? -field : field;
    }
};

Outcome quadratization() {
    std::mt19937_64 rng(702);
    int instances = 0;
    std::uint64_t checked = 0;
    double worst = 0.0;
    bool unique = true;
    while (instances < 100) {
        const bool all_pairs = instances % 4 == 3;
        const std::size_t n = all_pairs ? 4 + rng() % 2 : 4 + rng() % 5;
        const auto pubo = random_quartic(rng, n);
        const auto mode = all_pairs ? AuxMode::kAll : AuxMode::kLazy;
        const auto q = quadratize(pubo, choose_penalty(pubo), mode);
        const std::size_t aux = q.num_aux();
        if (aux > 10) continue;
        ++instances;
        const Dense dense(q);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
            auto state = oracle::bits_of(s, n);
            const double target = oracle::pubo_energy(pubo, state);
            state.resize(n + aux, 0);
            double e = oracle::qubo_energy(q, state);
            double best = e;
            std::vector<std::uint8_t> arg = state;
            std::vector<std::uint8_t> lifted = state;
            for (std::size_t k = 0; k < aux; ++k) {
                const auto [i, j] = q.aux_map().pairs[k];
                lifted[n + k] = state[i] & state[j];
            }
            double runner_up = std::numeric_limits<double>::infinity();
            if (lifted != state) runner_up = e;
            for (std::uint64_t g = 1; g < (std::uint64_t{1} << aux); ++g) {
                const std::size_t k = n + static_cast<std::size_t>(std::countr_zero(g));
                e += dense.flip_delta(state, k);
                state[k] ^= 1u;
                if (e < best) {
                    if (arg != lifted) runner_up = std::min(runner_up, best);
                    best = e;
                    arg = state;
                } else if (state != lifted) {
                    runner_up = std::min(runner_up, e);
                }
            }
            const double scale = std::max(1.0, std::abs(target));
            worst = std::max(worst, std::abs(best - target) / scale);
            if (arg != lifted || !(runner_up > best + 1e-9 * scale)) unique = false;
            ++checked;
        }
    }
    return {worst <= 1e-9 && unique, "100 PUBOs, " + std::to_string(checked) + " logical states, worst rel err " +
                                          fmt("%.2e", worst) + (unique ? ", minimizers lifted" : ", non-lifted minimizer")};
}

Outcome linear_fast_path() {
    std::mt19937_64 rng(803);
    double worst = 0.0;
    std::size_t states = 0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n_var = 1 + rng() % 4;
        const std::size_t n_eq = 1 + rng() % 4;
        const unsigned bits = 1 + static_cast<unsigned>(rng() % (12 / n_var));
        const auto sys = oracle::random_system(rng, n_eq, n_var, 1);
        const auto enc = oracle::random_encoding(rng, n_var, bits);
        const auto fast = compile_linear_qubo(sys, enc);
        const auto general = compile_pubo(sys, enc);
        const std::size_t n = enc.num_bits();
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
            const auto b = oracle::bits_of(s, n);
            const double a = oracle::qubo_energy(fast, b);
            const double g = oracle::pubo_energy(general, b);
            worst = std::max(worst, std::abs(a - g) / std::max(1.0, std::max(std::abs(a), std::abs(g))));
            ++states;
        }
    }
    return {worst <= 1e-9, "100 systems, " + std::to_string(states) + " states, worst rel err " + fmt("%.2e", worst)};
}

Outcome backward_optimality() {
    const std::vector<double> kappas{1.1, 10.0, 100.0, 1000.0};
    int instances = 0;
    int wins_over_forward = 0;
    bool ok = true;
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::size_t ki = 0; ki < kappas.size(); ++ki) {
            for (std::uint64_t seed = 0; seed < 2; ++seed) {
                const unsigned bits = n == 4 ? 2 : 3;
                const auto inst = make_instance({n, kappas[ki], seed});
                const auto ref = conjugate_gradient(inst.p1, inst.p0, 1e-12);
                const double lo = ref.solution.minCoeff(), hi = ref.solution.maxCoeff();
                const std::vector<double> l(n, lo - 0.1), h(n, hi + 0.1);
                const auto enc = BitEncoding::from_range(l, h, bits);
                const auto sys = PolynomialSystem::linear(inst.p1, inst.p0);
                const auto gs = brute_force(compile_linear_qubo(sys, enc));
                const double got = oracle::relative_residual(inst.p1, inst.p0, oracle::decode(enc, gs.states.front()));
                const auto m = oracle::exhaustive_min(enc.num_bits(), [&](const std::vector<std::uint8_t>& b) {
                    return oracle::relative_residual(inst.p1, inst.p0, oracle::decode(enc, b));
                });
                const auto fwd = forward_error_minimum(inst.p1, inst.p0, enc);
                const double slack = 1e-9 * std::max(got, 1e-12);
                ok = ok && got <= m.energy + slack && got <= fwd.relative_residual + slack;
                if (got < fwd.relative_residual - slack) ++wins_over_forward;
                ++instances;
            }
        }
    }
    return {ok && instances >= 20, std::to_string(instances) + " instances, strictly better than forward point on " +
                                       std::to_string(wins_over_forward)};
}

Outcome determinism() {
    const auto pubo = compile_pubo(worked_system(), worked_encoding());
    const auto q = quadratize(pubo, choose_penalty(pubo), AuxMode::kAll);
    AnnealOptions a;
    a.reads = 500;
    a.sweeps = 200;
    a.seed = 17;
    a.workers = 1;
    const std::string one = simulated_anneal(q, a).to_json();
    a.workers = 4;
    const std::string two = simulated_anneal(q, a).to_json();
    const std::string three = simulated_anneal(q, a).to_json();

    auto cfg = SweepConfig::defaults(SweepKind::kCondition);
    cfg.size = 4;
    cfg.backend = AnnealBackend{AnnealOptions{200, 100, 5, std::nullopt, std::nullopt, 0}};
    const auto r1 = run_sweep(cfg);
    const auto r2 = run_sweep(cfg);
    const auto inst = make_instance({4, 1.1, 0});
    const QuboBackend anneal = AnnealBackend{AnnealOptions{200, 200, 9, std::nullopt, std::nullopt, 0}};
    const auto t1 = iterate_solve(inst.p1, inst.p0, 3, 4, anneal).to_json();
    const auto t2 = iterate_solve(inst.p1, inst.p0, 3, 4, anneal).to_json();
    const bool same = one == two && two == three && r1.to_csv() == r2.to_csv() && r1.to_json() == r2.to_json() &&
                      t1 == t2;
    return {same, same ? "sample sets, sweep reports and traces byte-identical" : "outputs differ between runs"};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "worked system PUBO ground state", worked_pubo},
        {2, "worked system 10-bit QUBO ground state", worked_qubo},
        {3, "noiseless regression fit", regression},
        {4, "iterative refinement to single precision", refinement},
        {5, "CG iteration scaling with condition number", cg_scaling},
        {6, "PUBO energy equals chi-squared of decoded point", energy_identity},
        {7, "quadratization exactness", quadratization},
        {8, "linear QUBO matches general compilation", linear_fast_path},
        {9, "QUBO minimizer is residual-optimal on the grid", backward_optimality},
        {10, "fixed seeds give byte-identical output", determinism},
    };
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (only < 0 || only > static_cast<int>(criteria.size())) {
        std::fprintf(stderr, "criterion must be in 1..%zu\n", criteria.size());
        return 2;
    }
    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %2d: %s - %s [%s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
