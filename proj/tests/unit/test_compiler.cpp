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
#include <random>
#include <set>

#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "polyqubo/compiler.hpp"
#include "polyqubo/error.hpp"
#include "polyqubo/pubo.hpp"
#include "polyqubo/qubo.hpp"

using namespace polyqubo;

namespace {

// min over auxiliary bits of the QUBO energy for a fixed logical assignment
oracle::Minimum min_over_aux(const QuboMatrix& q, const BitString& logical) {
    const std::size_t n_aux = q.num_aux();
    return oracle::exhaustive_min(n_aux, [&](const BitString& aux) {
        BitString full = logical;
        full.insert(full.end(), aux.begin(), aux.end());
        return oracle::qubo_energy(q, full);
    });
}

PseudoBooleanPolynomial random_quartic(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-5, 5);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    std::uniform_int_distribution<int> size(1, 4);
    PseudoBooleanPolynomial p(n, u(rng));
    for (int t = 0; t < 12; ++t) {
        std::vector<std::uint32_t> idx;
        for (int k = size(rng); k > 0; --k) idx.push_back(pick(rng));
        p.add_term(idx, u(rng));
    }
    return p;
}

}  // namespace

TEST_SUITE("compiler") {

TEST_CASE("compile_pubo on the worked quadratic system") {
    auto sys = fixtures::quadratic_system();
    auto enc = fixtures::unit_grid(2, 2);
    auto pubo = compile_pubo(sys, enc);

    CHECK(pubo.num_bits() == 4);
    CHECK(pubo.max_order() == 4);
    CHECK(pubo.energy(BitString{0, 1, 1, 1}) == 0.0);
    CHECK(pubo.energy(BitString{0, 0, 0, 0}) == 4717.0);

    auto m = oracle::exhaustive_min(4, [&](const BitString& b) { return oracle::pubo_energy(pubo, b); });
    CHECK(m.bits == BitString{0, 1, 1, 1});
    CHECK(m.energy == doctest::Approx(0.0));

    for (const auto& [idx, c] : pubo.terms()) {
        CHECK(std::is_sorted(idx.begin(), idx.end()));
        CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
        CHECK(idx.size() <= 4);
        CHECK(c != 0.0);
    }
}

TEST_CASE("compile_pubo simple identities") {
    SUBCASE("identity linear system gives squared decode") {
        Eigen::MatrixXd p1 = Eigen::MatrixXd::Identity(2, 2);
        auto sys = PolynomialSystem::linear(p1, Eigen::VectorXd::Zero(2));
        BitEncoding enc({0.5, 1.5}, {0.0, 0.0}, 3);
        auto pubo = compile_pubo(sys, enc);
        for (std::uint64_t s = 0; s < 64; ++s) {
            auto b = oracle::bits_of(s, 6);
            auto x = oracle::decode(enc, b);
            CHECK(pubo.energy(b) == doctest::Approx(x[0] * x[0] + x[1] * x[1]).epsilon(1e-12));
        }
    }
    SUBCASE("all-zero bits give chi squared at the offsets") {
        std::mt19937_64 rng(21);
        for (int t = 0; t < 10; ++t) {
            auto sys = oracle::random_system(rng, 2, 3, 2);
            auto enc = oracle::random_encoding(rng, 3, 2);
            auto pubo = compile_pubo(sys, enc);
            CHECK(oracle::close(pubo.energy(BitString(6, 0)), oracle::chi_squared(sys, enc.offset()), 1e-10));
            CHECK(oracle::close(pubo.offset(), oracle::chi_squared(sys, enc.offset()), 1e-10));
        }
    }
    SUBCASE("encoding width must match the system") {
        CHECK_THROWS_AS(compile_pubo(fixtures::quadratic_system(), fixtures::unit_grid(3, 2)), Error);
    }
}

TEST_CASE("energy identity on random systems") {
    std::mt19937_64 rng(1234);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n_var = 1 + t % 3, degree = 1 + t % 3;
        const unsigned bits = static_cast<unsigned>(1 + t % 3);
        auto sys = oracle::random_system(rng, 1 + t % 2, n_var, degree);
        auto enc = oracle::random_encoding(rng, n_var, bits);
        auto pubo = compile_pubo(sys, enc);
        CHECK(pubo.max_order() <= 2 * degree);
        const std::size_t n = n_var * bits;
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
            auto b = oracle::bits_of(s, n);
            CHECK(oracle::close(pubo.energy(b), oracle::chi_squared(sys, oracle::decode(enc, b)), 1e-9, 1e-9));
        }
    }
}

TEST_CASE("minimum PUBO energy is non-negative and zero only for exact grid roots") {
    auto sys = fixtures::quadratic_system();
    auto exact = compile_pubo(sys, fixtures::unit_grid(2, 2));
    auto m = oracle::exhaustive_min(4, [&](const BitString& b) { return exact.energy(b); });
    CHECK(m.energy == doctest::Approx(0.0));

    auto shifted = compile_pubo(sys, BitEncoding({1.0, 1.0}, {0.5, 0.5}, 2));
    auto ms = oracle::exhaustive_min(4, [&](const BitString& b) { return shifted.energy(b); });
    CHECK(ms.energy > 1e-6);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        auto s = oracle::random_system(rng, 2, 2, 2);
        auto p = compile_pubo(s, oracle::random_encoding(rng, 2, 2));
        auto mr = oracle::exhaustive_min(4, [&](const BitString& b) { return p.energy(b); });
        CHECK(mr.energy >= -1e-9 * std::max(1.0, p.coefficient_l1()));
    }
}

TEST_CASE("sparsify") {
    SUBCASE("repeated index collapses") {
        std::vector<Term> raw{{{3, 3}, 2.5}};
        auto p = sparsify(raw, 4);
        REQUIRE(p.terms().size() == 1);
        CHECK(p.terms().begin()->first == IndexSet{3});
        CHECK(p.terms().begin()->second == 2.5);
    }
    SUBCASE("permutations merge") {
        std::vector<Term> raw{{{2, 1}, 1.25}, {{1, 2}, 0.5}};
        auto p = sparsify(raw, 3);
        REQUIRE(p.terms().size() == 1);
        CHECK(p.terms().begin()->first == IndexSet{1, 2});
        CHECK(p.terms().begin()->second == 1.75);
    }
    SUBCASE("pointwise energy preserved") {
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<std::uint32_t> pick(0, 5);
        std::uniform_real_distribution<double> u(-1, 1);
        std::vector<Term> raw;
        for (int t = 0; t < 40; ++t) {
            Term term;
            for (int k = 0; k < 1 + t % 5; ++k) term.indices.push_back(pick(rng));
            term.coefficient = u(rng);
            raw.push_back(term);
        }
        auto p = sparsify(raw, 6, 0.75);
        for (std::uint64_t s = 0; s < 64; ++s) {
            auto b = oracle::bits_of(s, 6);
            double want = 0.75;
            for (const auto& term : raw) {
                double prod = term.coefficient;
                for (auto i : term.indices) prod *= b[i];
                want += prod;
            }
            CHECK(p.energy(b) == doctest::Approx(want).epsilon(1e-12));
        }
    }
    SUBCASE("sparsified worked system keeps its ground state") {
        auto enc = fixtures::unit_grid(2, 2);
        auto pubo = compile_pubo(fixtures::quadratic_system(), enc);
        std::vector<Term> raw;
        for (const auto& [idx, c] : pubo.terms()) {
            IndexSet doubled = idx;
            doubled.insert(doubled.end(), idx.begin(), idx.end());
            std::reverse(doubled.begin(), doubled.end());
            raw.push_back({doubled, c});
        }
        auto again = sparsify(raw, 4, pubo.offset());
        auto m = oracle::exhaustive_min(4, [&](const BitString& b) { return again.energy(b); });
        CHECK(m.bits == BitString{0, 1, 1, 1});
    }
}

TEST_CASE("choose_penalty") {
    PseudoBooleanPolynomial p(4);
    p.add_term(std::vector<std::uint32_t>{0, 1}, 3.0);
    p.add_term(std::vector<std::uint32_t>{2}, -4.0);
    p.add_term(std::vector<std::uint32_t>{1, 2, 3}, 3.0);
    CHECK(choose_penalty(p) == 21.0);
    CHECK(choose_penalty(PseudoBooleanPolynomial(3)) == 1.0);
}

TEST_CASE("quadratize the worked system with all auxiliaries") {
    auto pubo = compile_pubo(fixtures::quadratic_system(), fixtures::unit_grid(2, 2));
    const double c = choose_penalty(pubo);
    auto q = quadratize(pubo, c, AuxMode::kAll);

    REQUIRE(q.num_bits() == 10);
    CHECK(q.num_logical() == 4);
    CHECK(q.num_aux() == 6);
    CHECK(q.penalty() == c);
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    CHECK(q.aux_map().pairs == pairs);

    auto m = oracle::exhaustive_min(10, [&](const BitString& b) { return oracle::qubo_energy(q, b); });
    CHECK(m.bits == BitString{0, 1, 1, 1, 0, 0, 0, 1, 1, 1});
    CHECK(m.energy == doctest::Approx(0.0).epsilon(1e-9));
    for (std::size_t a = 0; a < 6; ++a) CHECK(m.bits[4 + a] == (m.bits[pairs[a].first] & m.bits[pairs[a].second]));
    CHECK(q.lift(BitString{0, 1, 1, 1}) == m.bits);
}

TEST_CASE("quadratization structure") {
    auto pubo = compile_pubo(fixtures::quadratic_system(), fixtures::unit_grid(2, 2));
    auto q1 = quadratize(pubo, 100.0, AuxMode::kAll);
    auto q2 = quadratize(pubo, 250.0, AuxMode::kAll);
    const std::size_t L = 4;

    SUBCASE("penalty gadget only touches logical pairs, logical-aux pairs and aux diagonals") {
        for (std::size_t i = 0; i < q1.num_bits(); ++i)
            for (std::size_t j = i; j < q1.num_bits(); ++j) {
                const double d = q2.at(i, j) - q1.at(i, j);
                if (i >= L && j >= L && i != j) CHECK(d == 0.0);
            }
        for (std::size_t a = 0; a < q1.num_aux(); ++a) {
            auto [i, j] = q1.aux_map().pairs[a];
            const std::size_t x = L + a;
            CHECK(q2.at(x, x) - q1.at(x, x) == doctest::Approx(150.0 * 3));
            CHECK(q2.at(i, x) - q1.at(i, x) == doctest::Approx(-150.0 * 2));
            CHECK(q2.at(j, x) - q1.at(j, x) == doctest::Approx(-150.0 * 2));
        }
    }
    SUBCASE("quartic terms land in the auxiliary block, lower orders do not") {
        auto quartic = pubo.terms_of_order(4);
        CHECK(!quartic.empty());
        std::set<std::pair<std::size_t, std::size_t>> aux_aux;
        for (std::size_t i = L; i < q1.num_bits(); ++i)
            for (std::size_t j = i + 1; j < q1.num_bits(); ++j)
                if (q1.at(i, j) != 0.0) aux_aux.insert({i, j});
        CHECK(aux_aux.size() == quartic.size());
    }
    SUBCASE("lower triangle is empty") {
        for (std::size_t i = 0; i < q1.num_bits(); ++i)
            for (std::size_t j = 0; j < i; ++j) CHECK(q1.at(i, j) == 0.0);
    }
}

TEST_CASE("quadratization exactness") {
    SUBCASE("single cubic term with C = 10") {
        PseudoBooleanPolynomial p(3);
        p.add_term(std::vector<std::uint32_t>{0, 1, 2}, 1.0);
        auto q = quadratize(p, 10.0);
        CHECK(q.num_aux() == 3);
        for (std::uint64_t s = 0; s < 8; ++s) {
            auto b = oracle::bits_of(s, 3);
            CHECK(min_over_aux(q, b).energy == doctest::Approx(p.energy(b)));
        }
    }
    SUBCASE("random quartic polynomials, both allocation modes") {
        std::mt19937_64 rng(4242);
        for (int t = 0; t < 30; ++t) {
            const std::size_t n = 4 + t % 3;
            auto p = random_quartic(rng, n);
            const double c = choose_penalty(p);
            for (auto mode : {AuxMode::kLazy, AuxMode::kAll}) {
                auto q = quadratize(p, c, mode);
                CHECK(q.num_aux() <= n * (n - 1) / 2);
                std::set<std::pair<std::uint32_t, std::uint32_t>> distinct(q.aux_map().pairs.begin(),
                                                                           q.aux_map().pairs.end());
                CHECK(distinct.size() == q.num_aux());
                for (auto [i, j] : q.aux_map().pairs) CHECK(i < j);
                for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
                    auto b = oracle::bits_of(s, n);
                    auto m = min_over_aux(q, b);
                    CHECK(m.energy == doctest::Approx(p.energy(b)).epsilon(1e-9));
                    CHECK(oracle::qubo_energy(q, q.lift(b)) == doctest::Approx(p.energy(b)).epsilon(1e-9));
                }
            }
        }
    }
    SUBCASE("quadratic-only polynomial passes through unchanged") {
        PseudoBooleanPolynomial p(3, 1.5);
        p.add_term(std::vector<std::uint32_t>{0, 2}, -2.0);
        p.add_term(std::vector<std::uint32_t>{1}, 0.25);
        auto q = quadratize(p, choose_penalty(p));
        CHECK(q.num_aux() == 0);
        CHECK(q.offset() == 1.5);
        CHECK(q.at(0, 2) == -2.0);
        CHECK(q.at(1, 1) == 0.25);
        CHECK(q.at(0, 1) == 0.0);
    }
    SUBCASE("order above four is rejected") {
        PseudoBooleanPolynomial p(5);
        p.add_term(std::vector<std::uint32_t>{0, 1, 2, 3, 4}, 1.0);
        try {
            quadratize(p, 3.0);
            FAIL("expected rejection");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::kUnsupported);
            CHECK(std::string(e.what()).find("quadratization") != std::string::npos);
        }
    }
    SUBCASE("non-positive penalty is rejected") {
        CHECK_THROWS_AS(quadratize(PseudoBooleanPolynomial(2), 0.0), Error);
    }
}

TEST_CASE("linear QUBO") {
    SUBCASE("x - 3 = 0 on [0,3] with 2 bits") {
        Eigen::MatrixXd p1(1, 1);
        p1 << 1.0;
        Eigen::VectorXd p0(1);
        p0 << -3.0;
        auto sys = PolynomialSystem::linear(p1, p0);
        auto enc = BitEncoding::from_range(std::vector{0.0}, std::vector{3.0}, 2);
        auto q = compile_linear_qubo(sys, enc);
        auto m = oracle::exhaustive_min(2, [&](const BitString& b) { return oracle::qubo_energy(q, b); });
        CHECK(m.bits == BitString{1, 1});
        CHECK(m.energy == doctest::Approx(0.0));
        CHECK(q.num_aux() == 0);
    }
    SUBCASE("agrees with the general path on random systems") {
        std::mt19937_64 rng(77);
        for (int t = 0; t < 25; ++t) {
            const std::size_t n_eq = 1 + t % 4, n_var = 1 + t % 3;
            auto sys = oracle::random_system(rng, n_eq, n_var, 1);
            auto enc = oracle::random_encoding(rng, n_var, 1 + t % 4);
            auto q = compile_linear_qubo(sys, enc);
            auto p = compile_pubo(sys, enc);
            for (std::uint64_t s = 0; s < (std::uint64_t{1} << enc.num_bits()); ++s) {
                auto b = oracle::bits_of(s, enc.num_bits());
                CHECK(oracle::close(q.energy(b), p.energy(b), 1e-9, 1e-9));
                CHECK(oracle::close(oracle::qubo_energy(q, b), p.energy(b), 1e-9, 1e-9));
            }
        }
    }
    SUBCASE("degree other than one rejected") {
        CHECK_THROWS_AS(compile_linear_qubo(fixtures::quadratic_system(), fixtures::unit_grid(2, 2)), Error);
    }
}

TEST_CASE("quadratic form QUBO") {
    Eigen::MatrixXd p1(2, 2);
    p1 << 3.0, 1.0, 1.0, 2.0;
    Eigen::VectorXd p0(2);
    p0 << -1.0, 0.5;
    auto enc = BitEncoding::from_range(std::vector{-1.0, 0.0}, std::vector{2.0, 1.5}, 3);
    auto q = compile_quadratic_form_qubo(p1, p0, 4.0, enc);
    for (std::uint64_t s = 0; s < 64; ++s) {
        auto b = oracle::bits_of(s, 6);
        auto x = oracle::decode(enc, b);
        Eigen::Vector2d xv(x[0], x[1]);
        const double want = xv.dot(p1 * xv) + 2 * p0.dot(xv) + 4.0;
        CHECK(q.energy(b) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("QUBO text format") {
    auto pubo = compile_pubo(fixtures::quadratic_system(), fixtures::unit_grid(2, 2));
    auto q = quadratize(pubo, choose_penalty(pubo), AuxMode::kAll);
    const std::string text = q.to_text();
    CHECK(text.rfind("# offset ", 0) == 0);
    auto back = QuboMatrix::from_text(text);
    CHECK(back.to_text() == text);
    CHECK(back.num_bits() == q.num_bits());
    CHECK(back.num_aux() == q.num_aux());
    CHECK(back.offset() == q.offset());
    CHECK(back.penalty() == q.penalty());
    CHECK(back.aux_map().pairs == q.aux_map().pairs);
    for (std::size_t i = 0; i < q.num_bits(); ++i)
        for (std::size_t j = 0; j < q.num_bits(); ++j) CHECK(back.at(i, j) == q.at(i, j));

    CHECK_THROWS_AS(QuboMatrix::from_text("# offset 0 bits 2 aux 0 logical 2 penalty 0\n0 5 1.0\n"), Error);
    CHECK_THROWS_AS(QuboMatrix::from_text("0 1 x\n"), Error);
}

}  // TEST_SUITE
