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

#include "polyqubo/compiler.hpp"

#include <cmath>
#include <map>
#include <string>

#include "polyqubo/error.hpp"

namespace polyqubo {

namespace {

void check_dimensions(const PolynomialSystem& system, const BitEncoding& encoding) {
    if (system.num_variables() != encoding.num_variables()) {
        throw Error(ErrorCode::kDimensionMismatch, "system has " + std::to_string(system.num_variables()) +
                                                       " variables but the encoding covers " +
                                                       std::to_string(encoding.num_variables()));
    }
}

void accumulate(PseudoBooleanPolynomial& into, const PseudoBooleanPolynomial& from, double scale) {
    into.add_offset(scale * from.offset());
    for (const auto& [idx, c] : from.terms()) into.add_term(idx, scale * c);
}

// Bit-space polynomial of x_j = b_j + a_j sum_r 2^r psi_{jR+r}.
PseudoBooleanPolynomial variable_polynomial(const BitEncoding& enc, std::size_t j) {
    PseudoBooleanPolynomial p(enc.num_bits(), enc.offset()[j]);
    const unsigned R = enc.bits_per_var();
    for (unsigned r = 0; r < R; ++r) {
        const std::uint32_t idx = static_cast<std::uint32_t>(j * R + r);
        p.add_term(std::span(&idx, 1), enc.scale()[j] * std::ldexp(1.0, static_cast<int>(r)));
    }
    return p;
}

// W maps bits to x - b: W(j, jR+r) = a_j 2^r.
Eigen::MatrixXd weight_matrix(const BitEncoding& enc) {
    const unsigned R = enc.bits_per_var();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(enc.num_variables(), enc.num_bits());
    for (std::size_t j = 0; j < enc.num_variables(); ++j) {
        for (unsigned r = 0; r < R; ++r) w(j, j * R + r) = enc.scale()[j] * std::ldexp(1.0, static_cast<int>(r));
    }
    return w;
}

// Upper-triangular QUBO of psi^T G psi + 2 h^T psi + offset, folding the
// diagonal of G into the linear part via psi^2 = psi.
QuboMatrix qubo_from_quadratic(const Eigen::MatrixXd& g, const Eigen::VectorXd& h, double offset) {
    const auto n = static_cast<std::size_t>(g.rows());
    QuboMatrix q(n);
    for (std::size_t k = 0; k < n; ++k) {
        q.add(k, k, g(k, k) + 2.0 * h(k));
        for (std::size_t l = k + 1; l < n; ++l) q.add(k, l, g(k, l) + g(l, k));
    }
    q.add_offset(offset);
    return q;
}

}  // namespace

PseudoBooleanPolynomial compile_pubo(const PolynomialSystem& system, const BitEncoding& encoding) {
    check_dimensions(system, encoding);
    const std::size_t V = system.num_variables();
    const std::size_t L = encoding.num_bits();

    std::vector<PseudoBooleanPolynomial> variables;
    variables.reserve(V);
    for (std::size_t j = 0; j < V; ++j) variables.push_back(variable_polynomial(encoding, j));

    // monomials[n][t]: bit polynomial of x_{j1} ... x_{jn}, t the row-major flattening.
    std::vector<std::vector<PseudoBooleanPolynomial>> monomials(system.degree() + 1);
    monomials[0].emplace_back(L, 1.0);
    for (std::size_t n = 1; n <= system.degree(); ++n) {
        monomials[n].reserve(monomials[n - 1].size() * V);
        for (const auto& prefix : monomials[n - 1]) {
            for (std::size_t j = 0; j < V; ++j) {
                monomials[n].push_back(sparsify(raw_product(prefix, variables[j]), L));
            }
        }
    }

    PseudoBooleanPolynomial result(L);
    for (std::size_t i = 0; i < system.num_equations(); ++i) {
        PseudoBooleanPolynomial residual(L);
        for (std::size_t n = 0; n <= system.degree(); ++n) {
            const std::size_t width = monomials[n].size();
            const auto row = system.coeffs(n).subspan(i * width, width);
            for (std::size_t t = 0; t < width; ++t) {
                if (row[t] != 0.0) accumulate(residual, monomials[n][t], row[t]);
            }
        }
        accumulate(result, sparsify(raw_product(residual, residual), L), 1.0);
    }
    return result;
}

double choose_penalty(const PseudoBooleanPolynomial& pubo) { return 1.0 + 2.0 * pubo.coefficient_l1(); }

QuboMatrix quadratize(const PseudoBooleanPolynomial& pubo, double penalty, AuxMode mode) {
    if (!std::isfinite(penalty) || !(penalty > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "penalty C must be finite and > 0");
    }
    const std::size_t order = pubo.max_order();
    if (order > 4) {
        throw Error(ErrorCode::kUnsupported,
                    "term of order " + std::to_string(order) +
                        " needs another quadratization level, which is not implemented (order <= 4 only)");
    }
    const auto L = static_cast<std::uint32_t>(pubo.num_bits());

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> aux_index;
    if (mode == AuxMode::kAll) {
        for (std::uint32_t i = 0; i < L; ++i) {
            for (std::uint32_t j = i + 1; j < L; ++j) aux_index.emplace(std::pair{i, j}, 0);
        }
    } else {
        for (const auto& [idx, c] : pubo.terms()) {
            if (idx.size() < 3) continue;
            for (std::size_t a = 0; a < idx.size(); ++a) {
                for (std::size_t b = a + 1; b < idx.size(); ++b) aux_index.emplace(std::pair{idx[a], idx[b]}, 0);
            }
        }
    }
    QuadratizationMap map;
    for (auto& [pair, slot] : aux_index) {
        slot = L + map.pairs.size();
        map.pairs.push_back(pair);
    }

    QuboMatrix q(L, map, penalty);
    q.add_offset(pubo.offset());
    auto aux = [&](std::uint32_t i, std::uint32_t j) { return aux_index.at({i, j}); };
    for (const auto& [idx, c] : pubo.terms()) {
        switch (idx.size()) {
            case 1: q.add(idx[0], idx[0], c); break;
            case 2: q.add(idx[0], idx[1], c); break;
            case 3: q.add(aux(idx[0], idx[1]), idx[2], c); break;
            case 4: q.add(aux(idx[0], idx[1]), aux(idx[2], idx[3]), c); break;
            default: break;
        }
    }
    for (std::size_t k = 0; k < map.pairs.size(); ++k) {
        const auto [i, j] = map.pairs[k];
        const std::size_t a = L + k;
        q.add(i, j, penalty);
        q.add(i, a, -2.0 * penalty);
        q.add(j, a, -2.0 * penalty);
        q.add(a, a, 3.0 * penalty);
    }
    return q;
}

QuboMatrix compile_linear_qubo(const PolynomialSystem& system, const BitEncoding& encoding) {
    if (system.degree() != 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "the linear QUBO path needs a degree-1 system, got degree " + std::to_string(system.degree()));
    }
    check_dimensions(system, encoding);
    const Eigen::MatrixXd p1 = system.linear_matrix();
    const Eigen::Map<const Eigen::VectorXd> b(encoding.offset().data(), static_cast<Eigen::Index>(encoding.num_variables()));
    const Eigen::VectorXd shifted = p1 * b + system.constant_vector();
    const Eigen::MatrixXd m = p1 * weight_matrix(encoding);
    return qubo_from_quadratic(m.transpose() * m, m.transpose() * shifted, shifted.squaredNorm());
}

QuboMatrix compile_quadratic_form_qubo(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0, double constant,
                                       const BitEncoding& encoding) {
    const auto V = static_cast<Eigen::Index>(encoding.num_variables());
    if (p1.rows() != V || p1.cols() != V || p0.size() != V) {
        throw Error(ErrorCode::kDimensionMismatch, "quadratic form must be V x V with a length-V linear part, V = " +
                                                       std::to_string(V));
    }
    const Eigen::MatrixXd sym = 0.5 * (p1 + p1.transpose());
    const Eigen::Map<const Eigen::VectorXd> b(encoding.offset().data(), V);
    const Eigen::MatrixXd w = weight_matrix(encoding);
    const double offset = b.dot(sym * b) + 2.0 * p0.dot(b) + constant;
    return qubo_from_quadratic(w.transpose() * sym * w, w.transpose() * (sym * b + p0), offset);
}

}  // namespace polyqubo
