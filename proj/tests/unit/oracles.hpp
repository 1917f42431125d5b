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

// Reference implementations used as test oracles. They share no code with the
// library beyond its public types and favour obviousness over speed.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "polyqubo/encoding.hpp"
#include "polyqubo/polysys.hpp"
#include "polyqubo/pubo.hpp"
#include "polyqubo/qubo.hpp"

namespace oracle {

inline std::vector<std::uint8_t> bits_of(std::uint64_t state, std::size_t n) {
    std::vector<std::uint8_t> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = (state >> i) & 1u;
    return b;
}

// Sum over every multi-index of the order-n tensor, one equation at a time.
inline std::vector<double> residuals(const polyqubo::PolynomialSystem& s, const std::vector<double>& x) {
    const std::size_t n_eq = s.num_equations();
    const std::size_t v = s.num_variables();
    std::vector<double> out(n_eq, 0.0);
    for (std::size_t order = 0; order <= s.degree(); ++order) {
        auto c = s.coeffs(order);
        std::size_t width = 1;
        for (std::size_t k = 0; k < order; ++k) width *= v;
        for (std::size_t i = 0; i < n_eq; ++i) {
            for (std::size_t flat = 0; flat < width; ++flat) {
                double term = c[i * width + flat];
                std::size_t stride = width;
                for (std::size_t k = 0; k < order; ++k) {
                    stride /= v;
                    term *= x[(flat / stride) % v];
                }
                out[i] += term;
            }
        }
    }
    return out;
}

inline double chi_squared(const polyqubo::PolynomialSystem& s, const std::vector<double>& x) {
    double sum = 0.0;
    for (double r : residuals(s, x)) sum += r * r;
    return sum;
}

// x_j = b_j + a_j * sum_r 2^r psi[j*R + r]
inline std::vector<double> decode(const polyqubo::BitEncoding& e, const std::vector<std::uint8_t>& psi) {
    std::vector<double> x(e.num_variables());
    for (std::size_t j = 0; j < x.size(); ++j) {
        double level = 0.0;
        for (unsigned r = 0; r < e.bits_per_var(); ++r) level += std::ldexp(psi[j * e.bits_per_var() + r], r);
        x[j] = e.offset()[j] + e.scale()[j] * level;
    }
    return x;
}

inline double pubo_energy(const polyqubo::PseudoBooleanPolynomial& p, const std::vector<std::uint8_t>& bits) {
    double e = p.offset();
    for (const auto& [idx, c] : p.terms()) {
        bool on = true;
        for (auto i : idx) on = on && bits[i];
        if (on) e += c;
    }
    return e;
}

inline double qubo_energy(const polyqubo::QuboMatrix& q, const std::vector<std::uint8_t>& bits) {
    double e = q.offset();
    for (std::size_t i = 0; i < q.num_bits(); ++i)
        for (std::size_t j = i; j < q.num_bits(); ++j)
            if (bits[i] && bits[j]) e += q.at(i, j);
    return e;
}

struct Minimum {
    double energy = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> bits;
};

inline Minimum exhaustive_min(std::size_t n, const std::function<double(const std::vector<std::uint8_t>&)>& f) {
    Minimum m;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        auto b = bits_of(s, n);
        double e = f(b);
        if (e < m.energy) {
            m.energy = e;
            m.bits = b;
        }
    }
    return m;
}

inline polyqubo::PolynomialSystem random_system(std::mt19937_64& rng, std::size_t n_eq, std::size_t n_var,
                                                std::size_t degree, double scale = 3.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<std::vector<double>> coeffs;
    std::size_t width = 1;
    for (std::size_t order = 0; order <= degree; ++order) {
        std::vector<double> t(n_eq * width);
        for (auto& c : t) c = std::round(u(rng) * 4.0) / 4.0;
        coeffs.push_back(std::move(t));
        width *= n_var;
    }
    return polyqubo::PolynomialSystem(n_eq, n_var, std::move(coeffs));
}

inline polyqubo::BitEncoding random_encoding(std::mt19937_64& rng, std::size_t n_var, unsigned bits) {
    std::uniform_real_distribution<double> lo(-2.0, 0.5), width(0.5, 3.0);
    std::vector<double> l(n_var), h(n_var);
    for (std::size_t j = 0; j < n_var; ++j) {
        l[j] = lo(rng);
        h[j] = l[j] + width(rng);
    }
    return polyqubo::BitEncoding::from_range(l, h, bits);
}

inline double relative_residual(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0, const std::vector<double>& x) {
    Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
    return (p1 * xv + p0).squaredNorm() / p0.squaredNorm();
}

inline bool close(double a, double b, double rel, double abs_tol = 1e-12) {
    return std::abs(a - b) <= std::max(abs_tol, rel * std::max(std::abs(a), std::abs(b)));
}

}  // namespace oracle
