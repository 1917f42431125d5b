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

#include <Eigen/Dense>

#include "polyqubo/encoding.hpp"
#include "polyqubo/polysys.hpp"
#include "polyqubo/pubo.hpp"
#include "polyqubo/qubo.hpp"

namespace polyqubo {

/// Which logical pairs receive an auxiliary bit during quadratization.
enum class AuxMode {
    kLazy,  ///< pairs occurring in some term of order 3 or 4
    kAll,   ///< every unordered logical pair, L(L-1)/2 auxiliaries
};

/// Residual sum of squares sum_i F_i(decode(psi))^2 as a multilinear
/// polynomial in the encoding bits, constants included.
PseudoBooleanPolynomial compile_pubo(const PolynomialSystem& system, const BitEncoding& encoding);

/// 1 + 2 * sum |c| over the non-constant terms.
double choose_penalty(const PseudoBooleanPolynomial& pubo);

/// Reduction by substitution for polynomials of order <= 4.
///
/// Cubic {i,j,k} becomes aux(i,j) * k and quartic {i,j,k,l} becomes
/// aux(i,j) * aux(k,l) (indices sorted, lowest pair first). Each auxiliary adds
/// C * (psi_i psi_j - 2 psi_i a - 2 psi_j a + 3 a). Throws kUnsupported for
/// terms of order > 4.
QuboMatrix quadratize(const PseudoBooleanPolynomial& pubo, double penalty, AuxMode mode = AuxMode::kLazy);

/// QUBO whose energy is ||P1 decode(psi) + P0||^2 for a degree-1 system.
QuboMatrix compile_linear_qubo(const PolynomialSystem& system, const BitEncoding& encoding);

/// QUBO whose energy is x^T P1 x + 2 P0^T x + constant at x = decode(psi).
///
/// For symmetric positive definite P1 the continuous minimizer solves
/// P1 x + P0 = 0. Only the symmetric part of P1 contributes.
QuboMatrix compile_quadratic_form_qubo(const Eigen::MatrixXd& p1, const Eigen::VectorXd& p0, double constant,
                                       const BitEncoding& encoding);

}  // namespace polyqubo
