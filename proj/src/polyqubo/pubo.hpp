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
#include <map>
#include <span>
#include <vector>

namespace polyqubo {

using IndexSet = std::vector<std::uint32_t>;

struct Term {
    IndexSet indices;
    double coefficient = 0.0;
};

/// Multilinear polynomial over binary variables plus a constant offset.
///
/// Keys are sorted, duplicate-free index sets (psi^2 = psi applied), so the
/// map is the sparse upper-triangular form of the coefficient tensors. The
/// empty index set never appears as a key; it lives in offset().
class PseudoBooleanPolynomial {
  public:
    explicit PseudoBooleanPolynomial(std::size_t num_bits = 0, double offset = 0.0);

    /// Canonicalizes indices (sort, drop repeats) and accumulates.
    void add_term(std::span<const std::uint32_t> indices, double coefficient);
    void add_offset(double value) { offset_ += value; }

    double energy(std::span<const std::uint8_t> bits) const;

    std::size_t num_bits() const { return num_bits_; }
    double offset() const { return offset_; }
    const std::map<IndexSet, double>& terms() const { return terms_; }
    std::size_t max_order() const;
    std::vector<Term> terms_of_order(std::size_t order) const;

    /// Sum of |c| over non-constant terms.
    double coefficient_l1() const;

  private:
    std::size_t num_bits_;
    double offset_;
    std::map<IndexSet, double> terms_;
};

/// Reduces raw multilinear terms (repeated or unsorted indices allowed) to the
/// canonical sparse form without changing the energy on {0,1}^num_bits.
PseudoBooleanPolynomial sparsify(std::span<const Term> raw_terms, std::size_t num_bits, double offset = 0.0);

/// Raw terms of a * b: index sets are concatenated, not canonicalized.
std::vector<Term> raw_product(const PseudoBooleanPolynomial& a, const PseudoBooleanPolynomial& b);

}  // namespace polyqubo
