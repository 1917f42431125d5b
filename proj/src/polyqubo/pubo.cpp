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

#include "polyqubo/pubo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyqubo/error.hpp"

namespace polyqubo {

PseudoBooleanPolynomial::PseudoBooleanPolynomial(std::size_t num_bits, double offset)
    : num_bits_(num_bits), offset_(offset) {}

void PseudoBooleanPolynomial::add_term(std::span<const std::uint32_t> indices, double coefficient) {
    if (coefficient == 0.0) return;
    IndexSet key(indices.begin(), indices.end());
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (key.empty()) {
        offset_ += coefficient;
        return;
    }
    if (key.back() >= num_bits_) {
        throw Error(ErrorCode::kDimensionMismatch, "term index " + std::to_string(key.back()) +
                                                       " out of range for " + std::to_string(num_bits_) + " bits");
    }
    auto [it, inserted] = terms_.try_emplace(std::move(key), coefficient);
    if (!inserted) it->second += coefficient;
}

double PseudoBooleanPolynomial::energy(std::span<const std::uint8_t> bits) const {
    if (bits.size() != num_bits_) {
        throw Error(ErrorCode::kDimensionMismatch, "bitstring has " + std::to_string(bits.size()) +
                                                       " bits, polynomial has " + std::to_string(num_bits_));
    }
    double e = offset_;
    for (const auto& [indices, c] : terms_) {
        bool all_set = true;
        for (std::uint32_t k : indices) {
            if (!bits[k]) {
                all_set = false;
                break;
            }
        }
        if (all_set) e += c;
    }
    return e;
}

std::size_t PseudoBooleanPolynomial::max_order() const {
    std::size_t m = 0;
    for (const auto& [indices, c] : terms_) m = std::max(m, indices.size());
    return m;
}

std::vector<Term> PseudoBooleanPolynomial::terms_of_order(std::size_t order) const {
    std::vector<Term> out;
    if (order == 0) {
        out.push_back({{}, offset_});
        return out;
    }
    for (const auto& [indices, c] : terms_) {
        if (indices.size() == order) out.push_back({indices, c});
    }
    return out;
}

double PseudoBooleanPolynomial::coefficient_l1() const {
    double s = 0.0;
    for (const auto& [indices, c] : terms_) s += std::abs(c);
    return s;
}

PseudoBooleanPolynomial sparsify(std::span<const Term> raw_terms, std::size_t num_bits, double offset) {
    PseudoBooleanPolynomial out(num_bits, offset);
    for (const Term& t : raw_terms) out.add_term(t.indices, t.coefficient);
    return out;
}

std::vector<Term> raw_product(const PseudoBooleanPolynomial& a, const PseudoBooleanPolynomial& b) {
    std::vector<Term> out;
    out.reserve((a.terms().size() + 1) * (b.terms().size() + 1));
    // Constant parts behave as terms over the empty index set.
    auto for_each = [](const PseudoBooleanPolynomial& p, auto&& fn) {
        if (p.offset() != 0.0) fn(IndexSet{}, p.offset());
        for (const auto& [idx, c] : p.terms()) fn(idx, c);
    };
    for_each(a, [&](const IndexSet& ia, double ca) {
        for_each(b, [&](const IndexSet& ib, double cb) {
            IndexSet joined;
            joined.reserve(ia.size() + ib.size());
            joined.insert(joined.end(), ia.begin(), ia.end());
            joined.insert(joined.end(), ib.begin(), ib.end());
            out.push_back({std::move(joined), ca * cb});
        });
    });
    return out;
}

}  // namespace polyqubo
