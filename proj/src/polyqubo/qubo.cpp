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

#include "polyqubo/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "polyqubo/error.hpp"

namespace polyqubo {

QuboMatrix::QuboMatrix(std::size_t num_logical, QuadratizationMap aux_map, double penalty)
    : num_bits_(num_logical + aux_map.pairs.size()),
      num_logical_(num_logical),
      q_(num_bits_ * num_bits_, 0.0),
      aux_map_(std::move(aux_map)),
      penalty_(penalty) {
    for (const auto& [i, j] : aux_map_.pairs) {
        if (!(i < j) || j >= num_logical_) {
            throw Error(ErrorCode::kInvalidArgument, "auxiliary pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                                         ") is not an ordered logical pair");
        }
    }
}

void QuboMatrix::add(std::size_t i, std::size_t j, double value) {
    if (i > j) std::swap(i, j);
    if (j >= num_bits_) {
        throw Error(ErrorCode::kDimensionMismatch, "QUBO index " + std::to_string(j) + " out of range for " +
                                                       std::to_string(num_bits_) + " bits");
    }
    q_[i * num_bits_ + j] += value;
}

double QuboMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= num_bits_ || j >= num_bits_) throw Error(ErrorCode::kDimensionMismatch, "QUBO index out of range");
    return i <= j ? q_[i * num_bits_ + j] : 0.0;
}

double QuboMatrix::energy(std::span<const std::uint8_t> bits) const {
    if (bits.size() != num_bits_) {
        throw Error(ErrorCode::kDimensionMismatch, "bitstring has " + std::to_string(bits.size()) + " bits, QUBO has " +
                                                       std::to_string(num_bits_));
    }
    double e = offset_;
    for (std::size_t i = 0; i < num_bits_; ++i) {
        if (!bits[i]) continue;
        const double* row = q_.data() + i * num_bits_;
        for (std::size_t j = i; j < num_bits_; ++j) {
            if (bits[j]) e += row[j];
        }
    }
    return e;
}

std::vector<std::uint8_t> QuboMatrix::lift(std::span<const std::uint8_t> logical) const {
    if (logical.size() != num_logical_) {
        throw Error(ErrorCode::kDimensionMismatch, "expected " + std::to_string(num_logical_) + " logical bits");
    }
    std::vector<std::uint8_t> bits(logical.begin(), logical.end());
    for (const auto& [i, j] : aux_map_.pairs) bits.push_back(static_cast<std::uint8_t>(logical[i] & logical[j]));
    return bits;
}

std::pair<double, double> QuboMatrix::coefficient_range() const {
    double largest = 0.0;
    double smallest = std::numeric_limits<double>::infinity();
    for (double v : q_) {
        const double a = std::abs(v);
        if (a == 0.0) continue;
        largest = std::max(largest, a);
        smallest = std::min(smallest, a);
    }
    if (largest == 0.0) smallest = 0.0;
    return {largest, smallest};
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string QuboMatrix::to_text() const {
    std::ostringstream out;
    out << "# offset " << format_double(offset_) << " bits " << num_bits_ << " aux " << num_aux() << " logical "
        << num_logical_ << " penalty " << format_double(penalty_) << '\n';
    for (std::size_t k = 0; k < aux_map_.pairs.size(); ++k) {
        out << "# aux " << num_logical_ + k << ' ' << aux_map_.pairs[k].first << ' ' << aux_map_.pairs[k].second << '\n';
    }
    for (std::size_t i = 0; i < num_bits_; ++i) {
        for (std::size_t j = i; j < num_bits_; ++j) {
            const double v = q_[i * num_bits_ + j];
            if (v != 0.0) out << i << ' ' << j << ' ' << format_double(v) << '\n';
        }
    }
    return out.str();
}

QuboMatrix QuboMatrix::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::kParse, "QUBO text line " + std::to_string(line_no) + ": " + what);
    };

    ++line_no;
    if (!std::getline(in, line)) fail("missing header");
    std::istringstream header(line);
    std::string hash, k_offset, k_bits, k_aux, k_logical, k_penalty;
    double offset = 0.0, penalty = 0.0;
    std::size_t bits = 0, aux = 0, logical = 0;
    if (!(header >> hash >> k_offset >> offset >> k_bits >> bits >> k_aux >> aux >> k_logical >> logical >> k_penalty >>
          penalty) ||
        hash != "#" || k_offset != "offset" || k_bits != "bits" || k_aux != "aux" || k_logical != "logical" ||
        k_penalty != "penalty") {
        fail("malformed header");
    }
    if (logical + aux != bits) fail("bits != logical + aux");

    QuadratizationMap map;
    QuboMatrix q;
    bool built = false;
    auto build = [&] {
        if (map.pairs.size() != aux) fail("expected " + std::to_string(aux) + " aux lines");
        q = QuboMatrix(logical, map, penalty);
        q.offset_ = offset;
        built = true;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        if (line.rfind("# aux", 0) == 0) {
            if (built) fail("aux line after entries");
            std::string h, kw;
            std::size_t index = 0;
            std::uint32_t i = 0, j = 0;
            if (!(fields >> h >> kw >> index >> i >> j)) fail("malformed aux line");
            if (index != logical + map.pairs.size()) fail("aux lines out of order");
            map.pairs.emplace_back(i, j);
            continue;
        }
        if (!built) build();
        std::size_t i = 0, j = 0;
        double v = 0.0;
        if (!(fields >> i >> j >> v)) fail("expected 'i j value'");
        if (i > j || j >= bits) fail("entry outside the upper triangle");
        q.add(i, j, v);
    }
    if (!built) build();
    return q;
}

}  // namespace polyqubo
