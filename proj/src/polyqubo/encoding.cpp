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

#include "polyqubo/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyqubo/error.hpp"

namespace polyqubo {

namespace {
constexpr unsigned kMaxBitsPerVar = 52;
}

BitEncoding::BitEncoding(std::vector<double> scale, std::vector<double> offset, unsigned bits_per_var)
    : scale_(std::move(scale)), offset_(std::move(offset)), bits_(bits_per_var) {
    if (scale_.empty()) throw Error(ErrorCode::kInvalidArgument, "encoding needs at least one variable");
    if (scale_.size() != offset_.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "encoding scale has " + std::to_string(scale_.size()) +
                                                       " entries but offset has " + std::to_string(offset_.size()));
    }
    if (bits_ == 0 || bits_ > kMaxBitsPerVar) {
        throw Error(ErrorCode::kInvalidArgument,
                    "bits per variable must be in [1, " + std::to_string(kMaxBitsPerVar) + "]");
    }
    for (std::size_t j = 0; j < scale_.size(); ++j) {
        if (!std::isfinite(scale_[j]) || !(scale_[j] > 0.0)) {
            throw Error(ErrorCode::kInvalidArgument, "encoding scale a_" + std::to_string(j) + " must be finite and > 0");
        }
        if (!std::isfinite(offset_[j])) {
            throw Error(ErrorCode::kInvalidArgument, "encoding offset b_" + std::to_string(j) + " must be finite");
        }
    }
}

BitEncoding BitEncoding::from_range(std::span<const double> lo, std::span<const double> hi, unsigned bits_per_var) {
    if (lo.size() != hi.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "range bounds have different lengths (" + std::to_string(lo.size()) +
                                                       " vs " + std::to_string(hi.size()) + ")");
    }
    if (bits_per_var == 0 || bits_per_var > kMaxBitsPerVar) {
        throw Error(ErrorCode::kInvalidArgument, "bits per variable must be in [1, 52]");
    }
    const double steps = std::ldexp(1.0, static_cast<int>(bits_per_var)) - 1.0;
    std::vector<double> scale(lo.size());
    std::vector<double> offset(lo.begin(), lo.end());
    for (std::size_t j = 0; j < lo.size(); ++j) {
        if (!std::isfinite(lo[j]) || !std::isfinite(hi[j]) || !(lo[j] < hi[j])) {
            throw Error(ErrorCode::kInvalidArgument, "range for variable " + std::to_string(j) + " is empty or inverted: [" +
                                                         std::to_string(lo[j]) + ", " + std::to_string(hi[j]) + "]");
        }
        scale[j] = (hi[j] - lo[j]) / steps;
    }
    return BitEncoding(std::move(scale), std::move(offset), bits_per_var);
}

SolutionVector BitEncoding::decode(std::span<const std::uint8_t> psi) const {
    if (psi.size() < num_bits()) {
        throw Error(ErrorCode::kDimensionMismatch, "bitstring has " + std::to_string(psi.size()) +
                                                       " bits but the encoding needs " + std::to_string(num_bits()));
    }
    SolutionVector x(num_variables());
    for (std::size_t j = 0; j < num_variables(); ++j) {
        std::uint64_t level = 0;
        for (unsigned r = 0; r < bits_; ++r) {
            if (psi[j * bits_ + r] > 1) throw Error(ErrorCode::kInvalidArgument, "bitstring entries must be 0 or 1");
            level |= static_cast<std::uint64_t>(psi[j * bits_ + r]) << r;
        }
        x[j] = scale_[j] * static_cast<double>(level) + offset_[j];
    }
    return x;
}

BitString BitEncoding::encode_levels(std::span<const std::uint64_t> levels) const {
    if (levels.size() != num_variables()) {
        throw Error(ErrorCode::kDimensionMismatch, "expected one level per variable");
    }
    BitString bits(num_bits(), 0);
    for (std::size_t j = 0; j < levels.size(); ++j) {
        if (levels[j] > max_level()) throw Error(ErrorCode::kInvalidArgument, "level exceeds 2^R - 1");
        for (unsigned r = 0; r < bits_; ++r) bits[j * bits_ + r] = static_cast<std::uint8_t>((levels[j] >> r) & 1U);
    }
    return bits;
}

std::vector<std::uint64_t> BitEncoding::nearest_levels(std::span<const double> x) const {
    if (x.size() != num_variables()) {
        throw Error(ErrorCode::kDimensionMismatch, "point has " + std::to_string(x.size()) + " entries, encoding has " +
                                                       std::to_string(num_variables()) + " variables");
    }
    std::vector<std::uint64_t> levels(x.size());
    const double top = static_cast<double>(max_level());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double k = std::round((x[j] - offset_[j]) / scale_[j]);
        levels[j] = static_cast<std::uint64_t>(std::clamp(k, 0.0, top));
    }
    return levels;
}

BitEncoding BitEncoding::refine(std::span<const double> x_star) const {
    if (x_star.size() != num_variables()) {
        throw Error(ErrorCode::kDimensionMismatch, "incumbent has " + std::to_string(x_star.size()) +
                                                       " entries, encoding has " + std::to_string(num_variables()));
    }
    const double top = static_cast<double>(max_level());
    std::vector<double> lo(x_star.size());
    std::vector<double> hi(x_star.size());
    for (std::size_t j = 0; j < x_star.size(); ++j) {
        const double k = (x_star[j] - offset_[j]) / scale_[j];
        if (!(k >= -0.5 && k <= top + 0.5)) {
            throw Error(ErrorCode::kInvalidArgument,
                        "incumbent x_" + std::to_string(j) + " is not within half a step of the current grid");
        }
        lo[j] = x_star[j] - scale_[j];
        hi[j] = x_star[j] + scale_[j];
    }
    return from_range(lo, hi, bits_);
}

}  // namespace polyqubo
