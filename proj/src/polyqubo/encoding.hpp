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
#include <span>
#include <vector>

#include "polyqubo/polysys.hpp"

namespace polyqubo {

using BitString = std::vector<std::uint8_t>;

/// Fixed-point map x_j = a_j * sum_r 2^r psi_{j,r} + b_j.
///
/// Bits are laid out variable-major and little-endian inside each variable:
/// bit r of variable j is psi[j * R + r].
class BitEncoding {
  public:
    BitEncoding(std::vector<double> scale, std::vector<double> offset, unsigned bits_per_var);

    /// Grid of 2^R - 1 steps spanning [lo_j, hi_j] inclusive.
    static BitEncoding from_range(std::span<const double> lo, std::span<const double> hi, unsigned bits_per_var);

    std::size_t num_variables() const { return scale_.size(); }
    unsigned bits_per_var() const { return bits_; }
    std::size_t num_bits() const { return scale_.size() * bits_; }
    const std::vector<double>& scale() const { return scale_; }
    const std::vector<double>& offset() const { return offset_; }

    /// Largest integer level, 2^R - 1.
    std::uint64_t max_level() const { return (std::uint64_t{1} << bits_) - 1; }
    double upper(std::size_t j) const { return offset_[j] + scale_[j] * static_cast<double>(max_level()); }

    /// Accepts psi of at least num_bits() entries; trailing auxiliary bits are ignored.
    SolutionVector decode(std::span<const std::uint8_t> psi) const;

    /// Bits of the given per-variable integer levels.
    BitString encode_levels(std::span<const std::uint64_t> levels) const;

    /// Nearest grid level per variable, clamped to [0, 2^R - 1].
    std::vector<std::uint64_t> nearest_levels(std::span<const double> x) const;

    /// Window of one grid step either side of x_star, re-gridded with the same R.
    BitEncoding refine(std::span<const double> x_star) const;

  private:
    std::vector<double> scale_;
    std::vector<double> offset_;
    unsigned bits_;
};

}  // namespace polyqubo
