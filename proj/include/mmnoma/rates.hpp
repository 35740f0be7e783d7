// SPDX-License-Identifier: Apache-2.0
//
// mmnoma: joint beamforming and power allocation for mmWave-NOMA downlinks
// Copyright (C) 2026 The mmnoma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "mmnoma/beams.hpp"
#include "mmnoma/types.hpp"

#include <span>
#include <vector>

namespace mmnoma {

/// |u^H H w|^2. Throws DimensionError naming the operand whose size does
/// not match H.
double effective_gain(const RxBeam& u, const CMatrix& h, const TxBeam& w);

/// SIC decoding order. Position 0 holds the user with the largest effective
/// gain; `permutation[pos]` is the (0-based) user index at that position.
struct DecodingOrder {
    std::vector<std::size_t> permutation;
    std::vector<double> gains;  // non-increasing

    std::size_t size() const noexcept { return permutation.size(); }
    // Position of `user` in the order.
    std::size_t position_of(std::size_t user) const;
};

/// Sorts users by descending gain. Ties keep ascending user index. Throws
/// ConfigError on NaN, negative or empty input.
DecodingOrder decoding_order(std::span<const double> gains);

/// Per-position transmit powers together with the order they refer to.
class PowerAllocation {
public:
    /// Throws ConfigError if any power is negative or the sum exceeds
    /// budget·(1 + 1e-9).
    PowerAllocation(std::vector<double> powers, DecodingOrder order, double budget);

    const std::vector<double>& powers() const noexcept { return powers_; }
    const DecodingOrder& order() const noexcept { return order_; }
    double budget() const noexcept { return budget_; }
    std::size_t size() const noexcept { return powers_.size(); }

    double power_at(std::size_t position) const { return powers_.at(position); }
    double power_of_user(std::size_t user) const { return powers_.at(order_.position_of(user)); }

    // Sums from the last position to the first.
    double total() const noexcept;

private:
    std::vector<double> powers_;
    DecodingOrder order_;
    double budget_;
};

/// Rate of the user at `position`: log2(1 + g p / (g * sum_{m<position} p_m + sigma^2)).
double user_rate(std::size_t position, const PowerAllocation& alloc, double noise_power);

double sum_rate(const PowerAllocation& alloc, double noise_power);

/// OMA rate (1/K) log2(1 + g P / sigma^2), using the full budget.
double oma_rate_from_gain(double gain, const SystemConfig& config);
double oma_rate(const RxBeam& u, const CMatrix& h, const TxBeam& w, const SystemConfig& config);

} // namespace mmnoma
