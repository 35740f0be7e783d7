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

#include "mmnoma/rates.hpp"
#include "mmnoma/types.hpp"

#include <span>
#include <vector>

namespace mmnoma {

/// Linear SINR targets eta_k = 2^{r_k} - 1, indexed by user (not by
/// decoding position).
struct RateTargets {
    std::vector<double> eta;

    static RateTargets from_min_rates(std::span<const double> min_rates);

    std::size_t size() const noexcept { return eta.size(); }
    double min_rate(std::size_t user) const { return std::log2(1.0 + eta.at(user)); }
};

/// Closed-form rate-constrained sum-rate maximizing power allocation for a
/// fixed decoding order.
///
/// Positions K-1 down to 1 receive exactly the power that meets their
/// minimum rate:
///   p_k = eta_k / (eta_k + 1) * (P - sum_{m>k} p_m + sigma^2 / g_k)
/// and position 0 (the strongest user) takes the remainder, so the budget
/// is always used in full.
///
/// Infeasible results: Budget when any power would be negative,
/// NullChannel when a user with r_k > 0 has g_k = 0, Rate1 when the
/// strongest user ends below its own minimum rate.
Outcome<PowerAllocation> allocate(const DecodingOrder& order, const RateTargets& targets,
                                  double total_power, double noise_power);

/// d R_sum / d p_{k0} when p_{k0-1} absorbs the change (all other powers
/// fixed). `position` is k0 in 1..K-1 (0-based). Non-positive whenever the
/// gains are sorted.
double sum_rate_derivative(std::size_t position, const PowerAllocation& alloc, double noise_power);

/// Power moved from position k0 to k0-1 by `improvement_shift`: the amount
/// that leaves user k0 exactly halfway between its current rate and its
/// minimum rate. Throws std::invalid_argument unless the user at k0 has
/// rate strictly above its target.
double shift_amount(std::size_t position, const PowerAllocation& alloc,
                    const RateTargets& targets, double noise_power);

/// Shift amount (S + g p - sqrt(2^r S (S + g p))) / g, which
/// ignores that the moved power also raises user k0's interference. Kept
/// for comparison only; it does not land on the halfway rate.
double naive_shift_amount(std::size_t position, const PowerAllocation& alloc,
                          const RateTargets& targets, double noise_power);

/// Moves `shift_amount` of power from position k0 to k0-1. The result meets
/// every constraint the input met and has a strictly larger sum rate when
/// g_{k0} < g_{k0-1}.
PowerAllocation improvement_shift(std::size_t position, const PowerAllocation& alloc,
                                  const RateTargets& targets, double noise_power);

} // namespace mmnoma
