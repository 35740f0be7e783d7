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

#include "mmnoma/power_alloc.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mmnoma {

namespace {

double interference_before(const PowerAllocation& alloc, std::size_t position) {
    double acc = 0.0;
    for (std::size_t m = 0; m < position; ++m)
        acc += alloc.power_at(m);
    return acc;
}

void check_shift_position(std::size_t position, const PowerAllocation& alloc) {
    if (position < 1 || position >= alloc.size())
        throw std::invalid_argument("power shift: position must lie in 1..K-1");
}

// Sets powers[0] so that the reverse-order sum (as in PowerAllocation::total)
// rounds to the budget exactly. When no residual achieves that, the last
// recursion power is raised by one ulp and the search repeats.
double absorb_residual(std::vector<double>& powers, double total_power) {
    std::size_t nudge = 0;
    for (std::size_t pos = 1; pos < powers.size() && nudge == 0; ++pos)
        if (powers[pos] > 0.0)
            nudge = pos;
    for (int attempt = 0; attempt < 64; ++attempt) {
        double assigned = 0.0;
        for (std::size_t pos = powers.size(); pos-- > 1;)
            assigned += powers[pos];
        const double base = total_power - assigned;
        double down = base, up = base;
        for (int step = 0; step < 8; ++step) {
            if (assigned + up == total_power)
                return powers[0] = up;
            if (assigned + down == total_power)
                return powers[0] = down;
            up = std::nextafter(up, std::numeric_limits<double>::infinity());
            down = std::nextafter(down, -std::numeric_limits<double>::infinity());
        }
        if (nudge == 0)
            break;
        powers[nudge] = std::nextafter(powers[nudge], std::numeric_limits<double>::infinity());
    }
    throw std::logic_error("allocate: residual could not absorb rounding");
}

} // namespace

RateTargets RateTargets::from_min_rates(std::span<const double> min_rates) {
    RateTargets t;
    t.eta.reserve(min_rates.size());
    for (double r : min_rates) {
        if (!(r >= 0.0) || !std::isfinite(r))
            throw ConfigError("RateTargets: minimum rates must be finite and >= 0");
        t.eta.push_back(std::exp2(r) - 1.0);
    }
    return t;
}

Outcome<PowerAllocation> allocate(const DecodingOrder& order, const RateTargets& targets,
                                  double total_power, double noise_power) {
    const std::size_t k = order.size();
    if (targets.size() != k)
        throw DimensionError("targets", k, targets.size());

    for (std::size_t pos = 0; pos < k; ++pos)
        if (order.gains[pos] == 0.0 && targets.eta[order.permutation[pos]] > 0.0)
            return Infeasibility::NullChannel;

    std::vector<double> powers(k, 0.0);
    double assigned = 0.0;  // sum over positions > pos
    for (std::size_t pos = k; pos-- > 1;) {
        const double eta = targets.eta[order.permutation[pos]];
        if (eta == 0.0)
            continue;
        const double p = eta / (eta + 1.0) *
                         (total_power - assigned + noise_power / order.gains[pos]);
        if (p < 0.0)
            return Infeasibility::Budget;
        powers[pos] = p;
        assigned += p;
    }
    if (total_power - assigned < 0.0)
        return Infeasibility::Budget;
    const double strongest = absorb_residual(powers, total_power);
    if (strongest < 0.0)
        return Infeasibility::Budget;

    const double eta1 = targets.eta[order.permutation[0]];
    if (order.gains[0] * strongest / noise_power < eta1)
        return Infeasibility::Rate1;

    return PowerAllocation(std::move(powers), order, total_power);
}

double sum_rate_derivative(std::size_t position, const PowerAllocation& alloc, double noise_power) {
    check_shift_position(position, alloc);
    const double g = alloc.order().gains[position];
    const double g_prev = alloc.order().gains[position - 1];
    const double s = interference_before(alloc, position);
    return (g - g_prev) * noise_power /
           ((g * s + noise_power) * (g_prev * s + noise_power) * std::numbers::ln2);
}

double shift_amount(std::size_t position, const PowerAllocation& alloc,
                    const RateTargets& targets, double noise_power) {
    check_shift_position(position, alloc);
    const double g = alloc.order().gains[position];
    const double p = alloc.power_at(position);
    const double two_r = 1.0 + targets.eta.at(alloc.order().permutation[position]);
    const double s = g * interference_before(alloc, position) + noise_power;
    const double x = s + g * p;
    // Rate above target <=> x > 2^r s.
    if (!(x > two_r * s))
        throw std::invalid_argument("improvement_shift: user has no rate slack");
    const double y = std::sqrt(two_r * s * x);
    return s * (x - y) / (g * y);
}

double naive_shift_amount(std::size_t position, const PowerAllocation& alloc,
                          const RateTargets& targets, double noise_power) {
    check_shift_position(position, alloc);
    const double g = alloc.order().gains[position];
    const double p = alloc.power_at(position);
    const double two_r = 1.0 + targets.eta.at(alloc.order().permutation[position]);
    const double s = g * interference_before(alloc, position) + noise_power;
    return (s + g * p - std::sqrt(two_r * s * (s + g * p))) / g;
}

PowerAllocation improvement_shift(std::size_t position, const PowerAllocation& alloc,
                                  const RateTargets& targets, double noise_power) {
    const double delta = shift_amount(position, alloc, targets, noise_power);
    std::vector<double> powers = alloc.powers();
    powers[position] -= delta;
    powers[position - 1] += delta;
    return PowerAllocation(std::move(powers), alloc.order(), alloc.budget());
}

} // namespace mmnoma
