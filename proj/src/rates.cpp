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

#include "mmnoma/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mmnoma {

void SystemConfig::validate() const {
    if (n_tx < 1 || n_rx < 1 || n_users < 1)
        throw ConfigError("SystemConfig: n_tx, n_rx and n_users must be >= 1");
    if (!(total_power > 0.0) || !std::isfinite(total_power))
        throw ConfigError("SystemConfig: total_power must be positive");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
        throw ConfigError("SystemConfig: noise_power must be positive");
    if (min_rates.size() != n_users)
        throw DimensionError("min_rates", n_users, min_rates.size());
    for (double r : min_rates)
        if (!(r >= 0.0) || !std::isfinite(r))
            throw ConfigError("SystemConfig: minimum rates must be finite and >= 0");
}

double effective_gain(const RxBeam& u, const CMatrix& h, const TxBeam& w) {
    if (static_cast<std::size_t>(h.cols()) != w.size())
        throw DimensionError("w", static_cast<std::size_t>(h.cols()), w.size());
    if (static_cast<std::size_t>(h.rows()) != u.size())
        throw DimensionError("u", static_cast<std::size_t>(h.rows()), u.size());
    const Complex z = u.entries().dot(h * w.entries());  // dot() conjugates the left operand
    return std::norm(z);
}

std::size_t DecodingOrder::position_of(std::size_t user) const {
    const auto it = std::find(permutation.begin(), permutation.end(), user);
    if (it == permutation.end())
        throw ConfigError("DecodingOrder: unknown user " + std::to_string(user));
    return static_cast<std::size_t>(it - permutation.begin());
}

DecodingOrder decoding_order(std::span<const double> gains) {
    if (gains.empty())
        throw ConfigError("decoding_order: no users");
    for (double g : gains)
        if (std::isnan(g) || g < 0.0)
            throw ConfigError("decoding_order: gains must be non-negative numbers");

    DecodingOrder order;
    order.permutation.resize(gains.size());
    std::iota(order.permutation.begin(), order.permutation.end(), std::size_t{0});
    std::stable_sort(order.permutation.begin(), order.permutation.end(),
                     [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
    order.gains.reserve(gains.size());
    for (std::size_t user : order.permutation)
        order.gains.push_back(gains[user]);
    return order;
}

PowerAllocation::PowerAllocation(std::vector<double> powers, DecodingOrder order, double budget)
    : powers_(std::move(powers)), order_(std::move(order)), budget_(budget) {
    if (powers_.size() != order_.size())
        throw DimensionError("powers", order_.size(), powers_.size());
    for (double p : powers_)
        if (!(p >= 0.0) || !std::isfinite(p))
            throw ConfigError("PowerAllocation: powers must be finite and >= 0");
    if (total() > budget_ * (1.0 + 1e-9))
        throw ConfigError("PowerAllocation: total power " + std::to_string(total()) +
                          " exceeds budget " + std::to_string(budget_));
}

double PowerAllocation::total() const noexcept {
    double acc = 0.0;
    for (auto it = powers_.rbegin(); it != powers_.rend(); ++it)
        acc += *it;
    return acc;
}

double user_rate(std::size_t position, const PowerAllocation& alloc, double noise_power) {
    if (position >= alloc.size())
        throw DimensionError("position", alloc.size(), position);
    const double g = alloc.order().gains[position];
    double interference = 0.0;
    for (std::size_t m = 0; m < position; ++m)
        interference += alloc.power_at(m);
    return std::log2(1.0 + g * alloc.power_at(position) / (g * interference + noise_power));
}

double sum_rate(const PowerAllocation& alloc, double noise_power) {
    double total = 0.0;
    for (std::size_t k = 0; k < alloc.size(); ++k)
        total += user_rate(k, alloc, noise_power);
    return total;
}

double oma_rate_from_gain(double gain, const SystemConfig& config) {
    return std::log2(1.0 + gain * config.total_power / config.noise_power) /
           static_cast<double>(config.n_users);
}

double oma_rate(const RxBeam& u, const CMatrix& h, const TxBeam& w, const SystemConfig& config) {
    return oma_rate_from_gain(effective_gain(u, h, w), config);
}

} // namespace mmnoma
