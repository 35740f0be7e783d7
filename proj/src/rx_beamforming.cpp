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

#include "mmnoma/rx_beamforming.hpp"

#include <cmath>

namespace mmnoma {

namespace {

void check_channels(std::span<const CMatrix> channels, const SystemConfig& config,
                    Eigen::Index n_tx) {
    if (channels.size() != config.n_users)
        throw DimensionError("channels", config.n_users, channels.size());
    if (static_cast<std::size_t>(n_tx) != config.n_tx)
        throw DimensionError("w", config.n_tx, static_cast<std::size_t>(n_tx));
    for (const CMatrix& h : channels) {
        if (static_cast<std::size_t>(h.rows()) != config.n_rx)
            throw DimensionError("channel rows", config.n_rx, static_cast<std::size_t>(h.rows()));
        if (static_cast<std::size_t>(h.cols()) != config.n_tx)
            throw DimensionError("channel cols", config.n_tx, static_cast<std::size_t>(h.cols()));
    }
}

double constrained_sum_rate(const DecodingOrder& order, const PowerAllocation& alloc,
                            const SystemConfig& config) {
    double rate = 0.0;
    for (std::size_t pos = 1; pos < order.size(); ++pos)
        rate += config.min_rates[order.permutation[pos]];
    return rate + std::log2(1.0 + order.gains[0] * alloc.power_at(0) / config.noise_power);
}

} // namespace

RxBeam optimal_rx(const CMatrix& h, const TxBeam& w) {
    if (static_cast<std::size_t>(h.cols()) != w.size())
        throw DimensionError("w", static_cast<std::size_t>(h.cols()), w.size());
    const CVector hw = h * w.entries();
    const double amp = 1.0 / std::sqrt(static_cast<double>(hw.size()));
    CVector u(hw.size());
    for (Eigen::Index m = 0; m < hw.size(); ++m) {
        const double mag = std::abs(hw[m]);
        u[m] = mag > 0.0 ? hw[m] * (amp / mag) : Complex(amp, 0.0);
    }
    return RxBeam(std::move(u));
}

double optimal_rx_gain(const CMatrix& h, const CVector& w) {
    const CVector hw = h * w;
    const double l1 = hw.cwiseAbs().sum();
    return l1 * l1 / static_cast<double>(hw.size());
}

Outcome<Solution> reduced_objective(const TxBeam& w, std::span<const CMatrix> channels,
                                    const SystemConfig& config) {
    check_channels(channels, config, static_cast<Eigen::Index>(w.size()));
    std::vector<RxBeam> rx;
    std::vector<double> gains;
    rx.reserve(channels.size());
    gains.reserve(channels.size());
    for (const CMatrix& h : channels) {
        rx.push_back(optimal_rx(h, w));
        gains.push_back(optimal_rx_gain(h, w.entries()));
    }
    DecodingOrder order = decoding_order(gains);
    auto alloc = allocate(order, RateTargets::from_min_rates(config.min_rates),
                          config.total_power, config.noise_power);
    if (!alloc)
        return alloc.reason();
    const double rate = constrained_sum_rate(order, alloc.value(), config);
    return Solution{w, std::move(rx), std::move(gains), std::move(order),
                    std::move(alloc).value(), rate};
}

double reduced_rate(const CVector& w, std::span<const CMatrix> channels,
                    const SystemConfig& config) {
    check_channels(channels, config, w.size());
    std::vector<double> gains;
    gains.reserve(channels.size());
    for (const CMatrix& h : channels)
        gains.push_back(optimal_rx_gain(h, w));
    const DecodingOrder order = decoding_order(gains);
    const auto alloc = allocate(order, RateTargets::from_min_rates(config.min_rates),
                                config.total_power, config.noise_power);
    if (!alloc)
        return kInfeasibleFitness;
    return constrained_sum_rate(order, alloc.value(), config);
}

} // namespace mmnoma
