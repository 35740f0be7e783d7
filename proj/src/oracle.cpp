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

#include "mmnoma/oracle.hpp"

#include "mmnoma/parallel.hpp"

#include <cmath>
#include <numbers>

namespace mmnoma::oracle {

std::optional<PowerAllocation> grid_power_search(const DecodingOrder& order,
                                                 const RateTargets& targets, double total_power,
                                                 double noise_power,
                                                 std::size_t points_per_axis) {
    const std::size_t k = order.size();
    if (k > 4)
        throw ConfigError("grid_power_search: at most 4 users");
    if (targets.size() != k)
        throw DimensionError("targets", k, targets.size());
    if (points_per_axis < 2)
        throw ConfigError("grid_power_search: need at least 2 points per axis");

    std::vector<double> min_rate(k);
    for (std::size_t pos = 0; pos < k; ++pos)
        min_rate[pos] = targets.min_rate(order.permutation[pos]);

    const double step = total_power / static_cast<double>(points_per_axis - 1);
    std::vector<std::size_t> index(k, 0);  // index[0] unused
    std::vector<double> powers(k, 0.0);
    std::vector<double> best_powers;
    double best_rate = -std::numeric_limits<double>::infinity();

    while (true) {
        double assigned = 0.0;
        for (std::size_t pos = k; pos-- > 1;) {
            powers[pos] = static_cast<double>(index[pos]) * step;
            assigned += powers[pos];
        }
        powers[0] = total_power - assigned;
        if (powers[0] >= 0.0) {
            double rate = 0.0;
            double interference = 0.0;
            bool ok = true;
            for (std::size_t pos = 0; pos < k && ok; ++pos) {
                const double g = order.gains[pos];
                const double r = std::log2(1.0 + g * powers[pos] / (g * interference + noise_power));
                ok = r >= min_rate[pos];
                rate += r;
                interference += powers[pos];
            }
            if (ok && rate > best_rate) {
                best_rate = rate;
                best_powers = powers;
            }
        }
        // odometer over positions 1..K-1
        std::size_t pos = 1;
        while (pos < k && ++index[pos] == points_per_axis)
            index[pos++] = 0;
        if (pos >= k)
            break;
    }
    if (best_powers.empty())
        return std::nullopt;
    return PowerAllocation(std::move(best_powers), order, total_power);
}

Outcome<Solution> exhaustive_phase_tx(std::span<const CMatrix> channels,
                                      const SystemConfig& config, std::size_t n_phases,
                                      std::size_t threads) {
    config.validate();
    if (n_phases < 1)
        throw ConfigError("exhaustive_phase_tx: need at least one phase");
    const std::size_t n = config.n_tx;
    if (std::pow(static_cast<double>(n_phases), static_cast<double>(n)) > kPhaseSearchBudget)
        throw ConfigError("exhaustive_phase_tx: Q^N = " + std::to_string(n_phases) + "^" +
                          std::to_string(n) + " exceeds the enumeration budget");

    std::size_t combos = 1;
    for (std::size_t i = 1; i < n; ++i)
        combos *= n_phases;

    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    auto beam_for = [&](std::size_t code) {
        CVector w(static_cast<Eigen::Index>(n));
        w[0] = Complex(amp, 0.0);
        // entry 1 is the most significant digit: code order is lexicographic
        for (std::size_t i = n; i-- > 1;) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(code % n_phases) /
                                 static_cast<double>(n_phases);
            w[static_cast<Eigen::Index>(i)] = std::polar(amp, phase);
            code /= n_phases;
        }
        return w;
    };

    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(combos, 64));
    std::vector<std::size_t> chunk_best(chunks, 0);
    std::vector<double> chunk_value(chunks, kInfeasibleFitness);
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t begin = combos * c / chunks;
        const std::size_t end = combos * (c + 1) / chunks;
        std::size_t best = begin;
        double value = kInfeasibleFitness;
        for (std::size_t code = begin; code < end; ++code) {
            const double v = reduced_rate(beam_for(code), channels, config);
            if (v > value) {
                value = v;
                best = code;
            }
        }
        chunk_best[c] = best;
        chunk_value[c] = value;
    });

    std::size_t best_code = chunk_best[0];
    double best_value = chunk_value[0];
    for (std::size_t c = 1; c < chunks; ++c)
        if (chunk_value[c] > best_value) {
            best_value = chunk_value[c];
            best_code = chunk_best[c];
        }
    return reduced_objective(TxBeam(beam_for(best_code), BeamMode::ExactCM), channels, config);
}

double random_rx_sampling(const CMatrix& h, const TxBeam& w, std::size_t n_samples, Rng& rng) {
    const auto m = static_cast<std::size_t>(h.rows());
    std::vector<double> phases(m);
    double best = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        for (double& ph : phases)
            ph = rng.uniform(0.0, 2.0 * std::numbers::pi);
        best = std::max(best, effective_gain(RxBeam::from_phases(phases), h, w));
    }
    return best;
}

} // namespace mmnoma::oracle
