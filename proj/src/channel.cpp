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

#include "mmnoma/channel.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace mmnoma {

namespace {

CVector steering(double cos_angle, std::size_t n, const char* what) {
    if (!(cos_angle >= -1.0 && cos_angle <= 1.0))
        throw ConfigError(std::string(what) + ": cos(angle) " + std::to_string(cos_angle) +
                          " outside [-1, 1]");
    CVector a(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        a[static_cast<Eigen::Index>(i)] =
            std::polar(1.0, std::numbers::pi * static_cast<double>(i) * cos_angle);
    return a;
}

// Draws paths with the given per-path average powers.
ChannelRealization draw(Rng& rng, std::size_t n_tx, std::size_t n_rx, double distance_m,
                        ChannelModel model, const std::vector<double>& path_powers) {
    ChannelRealization out;
    out.distance_m = distance_m;
    out.model = model;
    out.seed = rng.seed();
    out.paths.reserve(path_powers.size());
    for (double power : path_powers) {
        PathParams path;
        path.cos_aod = rng.uniform(-1.0, 1.0);
        path.cos_aoa = rng.uniform(-1.0, 1.0);
        path.coeff = rng.complex_normal(power);
        out.paths.push_back(path);
    }
    out.matrix = synth_channel(out.paths, n_tx, n_rx);
    return out;
}

} // namespace

std::string_view to_string(ChannelModel model) noexcept {
    return model == ChannelModel::Los ? "LOS" : "NLOS";
}

ChannelModel parse_channel_model(std::string_view text) {
    if (text == "LOS" || text == "los")
        return ChannelModel::Los;
    if (text == "NLOS" || text == "nlos")
        return ChannelModel::Nlos;
    throw ConfigError("unknown channel model '" + std::string(text) + "'");
}

CVector steering_tx(double cos_angle, std::size_t n_tx) {
    return steering(cos_angle, n_tx, "steering_tx");
}

CVector steering_rx(double cos_angle, std::size_t n_rx) {
    return steering(cos_angle, n_rx, "steering_rx");
}

CMatrix synth_channel(std::span<const PathParams> paths, std::size_t n_tx, std::size_t n_rx) {
    CMatrix h = CMatrix::Zero(static_cast<Eigen::Index>(n_rx), static_cast<Eigen::Index>(n_tx));
    for (const PathParams& path : paths)
        h.noalias() += path.coeff * steering_rx(path.cos_aoa, n_rx) *
                       steering_tx(path.cos_aod, n_tx).adjoint();
    return h;
}

double large_scale_gain(double distance_m, double exponent, bool strict) {
    if (!(distance_m > 0.0))
        throw ConfigError("large_scale_gain: distance must be positive");
    if (strict && (distance_m < 10.0 || distance_m > 500.0))
        throw ConfigError("large_scale_gain: distance " + std::to_string(distance_m) +
                          " m outside [10, 500] m");
    return std::pow(100.0 / distance_m, exponent);
}

double sample_user_distance(Rng& rng, const ChannelParams& params) {
    return rng.uniform(params.min_distance_m, params.max_distance_m);
}

ChannelRealization sample_los(Rng& rng, std::size_t n_tx, std::size_t n_rx, double distance_m,
                              const ChannelParams& params) {
    if (params.n_paths < 1)
        throw ConfigError("sample_los: need at least one path");
    const double gain = large_scale_gain(distance_m, params.path_loss_exponent);
    const double nlos_ratio = std::pow(10.0, -params.nlos_attenuation_db / 10.0);
    const double los_power =
        gain / (1.0 + static_cast<double>(params.n_paths - 1) * nlos_ratio);
    std::vector<double> powers(params.n_paths, los_power * nlos_ratio);
    powers.front() = los_power;
    return draw(rng, n_tx, n_rx, distance_m, ChannelModel::Los, powers);
}

ChannelRealization sample_nlos(Rng& rng, std::size_t n_tx, std::size_t n_rx, double distance_m,
                               const ChannelParams& params) {
    if (params.n_paths < 1)
        throw ConfigError("sample_nlos: need at least one path");
    const double paths = static_cast<double>(params.n_paths);
    const double nominal = 1.0 / std::sqrt(paths);
    // Renormalize the nominal 1/sqrt(L) per-path power to the large-scale gain.
    const double scale = large_scale_gain(distance_m, params.path_loss_exponent) / (paths * nominal);
    std::vector<double> powers(params.n_paths, nominal * scale);
    return draw(rng, n_tx, n_rx, distance_m, ChannelModel::Nlos, powers);
}

ChannelRealization sample_channel(ChannelModel model, Rng& rng, std::size_t n_tx,
                                  std::size_t n_rx, double distance_m,
                                  const ChannelParams& params) {
    return model == ChannelModel::Los ? sample_los(rng, n_tx, n_rx, distance_m, params)
                                      : sample_nlos(rng, n_tx, n_rx, distance_m, params);
}

nlohmann::json to_json(const ChannelRealization& channel) {
    nlohmann::json paths = nlohmann::json::array();
    for (const PathParams& p : channel.paths)
        paths.push_back({{"coeff", {p.coeff.real(), p.coeff.imag()}},
                         {"cos_aod", p.cos_aod},
                         {"cos_aoa", p.cos_aoa}});
    return {{"model", std::string(to_string(channel.model))},
            {"distance_m", channel.distance_m},
            {"seed", channel.seed},
            {"paths", std::move(paths)}};
}

ChannelRealization channel_from_json(const nlohmann::json& record, std::size_t n_tx,
                                     std::size_t n_rx) {
    ChannelRealization out;
    out.model = parse_channel_model(record.at("model").get<std::string>());
    out.distance_m = record.at("distance_m").get<double>();
    out.seed = record.at("seed").get<std::uint64_t>();
    for (const auto& p : record.at("paths")) {
        const auto& c = p.at("coeff");
        out.paths.push_back({Complex(c.at(0).get<double>(), c.at(1).get<double>()),
                             p.at("cos_aod").get<double>(), p.at("cos_aoa").get<double>()});
    }
    out.matrix = synth_channel(out.paths, n_tx, n_rx);
    return out;
}

} // namespace mmnoma
