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

#include "mmnoma/rng.hpp"
#include "mmnoma/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace mmnoma {

// One multipath component of a half-wavelength ULA channel.
struct PathParams {
    Complex coeff;
    double cos_aod = 0.0;  // steers the BS (Tx) array, length N
    double cos_aoa = 0.0;  // steers the user (Rx) array, length M
};

enum class ChannelModel { Los, Nlos };

std::string_view to_string(ChannelModel model) noexcept;
ChannelModel parse_channel_model(std::string_view text);

/// One user's M x N channel with the parameters that generated it.
struct ChannelRealization {
    CMatrix matrix;
    std::vector<PathParams> paths;
    double distance_m = 100.0;
    ChannelModel model = ChannelModel::Los;
    std::uint64_t seed = 0;  // seed of the stream the realization was drawn from
};

struct ChannelParams {
    std::size_t n_paths = 4;
    double path_loss_exponent = 2.0;
    double nlos_attenuation_db = 15.0;  // LOS model: each NLOS path relative to the LOS path
    double min_distance_m = 10.0;
    double max_distance_m = 500.0;
};

/// exp(j*pi*n*cos_angle), n = 0..n-1. Throws ConfigError outside [-1, 1].
CVector steering_tx(double cos_angle, std::size_t n_tx);
CVector steering_rx(double cos_angle, std::size_t n_rx);

/// sum_l coeff_l a_r(cos_aoa_l) a_t(cos_aod_l)^H
CMatrix synth_channel(std::span<const PathParams> paths, std::size_t n_tx, std::size_t n_rx);

/// (100 / d)^exponent. With `strict`, distances outside [10, 500] m throw.
double large_scale_gain(double distance_m, double exponent = 2.0, bool strict = true);

double sample_user_distance(Rng& rng, const ChannelParams& params = {});

// Both samplers normalize so that E[||H||_F^2 / (M N)] = large_scale_gain(d).
ChannelRealization sample_los(Rng& rng, std::size_t n_tx, std::size_t n_rx, double distance_m,
                              const ChannelParams& params = {});
ChannelRealization sample_nlos(Rng& rng, std::size_t n_tx, std::size_t n_rx, double distance_m,
                               const ChannelParams& params = {});
ChannelRealization sample_channel(ChannelModel model, Rng& rng, std::size_t n_tx,
                                  std::size_t n_rx, double distance_m,
                                  const ChannelParams& params = {});

nlohmann::json to_json(const ChannelRealization& channel);
// Rebuilds the matrix from the stored paths; needs the array sizes.
ChannelRealization channel_from_json(const nlohmann::json& record, std::size_t n_tx,
                                     std::size_t n_rx);

} // namespace mmnoma
