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

#include "mmnoma/beams.hpp"

#include <cmath>

namespace mmnoma {

namespace {

void check_modulus(const CVector& entries, BeamMode mode, const char* what) {
    if (entries.size() == 0)
        throw ConfigError(std::string(what) + ": empty beam");
    const double target = 1.0 / std::sqrt(static_cast<double>(entries.size()));
    for (Eigen::Index n = 0; n < entries.size(); ++n) {
        const double mag = std::abs(entries[n]);
        const bool ok = mode == BeamMode::ExactCM
                            ? std::abs(mag - target) <= kModulusTolerance * target
                            : mag <= target * (1.0 + kModulusTolerance);
        if (!ok || !std::isfinite(mag))
            throw ConfigError(std::string(what) + ": entry " + std::to_string(n) +
                              " has modulus " + std::to_string(mag) +
                              ", bound 1/sqrt(" + std::to_string(entries.size()) + ")");
    }
}

CVector phase_vector(std::span<const double> phases) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(phases.size()));
    CVector v(static_cast<Eigen::Index>(phases.size()));
    for (std::size_t n = 0; n < phases.size(); ++n)
        v[static_cast<Eigen::Index>(n)] = std::polar(amp, phases[n]);
    return v;
}

} // namespace

TxBeam::TxBeam(CVector entries, BeamMode mode) : entries_(std::move(entries)), mode_(mode) {
    check_modulus(entries_, mode_, "TxBeam");
}

TxBeam TxBeam::from_phases(std::span<const double> phases) {
    return TxBeam(phase_vector(phases), BeamMode::ExactCM);
}

RxBeam::RxBeam(CVector entries) : entries_(std::move(entries)) {
    check_modulus(entries_, BeamMode::ExactCM, "RxBeam");
}

RxBeam RxBeam::from_phases(std::span<const double> phases) {
    return RxBeam(phase_vector(phases));
}

RxBeam RxBeam::uniform(std::size_t n_rx) {
    return RxBeam(CVector::Constant(static_cast<Eigen::Index>(n_rx),
                                    Complex(1.0 / std::sqrt(static_cast<double>(n_rx)), 0.0)));
}

void project_to_constant_modulus(CVector& entries) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(entries.size()));
    for (auto& x : entries) {
        const double mag = std::abs(x);
        x = mag > 0.0 ? x * (amp / mag) : Complex(amp, 0.0);
    }
}

} // namespace mmnoma
