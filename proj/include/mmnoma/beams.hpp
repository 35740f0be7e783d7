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

#include "mmnoma/types.hpp"

#include <span>

namespace mmnoma {

enum class BeamMode {
    ExactCM,  // every entry has modulus exactly 1/sqrt(N)
    Relaxed   // every entry lies in the disk of radius 1/sqrt(N)
};

// Relative tolerance on the constant-modulus invariants.
inline constexpr double kModulusTolerance = 1e-12;

/// Transmit beam of a single-RF-chain phased array. Entries are checked
/// against the modulus constraint of `mode` on construction.
class TxBeam {
public:
    TxBeam(CVector entries, BeamMode mode);

    /// Exact-CM beam with the given per-antenna phases (radians).
    static TxBeam from_phases(std::span<const double> phases);

    const CVector& entries() const noexcept { return entries_; }
    BeamMode mode() const noexcept { return mode_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.size()); }

private:
    CVector entries_;
    BeamMode mode_;
};

/// Receive beam; always exact constant modulus 1/sqrt(M).
class RxBeam {
public:
    explicit RxBeam(CVector entries);

    static RxBeam from_phases(std::span<const double> phases);
    static RxBeam uniform(std::size_t n_rx);

    const CVector& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.size()); }

private:
    CVector entries_;
};

// Maps every entry onto modulus 1/sqrt(N), keeping its phase. Zero entries
// get phase 0.
void project_to_constant_modulus(CVector& entries);

} // namespace mmnoma
