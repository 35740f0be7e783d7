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

#include <cstdint>
#include <random>

namespace mmnoma {

/// Explicitly seeded generator with deterministic child streams. A child
/// seed depends only on the parent seed and the stream id, so streams can
/// be derived in any order (or concurrently) with identical results.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }

    Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

    static std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) {
        return mix(parent ^ mix(stream + 0x9e3779b97f4a7c15ULL));
    }

    std::mt19937_64& engine() noexcept { return engine_; }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double uniform01() { return uniform(0.0, 1.0); }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    Complex complex_normal(double variance) {
        std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
        const double re = normal(engine_);
        const double im = normal(engine_);
        return {re, im};
    }

private:
    // SplitMix64 finalizer.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace mmnoma
