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

#include "mmnoma/beams.hpp"
#include "mmnoma/power_alloc.hpp"
#include "mmnoma/rates.hpp"
#include "mmnoma/types.hpp"

#include <limits>
#include <span>
#include <vector>

namespace mmnoma {

/// Phase-aligned receive beam: entry m = [Hw]_m / (sqrt(M) |[Hw]_m|).
/// Entries where [Hw]_m = 0 take phase 0.
RxBeam optimal_rx(const CMatrix& h, const TxBeam& w);

/// Effective gain reached by `optimal_rx`, (1/M) (sum_m |[Hw]_m|)^2.
double optimal_rx_gain(const CMatrix& h, const CVector& w);

/// Everything the three stages produce for one Tx beam. Per-user vectors
/// are indexed by user; `power` is indexed by decoding position.
struct Solution {
    TxBeam tx;
    std::vector<RxBeam> rx;
    std::vector<double> gains;
    DecodingOrder order;
    PowerAllocation power;
    double sum_rate = 0.0;  // sum_{k>=2} r_k + log2(1 + g_1 p_1 / sigma^2)
};

/// Optimal Rx beams and power allocation for the Tx beam `w`; the sum rate
/// then depends on `w` alone. `channels[k]` is user k's M x N matrix.
Outcome<Solution> reduced_objective(const TxBeam& w, std::span<const CMatrix> channels,
                                    const SystemConfig& config);

/// Scalar form of `reduced_objective` used as swarm fitness: -infinity for
/// infeasible beams. Bitwise equal to `reduced_objective(...)->sum_rate`.
double reduced_rate(const CVector& w, std::span<const CMatrix> channels,
                    const SystemConfig& config);

inline constexpr double kInfeasibleFitness = -std::numeric_limits<double>::infinity();

} // namespace mmnoma
