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

#include "mmnoma/power_alloc.hpp"
#include "mmnoma/rng.hpp"
#include "mmnoma/rx_beamforming.hpp"

#include <optional>
#include <span>

namespace mmnoma::oracle {

/// Best C1-C3 feasible allocation on a uniform grid over (p_2, ..., p_K) in
/// [0, P], with p_1 = P - sum. Empty if no grid point is feasible. K <= 4.
std::optional<PowerAllocation> grid_power_search(const DecodingOrder& order,
                                                 const RateTargets& targets, double total_power,
                                                 double noise_power,
                                                 std::size_t points_per_axis = 200);

// Largest Q^N the phase enumeration accepts.
inline constexpr double kPhaseSearchBudget = 1e7;

/// Exhaustive search over exact-CM Tx beams whose phases lie on the grid
/// 2 pi q / Q, with the first entry pinned to phase 0 (the objective is
/// invariant under a global phase). Ties resolve to the lexicographically
/// smallest phase index. Throws ConfigError before enumerating if
/// Q^N > kPhaseSearchBudget.
Outcome<Solution> exhaustive_phase_tx(std::span<const CMatrix> channels,
                                      const SystemConfig& config, std::size_t n_phases = 16,
                                      std::size_t threads = 1);

/// Largest effective gain over `n_samples` receive beams with i.i.d.
/// uniform phases.
double random_rx_sampling(const CMatrix& h, const TxBeam& w, std::size_t n_samples, Rng& rng);

} // namespace mmnoma::oracle
