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
#include "mmnoma/rx_beamforming.hpp"
#include "mmnoma/types.hpp"

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace mmnoma {

struct SwarmConfig {
    std::size_t n_particles = 100;  // I
    std::size_t n_iterations = 50;  // T
    double cognitive = 1.4;         // c_1
    double social = 1.4;            // c_2
    double inertia_max = 0.9;
    double inertia_min = 0.4;
    // Per real dimension, as a fraction of the disk diameter 2/sqrt(N).
    double velocity_clamp = 0.2;

    void validate() const;
    double velocity_limit(std::size_t n_tx) const;
};

enum class SearchSpace {
    RelaxedDisk,      // BC-PSO: annulus d_t <= |x_n| <= 1/sqrt(N), d_t growing to 1/sqrt(N)
    ConstantModulus   // plain PSO: |x_n| = 1/sqrt(N) after every move
};

struct Particle {
    CVector position;
    CVector velocity;
    CVector pbest_position;
    double pbest_fitness = kInfeasibleFitness;
};

struct SwarmState {
    std::vector<Particle> particles;
    CVector gbest_position;
    double gbest_fitness = kInfeasibleFitness;
    std::size_t iteration = 0;
    double inner_radius = 0.0;  // d_t
    double inertia = 0.0;       // omega used in the last sweep
};

struct TraceEntry {
    std::size_t iteration = 0;
    double gbest_fitness = kInfeasibleFitness;
    double inner_radius = 0.0;
    double inertia = 0.0;
};

using Fitness = std::function<double(const CVector&)>;

struct SwarmOptions {
    std::size_t threads = 1;  // fitness evaluations per sweep run concurrently
};

/// d_t = t / (T sqrt(N))
double inner_radius_at(std::size_t iteration, std::size_t n_iterations, std::size_t n_tx);
/// omega = omega_max - (t / T)(omega_max - omega_min)
double inertia_at(std::size_t iteration, const SwarmConfig& config);

/// Positions uniform over the per-entry disk of radius 1/sqrt(N) (or its
/// boundary for ConstantModulus), velocities uniform in the clamp box.
/// Evaluates every particle and selects gbest.
SwarmState init_swarm(Rng& rng, const SwarmConfig& config, std::size_t n_tx,
                      const Fitness& fitness, SearchSpace space = SearchSpace::RelaxedDisk,
                      const SwarmOptions& options = {});

/// One velocity/position update. Every complex entry is two real
/// dimensions with their own rand() draws:
///   v <- omega v + c1 rand (pbest - x) + c2 rand (gbest - x), clamped to
///   +-velocity_limit, then x <- x + v.
/// `rand01` supplies the uniform draws (re-cognitive, re-social,
/// im-cognitive, im-social per entry).
template <typename Uniform01>
void update_particle(Particle& particle, const CVector& gbest, double inertia,
                     const SwarmConfig& config, double velocity_limit, Uniform01&& rand01) {
    auto step = [&](double v, double x, double pbest, double g) {
        const double r1 = rand01();
        const double r2 = rand01();
        v = inertia * v + config.cognitive * r1 * (pbest - x) + config.social * r2 * (g - x);
        return std::clamp(v, -velocity_limit, velocity_limit);
    };
    for (Eigen::Index n = 0; n < particle.position.size(); ++n) {
        const Complex x = particle.position[n];
        const Complex pb = particle.pbest_position[n];
        const Complex gb = gbest[n];
        const Complex v = particle.velocity[n];
        const double v_re = step(v.real(), x.real(), pb.real(), gb.real());
        const double v_im = step(v.imag(), x.imag(), pb.imag(), gb.imag());
        particle.velocity[n] = Complex(v_re, v_im);
        particle.position[n] = x + particle.velocity[n];
    }
}

void update_particle(Particle& particle, const CVector& gbest, double inertia, Rng& rng,
                     const SwarmConfig& config, double velocity_limit);

/// Pushes every position entry into the annulus d_t <= |x| <= 1/sqrt(N)
/// and lifts pbest entries below d_t, keeping phases. Zero entries take
/// phase 0.
void compress_boundary(CVector& position, CVector& pbest_position, double inner_radius,
                       std::size_t n_tx);

/// Advances the swarm by one iteration (update, project, evaluate, pbest
/// refresh for each particle, then one synchronous gbest refresh).
TraceEntry step_swarm(SwarmState& state, Rng& rng, const SwarmConfig& config,
                      const Fitness& fitness, SearchSpace space,
                      const SwarmOptions& options = {});

struct SwarmRun {
    SwarmState state;
    std::vector<TraceEntry> trace;  // one entry per iteration 1..T
};

SwarmRun run_swarm(Rng& rng, const Fitness& fitness, std::size_t n_tx,
                   const SwarmConfig& config, SearchSpace space,
                   const SwarmOptions& options = {});

struct BeamSearchResult {
    Outcome<Solution> best;
    std::vector<TraceEntry> trace;
};

/// Boundary-compressed PSO over the relaxed Tx-beam space with the reduced
/// objective as fitness. The returned beam is exact constant modulus: the
/// best of the final pbests and the CM-projected gbest, re-evaluated.
BeamSearchResult run_bcpso(Rng& rng, std::span<const CMatrix> channels,
                           const SystemConfig& system, const SwarmConfig& swarm,
                           const SwarmOptions& options = {});

/// Baseline PSO that keeps every particle on the constant-modulus set.
BeamSearchResult run_plain_pso(Rng& rng, std::span<const CMatrix> channels,
                               const SystemConfig& system, const SwarmConfig& swarm,
                               const SwarmOptions& options = {});

/// First 1-based iteration t after which the next `window` relative gbest
/// improvements all stay below `rel_tol`; trace.size() if there is none.
std::size_t convergence_iteration(std::span<const double> trace, double rel_tol,
                                  std::size_t window);
std::size_t convergence_iteration(std::span<const TraceEntry> trace, double rel_tol,
                                  std::size_t window);

// iteration,gbest_fitness,inner_radius,inertia
void write_trace_csv(std::ostream& out, std::span<const TraceEntry> trace);

} // namespace mmnoma
