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

#include "mmnoma/swarm.hpp"

#include "mmnoma/format.hpp"
#include "mmnoma/parallel.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace mmnoma {

void SwarmConfig::validate() const {
    if (n_particles < 1 || n_iterations < 1)
        throw ConfigError("SwarmConfig: n_particles and n_iterations must be >= 1");
    if (!(cognitive >= 0.0) || !(social >= 0.0))
        throw ConfigError("SwarmConfig: cognitive and social factors must be >= 0");
    if (!(inertia_min >= 0.0) || !(inertia_min <= inertia_max))
        throw ConfigError("SwarmConfig: need 0 <= inertia_min <= inertia_max");
    if (!(velocity_clamp > 0.0))
        throw ConfigError("SwarmConfig: velocity_clamp must be positive");
}

double SwarmConfig::velocity_limit(std::size_t n_tx) const {
    return velocity_clamp * 2.0 / std::sqrt(static_cast<double>(n_tx));
}

double inner_radius_at(std::size_t iteration, std::size_t n_iterations, std::size_t n_tx) {
    return static_cast<double>(iteration) /
           (static_cast<double>(n_iterations) * std::sqrt(static_cast<double>(n_tx)));
}

double inertia_at(std::size_t iteration, const SwarmConfig& config) {
    return config.inertia_max - static_cast<double>(iteration) /
                                    static_cast<double>(config.n_iterations) *
                                    (config.inertia_max - config.inertia_min);
}

namespace {

void evaluate_all(std::vector<Particle>& particles, std::vector<double>& fitness_out,
                  const Fitness& fitness, const SwarmOptions& options) {
    fitness_out.resize(particles.size());
    parallel_for(particles.size(), options.threads,
                 [&](std::size_t i) { fitness_out[i] = fitness(particles[i].position); });
}

// Line 25 of the swarm loop: one deterministic fold in particle order.
// gbest follows the best particle's pbest, which compress_boundary may
// have moved since it was recorded.
void refresh_gbest(SwarmState& state) {
    const Particle* best = nullptr;
    for (const Particle& p : state.particles)
        if (best == nullptr || p.pbest_fitness > best->pbest_fitness)
            best = &p;
    if (best->pbest_fitness >= state.gbest_fitness) {
        state.gbest_fitness = best->pbest_fitness;
        state.gbest_position = best->pbest_position;
    }
}

} // namespace

SwarmState init_swarm(Rng& rng, const SwarmConfig& config, std::size_t n_tx,
                      const Fitness& fitness, SearchSpace space, const SwarmOptions& options) {
    config.validate();
    if (n_tx < 1)
        throw ConfigError("init_swarm: n_tx must be >= 1");
    const double radius = 1.0 / std::sqrt(static_cast<double>(n_tx));
    const double vmax = config.velocity_limit(n_tx);
    const auto dim = static_cast<Eigen::Index>(n_tx);

    SwarmState state;
    state.particles.resize(config.n_particles);
    for (Particle& p : state.particles) {
        p.position.resize(dim);
        p.velocity.resize(dim);
        for (Eigen::Index n = 0; n < dim; ++n) {
            // sqrt of a uniform draw gives uniform area density over the disk
            const double u = rng.uniform01();
            const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double r = space == SearchSpace::RelaxedDisk ? radius * std::sqrt(u) : radius;
            p.position[n] = std::polar(r, phase);
        }
        for (Eigen::Index n = 0; n < dim; ++n) {
            const double re = rng.uniform(-vmax, vmax);
            const double im = rng.uniform(-vmax, vmax);
            p.velocity[n] = Complex(re, im);
        }
        p.pbest_position = p.position;
    }

    std::vector<double> values;
    evaluate_all(state.particles, values, fitness, options);
    for (std::size_t i = 0; i < values.size(); ++i)
        state.particles[i].pbest_fitness = values[i];
    state.gbest_position = state.particles.front().pbest_position;
    state.gbest_fitness = kInfeasibleFitness;
    refresh_gbest(state);
    state.iteration = 0;
    state.inner_radius = space == SearchSpace::RelaxedDisk ? 0.0 : radius;
    state.inertia = config.inertia_max;
    return state;
}

void update_particle(Particle& particle, const CVector& gbest, double inertia, Rng& rng,
                     const SwarmConfig& config, double velocity_limit) {
    update_particle(particle, gbest, inertia, config, velocity_limit,
                    [&rng] { return rng.uniform01(); });
}

void compress_boundary(CVector& position, CVector& pbest_position, double inner_radius,
                       std::size_t n_tx) {
    const double outer = 1.0 / std::sqrt(static_cast<double>(n_tx));
    if (!(inner_radius >= 0.0) || inner_radius > outer * (1.0 + 1e-12))
        throw ConfigError("compress_boundary: inner radius outside [0, 1/sqrt(N)]");
    auto lift = [inner_radius](Complex& x) {
        const double mag = std::abs(x);
        if (mag < inner_radius)
            x = mag > 0.0 ? x * (inner_radius / mag) : Complex(inner_radius, 0.0);
    };
    for (Complex& x : position) {
        lift(x);
        const double mag = std::abs(x);
        if (mag > outer)
            x /= std::sqrt(static_cast<double>(n_tx)) * mag;
    }
    for (Complex& x : pbest_position)
        lift(x);
}

TraceEntry step_swarm(SwarmState& state, Rng& rng, const SwarmConfig& config,
                      const Fitness& fitness, SearchSpace space, const SwarmOptions& options) {
    const std::size_t t = state.iteration + 1;
    const std::size_t n_tx = static_cast<std::size_t>(state.gbest_position.size());
    const double vmax = config.velocity_limit(n_tx);
    state.inertia = inertia_at(t, config);
    state.inner_radius = space == SearchSpace::RelaxedDisk
                             ? inner_radius_at(t, config.n_iterations, n_tx)
                             : 1.0 / std::sqrt(static_cast<double>(n_tx));

    // All particles move against the gbest of the previous sweep.
    for (Particle& p : state.particles) {
        update_particle(p, state.gbest_position, state.inertia, rng, config, vmax);
        if (space == SearchSpace::RelaxedDisk)
            compress_boundary(p.position, p.pbest_position, state.inner_radius, n_tx);
        else
            project_to_constant_modulus(p.position);
    }

    std::vector<double> values;
    evaluate_all(state.particles, values, fitness, options);
    for (std::size_t i = 0; i < values.size(); ++i) {
        Particle& p = state.particles[i];
        if (values[i] > p.pbest_fitness) {
            p.pbest_fitness = values[i];
            p.pbest_position = p.position;
        }
    }
    refresh_gbest(state);
    state.iteration = t;
    return {t, state.gbest_fitness, state.inner_radius, state.inertia};
}

SwarmRun run_swarm(Rng& rng, const Fitness& fitness, std::size_t n_tx, const SwarmConfig& config,
                   SearchSpace space, const SwarmOptions& options) {
    SwarmRun run{init_swarm(rng, config, n_tx, fitness, space, options), {}};
    run.trace.reserve(config.n_iterations);
    for (std::size_t t = 0; t < config.n_iterations; ++t)
        run.trace.push_back(step_swarm(run.state, rng, config, fitness, space, options));
    return run;
}

namespace {

BeamSearchResult search_beam(Rng& rng, std::span<const CMatrix> channels,
                             const SystemConfig& system, const SwarmConfig& swarm,
                             SearchSpace space, const SwarmOptions& options) {
    system.validate();
    const Fitness fitness = [&](const CVector& w) { return reduced_rate(w, channels, system); };
    SwarmRun run = run_swarm(rng, fitness, system.n_tx, swarm, space, options);

    // Candidates are pushed onto the CM set (a rounding-level change for
    // the final pbests) and re-evaluated, so the reported rate is that of
    // the returned beam.
    std::vector<CVector> candidates;
    candidates.reserve(run.state.particles.size() + 1);
    candidates.push_back(run.state.gbest_position);
    for (const Particle& p : run.state.particles)
        candidates.push_back(p.pbest_position);
    for (CVector& c : candidates)
        project_to_constant_modulus(c);

    std::vector<double> values(candidates.size());
    parallel_for(candidates.size(), options.threads,
                 [&](std::size_t i) { values[i] = fitness(candidates[i]); });
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best])
            best = i;

    const TxBeam beam(std::move(candidates[best]), BeamMode::ExactCM);
    return {reduced_objective(beam, channels, system), std::move(run.trace)};
}

double relative_improvement(double prev, double next) {
    if (next == prev)
        return 0.0;
    if (std::isinf(prev) || prev == 0.0)
        return std::numeric_limits<double>::infinity();
    return (next - prev) / std::abs(prev);
}

} // namespace

BeamSearchResult run_bcpso(Rng& rng, std::span<const CMatrix> channels,
                           const SystemConfig& system, const SwarmConfig& swarm,
                           const SwarmOptions& options) {
    return search_beam(rng, channels, system, swarm, SearchSpace::RelaxedDisk, options);
}

BeamSearchResult run_plain_pso(Rng& rng, std::span<const CMatrix> channels,
                               const SystemConfig& system, const SwarmConfig& swarm,
                               const SwarmOptions& options) {
    return search_beam(rng, channels, system, swarm, SearchSpace::ConstantModulus, options);
}

std::size_t convergence_iteration(std::span<const double> trace, double rel_tol,
                                  std::size_t window) {
    const std::size_t total = trace.size();
    if (total == 0)
        throw ConfigError("convergence_iteration: empty trace");
    for (std::size_t t = 1; t + window <= total; ++t) {
        bool settled = true;
        // improvement into iteration i (1-based) is trace[i-1] - trace[i-2]
        for (std::size_t i = t + 1; i <= t + window && settled; ++i)
            settled = relative_improvement(trace[i - 2], trace[i - 1]) < rel_tol;
        if (settled)
            return t;
    }
    return total;
}

std::size_t convergence_iteration(std::span<const TraceEntry> trace, double rel_tol,
                                  std::size_t window) {
    std::vector<double> values;
    values.reserve(trace.size());
    for (const TraceEntry& e : trace)
        values.push_back(e.gbest_fitness);
    return convergence_iteration(values, rel_tol, window);
}

void write_trace_csv(std::ostream& out, std::span<const TraceEntry> trace) {
    out << "iteration,gbest_fitness,inner_radius,inertia\n";
    for (const TraceEntry& e : trace)
        out << e.iteration << ',' << format_double(e.gbest_fitness) << ','
            << format_double(e.inner_radius) << ',' << format_double(e.inertia) << '\n';
}

} // namespace mmnoma
