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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mmnoma/rng.hpp"
#include "mmnoma/rx_beamforming.hpp"
#include "support/reference.hpp"

#include <cmath>
#include <numbers>

using namespace mmnoma;

namespace {

CMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    CMatrix h(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        for (Eigen::Index j = 0; j < h.cols(); ++j)
            h(i, j) = rng.complex_normal(1.0);
    return h;
}

TxBeam random_tx(Rng& rng, std::size_t n) {
    std::vector<double> phases(n);
    for (double& p : phases)
        p = rng.uniform(-std::numbers::pi, std::numbers::pi);
    return TxBeam::from_phases(phases);
}

testing::Dense dense(const CMatrix& h) {
    testing::Dense d(static_cast<std::size_t>(h.rows()));
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        for (Eigen::Index j = 0; j < h.cols(); ++j)
            d[static_cast<std::size_t>(i)].push_back(h(i, j));
    return d;
}

std::vector<testing::cd> to_std(const CVector& v) {
    return {v.data(), v.data() + v.size()};
}

SystemConfig config_for(std::size_t n, std::size_t m, std::vector<double> rates, double p_db) {
    SystemConfig cfg;
    cfg.n_tx = n;
    cfg.n_rx = m;
    cfg.n_users = rates.size();
    cfg.total_power = db_to_linear(p_db);
    cfg.noise_power = 1.0;
    cfg.min_rates = std::move(rates);
    return cfg;
}

} // namespace

TEST_SUITE("optimal_rx") {
    TEST_CASE("real entries of opposite sign") {
        CMatrix h(2, 1);
        h << 2.0, -3.0;
        const TxBeam w(CVector::Ones(1), BeamMode::ExactCM);
        const RxBeam u = optimal_rx(h, w);
        const double s = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(u.entries()[0] - Complex(s, 0.0)) < 1e-15);
        CHECK(std::abs(u.entries()[1] - Complex(-s, 0.0)) < 1e-15);
        CHECK(effective_gain(u, h, w) == doctest::Approx(12.5).epsilon(1e-14));
        CHECK(optimal_rx_gain(h, w.entries()) == doctest::Approx(12.5).epsilon(1e-14));
    }

    TEST_CASE("common phase is copied") {
        const double phi = 0.7;
        CMatrix h(3, 1);
        h << std::polar(1.0, phi), std::polar(2.0, phi), std::polar(0.5, phi);
        const TxBeam w(CVector::Ones(1), BeamMode::ExactCM);
        const RxBeam u = optimal_rx(h, w);
        for (Eigen::Index m = 0; m < 3; ++m)
            CHECK(std::abs(u.entries()[m] - std::polar(1.0 / std::sqrt(3.0), phi)) < 1e-15);
    }

    TEST_CASE("zero entries and null products") {
        CMatrix h(2, 1);
        h << 0.0, Complex(0.0, 2.0);
        const TxBeam w(CVector::Ones(1), BeamMode::ExactCM);
        const RxBeam u = optimal_rx(h, w);
        CHECK(std::abs(u.entries()[0] - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
        CHECK(effective_gain(u, h, w) == doctest::Approx(2.0));

        const CMatrix zero = CMatrix::Zero(2, 1);
        const RxBeam z = optimal_rx(zero, w);
        CHECK(z.entries().isApprox(RxBeam::uniform(2).entries()));
        CHECK(effective_gain(z, zero, w) == 0.0);
    }

    TEST_CASE("dominates random receive beams and equals the l1 form") {
        Rng rng(5);
        const auto h = random_matrix(rng, 4, 8);
        const TxBeam w = random_tx(rng, 8);
        const RxBeam u = optimal_rx(h, w);
        const double best = testing::brute_triple_product(to_std(u.entries()), dense(h),
                                                          to_std(w.entries()));
        const CVector hw = h * w.entries();
        double l1 = 0.0;
        for (Eigen::Index m = 0; m < hw.size(); ++m)
            l1 += std::abs(hw[m]);
        CHECK(best == doctest::Approx(l1 * l1 / 4.0).epsilon(1e-10));

        double sampled = 0.0;
        for (int s = 0; s < 10000; ++s) {
            std::vector<double> phases(4);
            for (double& p : phases)
                p = rng.uniform(-std::numbers::pi, std::numbers::pi);
            const RxBeam v = RxBeam::from_phases(phases);
            sampled = std::max(sampled, testing::brute_triple_product(to_std(v.entries()),
                                                                      dense(h), to_std(w.entries())));
        }
        CHECK(best >= sampled);
        CHECK(sampled > 0.9 * best);  // sampler is not degenerate
    }

    TEST_CASE("dimension mismatch names the operand") {
        const CMatrix h = CMatrix::Ones(2, 3);
        const TxBeam w(CVector::Constant(2, 1.0 / std::sqrt(2.0)), BeamMode::ExactCM);
        try {
            (void)optimal_rx(h, w);
            FAIL("expected DimensionError");
        } catch (const DimensionError& e) {
            CHECK(e.operand() == "w");
        }
    }
}

TEST_SUITE("reduced_objective") {
    TEST_CASE("single user uses the full budget") {
        Rng rng(8);
        const std::vector<CMatrix> channels{random_matrix(rng, 2, 4)};
        const TxBeam w = random_tx(rng, 4);
        const auto cfg = config_for(4, 2, {1.0}, 20.0);
        const auto sol = reduced_objective(w, channels, cfg);
        REQUIRE(sol.feasible());
        const double g = optimal_rx_gain(channels[0], w.entries());
        CHECK(sol->sum_rate == doctest::Approx(std::log2(1.0 + g * cfg.total_power)).epsilon(1e-12));
    }

    TEST_CASE("closed-form sum rate agrees with the assembled solution") {
        Rng rng(13);
        int feasible = 0;
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<CMatrix> channels;
            for (int k = 0; k < 3; ++k)
                channels.push_back(random_matrix(rng, 2, 4) * std::pow(0.5, k));
            const TxBeam w = random_tx(rng, 4);
            const auto cfg = config_for(4, 2, {0.5, 0.5, 0.5}, 30.0);
            const auto sol = reduced_objective(w, channels, cfg);
            if (!sol)
                continue;
            ++feasible;
            // Rebuild the gains from the returned Rx beams and recompute rates independently.
            std::vector<double> gains, powers;
            for (std::size_t pos = 0; pos < 3; ++pos) {
                const std::size_t user = sol->order.permutation[pos];
                gains.push_back(testing::brute_triple_product(
                    to_std(sol->rx[user].entries()), dense(channels[user]), to_std(w.entries())));
                powers.push_back(sol->power.power_at(pos));
            }
            CHECK(std::abs(sol->sum_rate - testing::reference_sum_rate(gains, powers, 1.0)) <= 1e-9);
            CHECK(std::abs(sol->sum_rate - sum_rate(sol->power, 1.0)) <= 1e-9);
            CHECK(reduced_rate(w.entries(), channels, cfg) == sol->sum_rate);
        }
        CHECK(feasible > 10);
    }

    TEST_CASE("huge targets are infeasible") {
        Rng rng(2);
        const std::vector<CMatrix> channels{random_matrix(rng, 2, 4), random_matrix(rng, 2, 4)};
        const TxBeam w = random_tx(rng, 4);
        const auto cfg = config_for(4, 2, {1.0, 40.0}, 20.0);
        CHECK_FALSE(reduced_objective(w, channels, cfg).feasible());
        CHECK(reduced_rate(w.entries(), channels, cfg) == kInfeasibleFitness);
    }

    TEST_CASE("relaxed beams are accepted") {
        Rng rng(3);
        const std::vector<CMatrix> channels{random_matrix(rng, 2, 4)};
        const TxBeam w(CVector::Constant(4, Complex(0.2, 0.1)), BeamMode::Relaxed);
        CHECK(reduced_objective(w, channels, config_for(4, 2, {0.1}, 20.0)).feasible());
    }

    TEST_CASE("invariant under a global phase rotation") {
        Rng rng(21);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<CMatrix> channels{random_matrix(rng, 2, 4), random_matrix(rng, 2, 4)};
            const TxBeam w = random_tx(rng, 4);
            const TxBeam rotated(w.entries() * std::polar(1.0, rng.uniform(0.0, 6.0)),
                                 BeamMode::ExactCM);
            const auto cfg = config_for(4, 2, {0.5, 0.5}, 25.0);
            const double a = reduced_rate(w.entries(), channels, cfg);
            const double b = reduced_rate(rotated.entries(), channels, cfg);
            if (std::isinf(a))
                CHECK(std::isinf(b));
            else
                CHECK(b == doctest::Approx(a).epsilon(1e-12));
        }
    }
}

TEST_CASE("a user's rate does not decrease with its own gain") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> bump(1.0, 3.0), pw(0.1, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = testing::random_sorted_gains(gen, 3, true);
        const std::vector<double> p{pw(gen), pw(gen), pw(gen)};
        const auto before = testing::reference_rates(g, p, 1.0);
        for (std::size_t k = 0; k < 3; ++k) {
            auto raised = g;
            raised[k] *= bump(gen);
            CHECK(testing::reference_rates(raised, p, 1.0)[k] >= before[k]);
        }
    }
}
