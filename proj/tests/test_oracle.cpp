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

#include "mmnoma/channel.hpp"
#include "mmnoma/oracle.hpp"

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

TEST_SUITE("grid_power_search") {
    TEST_CASE("single user") {
        const std::vector<double> g{3.0};
        const auto best = oracle::grid_power_search(decoding_order(g),
                                                    RateTargets::from_min_rates(std::vector<double>{1.0}), 5.0, 1.0);
        REQUIRE(best.has_value());
        CHECK(best->powers() == std::vector<double>{5.0});
    }

    TEST_CASE("two-user optimum lies within one grid step of the closed form") {
        const std::vector<double> g{10.0, 1.0};
        const auto targets = RateTargets::from_min_rates(std::vector<double>{0.0, 1.0});
        for (std::size_t points : {200u, 2001u}) {
            const auto best = oracle::grid_power_search(decoding_order(g), targets, 10.0, 1.0, points);
            REQUIRE(best.has_value());
            const double step = 10.0 / static_cast<double>(points - 1);
            CHECK(std::abs(best->power_at(1) - 5.5) <= step);
            const auto closed = allocate(decoding_order(g), targets, 10.0, 1.0);
            CHECK(sum_rate(*best, 1.0) <= sum_rate(*closed, 1.0) + 1e-12);
        }
    }

    TEST_CASE("three users never beat the closed form") {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> expo(-1.0, 2.0);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> g{std::pow(10.0, expo(gen)), std::pow(10.0, expo(gen)),
                                  std::pow(10.0, expo(gen))};
            const auto order = decoding_order(g);
            const auto targets = RateTargets::from_min_rates(std::vector<double>{0.5, 0.5, 0.5});
            const auto closed = allocate(order, targets, 100.0, 1.0);
            const auto grid = oracle::grid_power_search(order, targets, 100.0, 1.0, 120);
            if (!closed) {
                CHECK_FALSE(grid.has_value());
                continue;
            }
            if (grid)
                CHECK(sum_rate(*grid, 1.0) <= sum_rate(*closed, 1.0) + 1e-9);
        }
    }

    TEST_CASE("empty when no grid point is feasible") {
        const std::vector<double> g{1.0, 1.0};
        CHECK_FALSE(oracle::grid_power_search(decoding_order(g),
                                              RateTargets::from_min_rates(std::vector<double>{0.0, 10.0}), 1.0, 1.0)
                        .has_value());
    }

    TEST_CASE("more than four users is rejected") {
        const std::vector<double> g{5.0, 4.0, 3.0, 2.0, 1.0};
        CHECK_THROWS(oracle::grid_power_search(
            decoding_order(g), RateTargets::from_min_rates(std::vector<double>{0.1, 0.1, 0.1, 0.1, 0.1}), 1.0, 1.0, 4));
    }
}

TEST_SUITE("exhaustive_phase_tx") {
    TEST_CASE("one antenna has a single candidate") {
        Rng rng(1);
        const std::vector<CMatrix> channels{random_matrix(rng, 2, 1)};
        const auto cfg = config_for(1, 2, {0.5}, 10.0);
        const auto best = oracle::exhaustive_phase_tx(channels, cfg, 16);
        REQUIRE(best.feasible());
        const TxBeam w(CVector::Ones(1), BeamMode::ExactCM);
        CHECK(best->sum_rate == reduced_objective(w, channels, cfg)->sum_rate);
    }

    TEST_CASE("single path lands within the quantization bound") {
        const std::size_t n = 4, m = 2;
        const PathParams path{Complex(0.4, 0.5), -0.45, 0.3};
        const std::vector<CMatrix> channels{synth_channel(std::span(&path, 1), n, m)};
        const auto cfg = config_for(n, m, {0.5}, 20.0);
        const double snr = m * n * std::norm(path.coeff) * cfg.total_power;
        const double q = 32.0;
        const auto best = oracle::exhaustive_phase_tx(channels, cfg, 32);
        REQUIRE(best.feasible());
        const double floor = std::log2(1.0 + std::pow(std::cos(std::numbers::pi / q), 2) * snr);
        CHECK(best->sum_rate >= floor);
        CHECK(best->sum_rate <= std::log2(1.0 + snr) + 1e-12);
        CHECK(best->tx.mode() == BeamMode::ExactCM);
        CHECK(std::arg(best->tx.entries()[0]) == 0.0);
    }

    TEST_CASE("finer phase grid never loses") {
        Rng rng(7);
        for (int trial = 0; trial < 3; ++trial) {
            const std::vector<CMatrix> channels{random_matrix(rng, 2, 3), random_matrix(rng, 2, 3)};
            const auto cfg = config_for(3, 2, {0.5, 0.5}, 20.0);
            const auto coarse = oracle::exhaustive_phase_tx(channels, cfg, 16);
            const auto fine = oracle::exhaustive_phase_tx(channels, cfg, 32);
            REQUIRE(coarse.feasible());
            REQUIRE(fine.feasible());
            CHECK(fine->sum_rate >= coarse->sum_rate);
        }
    }

    TEST_CASE("threaded enumeration returns the same beam") {
        Rng rng(8);
        const std::vector<CMatrix> channels{random_matrix(rng, 2, 4), random_matrix(rng, 2, 4)};
        const auto cfg = config_for(4, 2, {0.5, 0.5}, 20.0);
        const auto serial = oracle::exhaustive_phase_tx(channels, cfg, 8, 1);
        const auto threaded = oracle::exhaustive_phase_tx(channels, cfg, 8, 3);
        REQUIRE(serial.feasible());
        CHECK(serial->tx.entries() == threaded->tx.entries());
    }

    TEST_CASE("budget guard") {
        Rng rng(1);
        const std::vector<CMatrix> channels{random_matrix(rng, 1, 8)};
        const auto cfg = config_for(8, 1, {0.5}, 10.0);
        CHECK_THROWS_AS(oracle::exhaustive_phase_tx(channels, cfg, 16), ConfigError);
    }
}

TEST_SUITE("random_rx_sampling") {
    TEST_CASE("one receive antenna: every sample is the same") {
        Rng rng(2);
        const CMatrix h = random_matrix(rng, 1, 4);
        const TxBeam w = TxBeam::from_phases(std::vector<double>{0.0, 1.0, 2.0, 3.0});
        const double closed = optimal_rx_gain(h, w.entries());
        CHECK(oracle::random_rx_sampling(h, w, 50, rng) == doctest::Approx(closed).epsilon(1e-14));
    }

    TEST_CASE("two receive antennas: dense sampling approaches the closed form") {
        Rng rng(3);
        const CMatrix h = random_matrix(rng, 2, 4);
        const TxBeam w = TxBeam::from_phases(std::vector<double>{0.0, -1.0, 0.5, 2.5});
        const double closed = optimal_rx_gain(h, w.entries());
        const double sampled = oracle::random_rx_sampling(h, w, 100000, rng);
        CHECK(sampled <= closed * (1.0 + 1e-12));
        CHECK(sampled >= 0.99 * closed);
    }

    TEST_CASE("deterministic for a seed") {
        Rng a(4), b(4), ch(5);
        const CMatrix h = random_matrix(ch, 3, 2);
        const TxBeam w = TxBeam::from_phases(std::vector<double>{0.0, 1.0});
        CHECK(oracle::random_rx_sampling(h, w, 100, a) == oracle::random_rx_sampling(h, w, 100, b));
    }
}
