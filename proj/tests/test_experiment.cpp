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

#include "mmnoma/experiment.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mmnoma;
using nlohmann::json;

namespace {

json small_doc() {
    return json::parse(R"({
      "sweep": {"variable": "power_db", "values": [15, 25]},
      "system": {"n_tx": 4, "n_rx": 2, "n_users": 2, "min_rate": 0.5},
      "channel": {"model": "LOS"},
      "swarm": {"n_particles": 12, "n_iterations": 8},
      "n_realizations": 3,
      "master_seed": 4,
      "baselines": ["oma", "plain_pso"]
    })");
}

// Drops the trailing wall_seconds column from every line.
std::string without_wall_clock(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line))
        out += line.substr(0, line.rfind(',')) + '\n';
    return out;
}

std::string csv_of(const ExperimentSpec& spec, const ExperimentResult& result) {
    std::ostringstream out;
    write_csv(out, result.rows, spec.max_users());
    return out.str();
}

std::size_t count_fields(const std::string& line) {
    return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

} // namespace

TEST_SUITE("spec parsing") {
    TEST_CASE("fields and defaults") {
        const ExperimentSpec spec = spec_from_json(small_doc());
        CHECK(spec.sweep == SweepVariable::PowerDb);
        CHECK(spec.grid == std::vector<double>{15.0, 25.0});
        CHECK(spec.n_tx == 4);
        CHECK(spec.swarm.n_particles == 12);
        CHECK(spec.swarm.cognitive == 1.4);
        CHECK(spec.oma);
        CHECK(spec.plain_pso);
        CHECK_FALSE(spec.oracle);
        const SystemConfig sys = spec.system_at(25.0);
        CHECK(sys.total_power == doctest::Approx(std::pow(10.0, 2.5)));
        CHECK(sys.min_rates == std::vector<double>{0.5, 0.5});
    }

    TEST_CASE("sweep variables map onto the system") {
        ExperimentSpec spec = spec_from_json(small_doc());
        spec.sweep = SweepVariable::NUsers;
        CHECK(spec.system_at(3.0).n_users == 3);
        spec.sweep = SweepVariable::NTx;
        CHECK(spec.system_at(8.0).n_tx == 8);
        spec.sweep = SweepVariable::MinRate;
        CHECK(spec.system_at(1.25).min_rates == std::vector<double>{1.25, 1.25});
        spec.sweep = SweepVariable::PowerDb;
        spec.power_per_user = true;
        CHECK(spec.system_at(10.0).total_power == doctest::Approx(20.0));
    }

    TEST_CASE("json round trip") {
        const ExperimentSpec spec = spec_from_json(small_doc());
        const ExperimentSpec again = spec_from_json(to_json(spec));
        CHECK(to_json(again) == to_json(spec));
    }

    TEST_CASE("invalid specs are rejected") {
        json doc = small_doc();
        doc["sweep"]["values"] = json::array();
        CHECK_THROWS_AS(spec_from_json(doc), ConfigError);

        doc = small_doc();
        doc["n_realizations"] = 0;
        CHECK_THROWS_AS(spec_from_json(doc), ConfigError);

        doc = small_doc();
        doc["baselines"] = {"oracle"};
        doc["system"]["n_tx"] = 8;
        CHECK_THROWS_AS(spec_from_json(doc), ConfigError);

        doc = small_doc();
        doc["baselines"] = {"exhaustive"};
        CHECK_THROWS_AS(spec_from_json(doc), ConfigError);

        doc = small_doc();
        doc["sweep"]["variable"] = "bandwidth";
        CHECK_THROWS(spec_from_json(doc));

        doc = small_doc();
        doc["channel"]["model"] = "rician";
        CHECK_THROWS(spec_from_json(doc));

        CHECK_THROWS_WITH(load_spec("/nonexistent/spec.json"),
                          doctest::Contains("/nonexistent/spec.json"));
    }
}

TEST_SUITE("csv") {
    TEST_CASE("empty rows give the header only") {
        std::ostringstream out;
        write_csv(out, {}, 2);
        CHECK(out.str() ==
              "sweep_value,bcpso_mean,bcpso_min,bcpso_max,oma_mean,oma_min,oma_max,pso_mean,"
              "pso_min,pso_max,oracle_mean,oracle_min,oracle_max,user1_power,user1_gain,"
              "user2_power,user2_gain,feasible_fraction,wall_seconds\n");
        CHECK(csv_header(2).size() == 19);
    }

    TEST_CASE("every line matches the header width") {
        const ExperimentSpec spec = spec_from_json(small_doc());
        const auto result = run_experiment(spec, {1});
        std::istringstream in(csv_of(spec, result));
        std::string line;
        std::size_t lines = 0;
        while (std::getline(in, line)) {
            CHECK(count_fields(line) == csv_header(spec.max_users()).size());
            ++lines;
        }
        CHECK(lines == 1 + spec.grid.size());
    }

    TEST_CASE("emit_csv reports the path on failure") {
        try {
            emit_csv("/nonexistent/dir/out.csv", {}, 1);
            FAIL("expected an error");
        } catch (const std::exception& e) {
            CHECK(std::string(e.what()).find("/nonexistent/dir/out.csv") != std::string::npos);
        }
    }
}

TEST_SUITE("runs") {
    TEST_CASE("rerun gives identical bytes apart from wall clock") {
        ExperimentSpec spec = spec_from_json(small_doc());
        spec.n_realizations = 1;
        const auto a = run_experiment(spec, {1});
        const auto b = run_experiment(spec, {3});
        CHECK(without_wall_clock(csv_of(spec, a)) == without_wall_clock(csv_of(spec, b)));
        CHECK(records_to_json(spec, a)["records"] == records_to_json(spec, b)["records"]);
    }

    TEST_CASE("aggregates agree with the raw records") {
        const ExperimentSpec spec = spec_from_json(small_doc());
        const auto result = run_experiment(spec, {1});
        REQUIRE(result.rows.size() == 2);
        REQUIRE(result.records.size() == 6);
        for (std::size_t g = 0; g < 2; ++g) {
            const ResultRow& row = result.rows[g];
            double sum = 0.0, oma = 0.0;
            std::size_t n = 0;
            for (const auto& rec : result.records) {
                if (rec.grid_index != g || !rec.feasible)
                    continue;
                sum += rec.bcpso;
                oma += rec.oma;
                ++n;
            }
            REQUIRE(n > 0);
            CHECK(std::abs(row.bcpso.mean - sum / static_cast<double>(n)) <= 1e-12);
            CHECK(std::abs(row.oma->mean - oma / static_cast<double>(n)) <= 1e-12);
            CHECK(row.bcpso.count == n);
            CHECK(row.feasible_fraction == doctest::Approx(static_cast<double>(n) / 3.0));
            for (const MethodStats& s : {row.bcpso, *row.oma, *row.plain_pso}) {
                CHECK(s.min <= s.mean);
                CHECK(s.mean <= s.max);
            }
            CHECK_FALSE(row.oracle.has_value());
        }
    }

    TEST_CASE("grid points of a power sweep share their channels") {
        const ExperimentSpec spec = spec_from_json(small_doc());
        const auto result = run_experiment(spec, {1});
        for (std::size_t r = 0; r < 3; ++r) {
            const auto& low = result.records[r];
            const auto& high = result.records[3 + r];
            CHECK(low.channel_seed == high.channel_seed);
            CHECK(low.channels[0].matrix == high.channels[0].matrix);
            CHECK(low.swarm_seed != high.swarm_seed);
        }
    }

    TEST_CASE("users are labeled by channel strength") {
        const ExperimentSpec spec = spec_from_json(small_doc());
        for (std::size_t r = 0; r < 5; ++r) {
            const auto users = draw_channels(spec, 4, 3, r);
            CHECK(users[0].matrix.squaredNorm() >= users[1].matrix.squaredNorm());
            CHECK(users[1].matrix.squaredNorm() >= users[2].matrix.squaredNorm());
        }
    }

    TEST_CASE("pinned distances are used as given") {
        json doc = small_doc();
        doc["channel"]["user_distances"] = {50.0, 200.0};
        const ExperimentSpec spec = spec_from_json(doc);
        const auto users = draw_channels(spec, 4, 2, 0);
        std::vector<double> d{users[0].distance_m, users[1].distance_m};
        std::sort(d.begin(), d.end());
        CHECK(d == std::vector<double>{50.0, 200.0});
    }

    TEST_CASE("replay reproduces a stored run and notices tampering") {
        const ExperimentSpec spec = spec_from_json(small_doc());
        const auto result = run_experiment(spec, {1});
        json doc = records_to_json(spec, result);
        const auto report = replay(json::parse(doc.dump()), {1});
        CHECK(report.identical);
        CHECK(report.records_checked == 6);

        doc["records"][1]["bcpso"] = 123.0;
        const auto tampered = replay(doc, {1});
        CHECK_FALSE(tampered.identical);
        CHECK_FALSE(tampered.mismatches.empty());
    }

    TEST_CASE("emitted files land where asked") {
        const ExperimentSpec spec = spec_from_json(small_doc());
        const auto result = run_experiment(spec, {1});
        const auto dir = std::filesystem::temp_directory_path() / "mmnoma_test_experiment";
        std::filesystem::create_directories(dir);
        emit_csv(dir / "a.csv", result.rows, spec.max_users());
        emit_json(dir / "a.records.json", spec, result);
        std::ifstream in(dir / "a.records.json");
        const json doc = json::parse(in);
        CHECK(doc["format"] == "mmnoma-records/1");
        CHECK(doc["records"].size() == 6);
        std::filesystem::remove_all(dir);
    }
}

TEST_CASE("raising the rate target moves power to the weakest user") {
    const ExperimentSpec spec = spec_from_json(json::parse(R"({
      "sweep": {"variable": "min_rate", "values": [0.5, 1.0, 1.5, 2.0]},
      "system": {"n_tx": 8, "n_rx": 2, "n_users": 3, "power_db": 30},
      "channel": {"model": "LOS", "user_distances": [50, 150, 300]},
      "swarm": {"n_particles": 30, "n_iterations": 20},
      "n_realizations": 20,
      "master_seed": 6,
      "baselines": []
    })"));
    const auto result = run_experiment(spec, {1});
    for (std::size_t g = 1; g < result.rows.size(); ++g) {
        INFO("r = " << result.rows[g].sweep_value);
        CHECK(result.rows[g].mean_power[2] >= result.rows[g - 1].mean_power[2]);
    }
}

TEST_CASE("oracle_check on a tiny spec") {
    json doc = small_doc();
    doc["baselines"] = {"oracle"};
    doc["oracle_phases"] = 8;
    doc["swarm"] = json::object();
    const auto lines = oracle_check(spec_from_json(doc), {1});
    REQUIRE(lines.size() == 3);
    for (const auto& line : lines) {
        INFO(line.name << ": " << line.detail);
        CHECK(line.passed);
    }
}
