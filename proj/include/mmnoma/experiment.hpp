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

#include "mmnoma/channel.hpp"
#include "mmnoma/swarm.hpp"
#include "mmnoma/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mmnoma {

enum class SweepVariable { PowerDb, MinRate, NUsers, NTx };

std::string_view to_string(SweepVariable variable) noexcept;
SweepVariable parse_sweep_variable(std::string_view text);

/// Monte-Carlo experiment description. Everything that influences the
/// output bytes (except wall-clock columns) lives here.
struct ExperimentSpec {
    SweepVariable sweep = SweepVariable::PowerDb;
    std::vector<double> grid;

    std::size_t n_tx = 16;
    std::size_t n_rx = 4;
    std::size_t n_users = 3;
    double power_db = 30.0;       // P / sigma^2 in dB
    bool power_per_user = false;  // when set, power_db is P / (K sigma^2)
    double noise_power = 1.0;
    double min_rate = 1.5;           // used for every user unless min_rates is set
    std::vector<double> min_rates;   // optional per-user override

    ChannelModel channel_model = ChannelModel::Los;
    ChannelParams channel;
    std::vector<double> user_distances;  // optional pinned distances (m), one per user

    std::size_t n_realizations = 100;
    std::uint64_t master_seed = 1;
    SwarmConfig swarm;

    bool oma = true;
    bool plain_pso = false;
    bool oracle = false;
    std::size_t oracle_phases = 16;

    void validate() const;

    // System configuration at one grid point.
    SystemConfig system_at(double sweep_value) const;
    std::size_t max_users() const;
};

ExperimentSpec spec_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentSpec& spec);
ExperimentSpec load_spec(const std::filesystem::path& path);

struct MethodStats {
    double mean = std::numeric_limits<double>::quiet_NaN();
    double min = std::numeric_limits<double>::quiet_NaN();
    double max = std::numeric_limits<double>::quiet_NaN();
    std::size_t count = 0;
};

/// Aggregates over one grid point. Per-user vectors are indexed by the
/// channel-strength label (user 0 has the largest ||H||_F).
struct ResultRow {
    double sweep_value = 0.0;
    MethodStats bcpso;
    std::optional<MethodStats> oma;
    std::optional<MethodStats> plain_pso;
    std::optional<MethodStats> oracle;
    std::vector<double> mean_power;
    std::vector<double> mean_gain;
    double feasible_fraction = 0.0;
    double wall_seconds = 0.0;
};

/// One Monte-Carlo draw with everything needed to reproduce it. Rates are
/// NaN where a method was not run or was infeasible.
struct RealizationRecord {
    std::size_t grid_index = 0;
    double sweep_value = 0.0;
    std::size_t realization = 0;
    std::uint64_t channel_seed = 0;
    std::uint64_t swarm_seed = 0;
    std::vector<ChannelRealization> channels;
    bool feasible = false;
    std::string infeasible_reason;
    double bcpso = std::numeric_limits<double>::quiet_NaN();
    double oma = std::numeric_limits<double>::quiet_NaN();
    double plain_pso = std::numeric_limits<double>::quiet_NaN();
    double oracle = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> powers;
    std::vector<double> gains;
    std::vector<double> tx_phases;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<RealizationRecord> records;  // grid-major, realization-minor
};

struct RunOptions {
    std::size_t threads = 0;  // 0: one per hardware thread
};

/// Draws the channels of one realization (users labeled by descending
/// ||H||_F). Depends on (master_seed, realization) only, so every grid point
/// of a power or rate sweep sees the same channels.
std::vector<ChannelRealization> draw_channels(const ExperimentSpec& spec, std::size_t n_tx,
                                              std::size_t n_users, std::size_t realization);

RealizationRecord run_realization(const ExperimentSpec& spec, std::size_t grid_index,
                                  std::size_t realization);

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

/// Means/min/max from raw records, in record order.
ResultRow aggregate(const ExperimentSpec& spec, std::size_t grid_index,
                    std::span<const RealizationRecord> records);

std::vector<std::string> csv_header(std::size_t max_users);
void write_csv(std::ostream& out, std::span<const ResultRow> rows, std::size_t max_users);
void emit_csv(const std::filesystem::path& path, std::span<const ResultRow> rows,
              std::size_t max_users);

nlohmann::json records_to_json(const ExperimentSpec& spec, const ExperimentResult& result);
void emit_json(const std::filesystem::path& path, const ExperimentSpec& spec,
               const ExperimentResult& result);

struct ReplayReport {
    bool identical = true;
    std::size_t records_checked = 0;
    std::vector<std::string> mismatches;
};

/// Re-runs the experiment stored in a records document and compares every
/// record and row (wall-clock excluded) bit for bit.
ReplayReport replay(const nlohmann::json& records_doc, const RunOptions& options = {});

struct CheckLine {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Small-N oracle comparisons on the spec's realizations: swarm vs
/// exhaustive phase search, Rx closed form vs random sampling, power closed
/// form vs grid search.
std::vector<CheckLine> oracle_check(const ExperimentSpec& spec, const RunOptions& options = {});

} // namespace mmnoma
