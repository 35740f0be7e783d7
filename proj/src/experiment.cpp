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

#include "mmnoma/experiment.hpp"

#include "mmnoma/format.hpp"
#include "mmnoma/oracle.hpp"
#include "mmnoma/parallel.hpp"
#include "mmnoma/power_alloc.hpp"
#include "mmnoma/rates.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mmnoma {

using nlohmann::json;

namespace {

// Stream ids under the master seed.
constexpr std::uint64_t kChannelStream = 1;
constexpr std::uint64_t kSwarmStream = 2;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t as_count(double value, const char* what) {
    if (!(value >= 1.0) || value != std::floor(value))
        throw ConfigError(std::string(what) + " must be a positive integer");
    return static_cast<std::size_t>(value);
}

json number_or_null(double value) {
    return std::isfinite(value) ? json(value) : json(nullptr);
}

std::size_t thread_count(const RunOptions& options) {
    return options.threads == 0 ? default_thread_count() : options.threads;
}

struct Accumulator {
    double sum = 0.0;
    MethodStats stats;

    void add(double value) {
        if (std::isnan(value))
            return;
        if (stats.count == 0) {
            stats.min = stats.max = value;
        } else {
            stats.min = std::min(stats.min, value);
            stats.max = std::max(stats.max, value);
        }
        sum += value;
        ++stats.count;
    }

    MethodStats finish() const {
        MethodStats out = stats;
        if (out.count > 0)
            out.mean = std::clamp(sum / static_cast<double>(out.count), out.min, out.max);
        return out;
    }
};

std::string cell(double value) { return format_double(value); }

} // namespace

std::string_view to_string(SweepVariable variable) noexcept {
    switch (variable) {
    case SweepVariable::PowerDb: return "power_db";
    case SweepVariable::MinRate: return "min_rate";
    case SweepVariable::NUsers: return "n_users";
    case SweepVariable::NTx: return "n_tx";
    }
    return "unknown";
}

SweepVariable parse_sweep_variable(std::string_view text) {
    for (auto v : {SweepVariable::PowerDb, SweepVariable::MinRate, SweepVariable::NUsers,
                   SweepVariable::NTx})
        if (text == to_string(v))
            return v;
    throw ConfigError("unknown sweep variable '" + std::string(text) + "'");
}

SystemConfig ExperimentSpec::system_at(double sweep_value) const {
    SystemConfig cfg;
    cfg.n_tx = n_tx;
    cfg.n_rx = n_rx;
    cfg.n_users = n_users;
    double db = power_db;
    switch (sweep) {
    case SweepVariable::PowerDb: db = sweep_value; break;
    case SweepVariable::NUsers: cfg.n_users = as_count(sweep_value, "n_users grid value"); break;
    case SweepVariable::NTx: cfg.n_tx = as_count(sweep_value, "n_tx grid value"); break;
    case SweepVariable::MinRate: break;
    }
    cfg.noise_power = noise_power;
    cfg.total_power = noise_power * db_to_linear(db) *
                      (power_per_user ? static_cast<double>(cfg.n_users) : 1.0);
    if (sweep == SweepVariable::MinRate)
        cfg.min_rates.assign(cfg.n_users, sweep_value);
    else if (!min_rates.empty() && sweep != SweepVariable::NUsers)
        cfg.min_rates = min_rates;
    else
        cfg.min_rates.assign(cfg.n_users, min_rate);
    return cfg;
}

std::size_t ExperimentSpec::max_users() const {
    if (sweep != SweepVariable::NUsers)
        return n_users;
    std::size_t k = 0;
    for (double v : grid)
        k = std::max(k, as_count(v, "n_users grid value"));
    return k;
}

void ExperimentSpec::validate() const {
    if (grid.empty())
        throw ConfigError("experiment: sweep grid is empty");
    if (n_realizations < 1)
        throw ConfigError("experiment: n_realizations must be >= 1");
    swarm.validate();
    if (!min_rates.empty() && sweep == SweepVariable::NUsers)
        throw ConfigError("experiment: per-user min_rates cannot be combined with an n_users sweep");
    if (!user_distances.empty()) {
        if (user_distances.size() < max_users())
            throw DimensionError("user_distances", max_users(), user_distances.size());
        for (double d : user_distances)
            large_scale_gain(d, channel.path_loss_exponent);  // range check
    }
    for (double v : grid) {
        const SystemConfig cfg = system_at(v);
        cfg.validate();
        if (oracle && cfg.n_tx > 6)
            throw ConfigError("experiment: the oracle baseline needs n_tx <= 6");
    }
}

ExperimentSpec spec_from_json(const json& doc) {
    ExperimentSpec spec;
    const json& sweep = doc.at("sweep");
    spec.sweep = parse_sweep_variable(sweep.at("variable").get<std::string>());
    spec.grid = sweep.at("values").get<std::vector<double>>();

    if (doc.contains("system")) {
        const json& sys = doc["system"];
        spec.n_tx = sys.value("n_tx", spec.n_tx);
        spec.n_rx = sys.value("n_rx", spec.n_rx);
        spec.n_users = sys.value("n_users", spec.n_users);
        spec.power_db = sys.value("power_db", spec.power_db);
        spec.power_per_user = sys.value("power_per_user", spec.power_per_user);
        spec.noise_power = sys.value("noise_power", spec.noise_power);
        spec.min_rate = sys.value("min_rate", spec.min_rate);
        if (sys.contains("min_rates"))
            spec.min_rates = sys["min_rates"].get<std::vector<double>>();
    }
    if (doc.contains("channel")) {
        const json& ch = doc["channel"];
        spec.channel_model = parse_channel_model(ch.value("model", std::string("LOS")));
        spec.channel.n_paths = ch.value("n_paths", spec.channel.n_paths);
        spec.channel.path_loss_exponent =
            ch.value("path_loss_exponent", spec.channel.path_loss_exponent);
        spec.channel.nlos_attenuation_db =
            ch.value("nlos_attenuation_db", spec.channel.nlos_attenuation_db);
        if (ch.contains("user_distances"))
            spec.user_distances = ch["user_distances"].get<std::vector<double>>();
    }
    if (doc.contains("swarm")) {
        const json& sw = doc["swarm"];
        spec.swarm.n_particles = sw.value("n_particles", spec.swarm.n_particles);
        spec.swarm.n_iterations = sw.value("n_iterations", spec.swarm.n_iterations);
        spec.swarm.cognitive = sw.value("cognitive", spec.swarm.cognitive);
        spec.swarm.social = sw.value("social", spec.swarm.social);
        spec.swarm.inertia_max = sw.value("inertia_max", spec.swarm.inertia_max);
        spec.swarm.inertia_min = sw.value("inertia_min", spec.swarm.inertia_min);
        spec.swarm.velocity_clamp = sw.value("velocity_clamp", spec.swarm.velocity_clamp);
    }
    spec.n_realizations = doc.value("n_realizations", spec.n_realizations);
    spec.master_seed = doc.value("master_seed", spec.master_seed);
    if (doc.contains("baselines")) {
        spec.oma = spec.plain_pso = spec.oracle = false;
        for (const auto& name : doc["baselines"]) {
            const auto s = name.get<std::string>();
            if (s == "oma")
                spec.oma = true;
            else if (s == "plain_pso")
                spec.plain_pso = true;
            else if (s == "oracle")
                spec.oracle = true;
            else
                throw ConfigError("unknown baseline '" + s + "'");
        }
    }
    spec.oracle_phases = doc.value("oracle_phases", spec.oracle_phases);
    spec.validate();
    return spec;
}

json to_json(const ExperimentSpec& spec) {
    json baselines = json::array();
    if (spec.oma)
        baselines.push_back("oma");
    if (spec.plain_pso)
        baselines.push_back("plain_pso");
    if (spec.oracle)
        baselines.push_back("oracle");
    json system = {{"n_tx", spec.n_tx},
                   {"n_rx", spec.n_rx},
                   {"n_users", spec.n_users},
                   {"power_db", spec.power_db},
                   {"power_per_user", spec.power_per_user},
                   {"noise_power", spec.noise_power},
                   {"min_rate", spec.min_rate}};
    if (!spec.min_rates.empty())
        system["min_rates"] = spec.min_rates;
    json channel = {{"model", std::string(to_string(spec.channel_model))},
                    {"n_paths", spec.channel.n_paths},
                    {"path_loss_exponent", spec.channel.path_loss_exponent},
                    {"nlos_attenuation_db", spec.channel.nlos_attenuation_db}};
    if (!spec.user_distances.empty())
        channel["user_distances"] = spec.user_distances;
    return {{"sweep", {{"variable", std::string(to_string(spec.sweep))}, {"values", spec.grid}}},
            {"system", std::move(system)},
            {"channel", std::move(channel)},
            {"swarm",
             {{"n_particles", spec.swarm.n_particles},
              {"n_iterations", spec.swarm.n_iterations},
              {"cognitive", spec.swarm.cognitive},
              {"social", spec.swarm.social},
              {"inertia_max", spec.swarm.inertia_max},
              {"inertia_min", spec.swarm.inertia_min},
              {"velocity_clamp", spec.swarm.velocity_clamp}}},
            {"n_realizations", spec.n_realizations},
            {"master_seed", spec.master_seed},
            {"baselines", std::move(baselines)},
            {"oracle_phases", spec.oracle_phases}};
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open spec file " + path.string());
    try {
        return spec_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::vector<ChannelRealization> draw_channels(const ExperimentSpec& spec, std::size_t n_tx,
                                              std::size_t n_users, std::size_t realization) {
    const Rng stream = Rng(spec.master_seed).split(kChannelStream).split(realization);
    std::vector<ChannelRealization> users;
    users.reserve(n_users);
    for (std::size_t k = 0; k < n_users; ++k) {
        Rng rng = stream.split(k);
        const double distance = spec.user_distances.empty()
                                    ? sample_user_distance(rng, spec.channel)
                                    : spec.user_distances[k];
        users.push_back(sample_channel(spec.channel_model, rng, n_tx, spec.n_rx, distance,
                                       spec.channel));
    }
    std::stable_sort(users.begin(), users.end(),
                     [](const ChannelRealization& a, const ChannelRealization& b) {
                         return a.matrix.squaredNorm() > b.matrix.squaredNorm();
                     });
    return users;
}

RealizationRecord run_realization(const ExperimentSpec& spec, std::size_t grid_index,
                                  std::size_t realization) {
    RealizationRecord rec;
    rec.grid_index = grid_index;
    rec.sweep_value = spec.grid.at(grid_index);
    rec.realization = realization;
    const SystemConfig sys = spec.system_at(rec.sweep_value);

    rec.channels = draw_channels(spec, sys.n_tx, sys.n_users, realization);
    rec.channel_seed = Rng(spec.master_seed).split(kChannelStream).split(realization).seed();
    std::vector<CMatrix> matrices;
    matrices.reserve(rec.channels.size());
    for (const auto& ch : rec.channels)
        matrices.push_back(ch.matrix);

    const Rng swarm_stream =
        Rng(spec.master_seed).split(kSwarmStream).split(grid_index).split(realization);
    rec.swarm_seed = swarm_stream.seed();

    Rng bc_rng = swarm_stream.split(0);
    const BeamSearchResult bc = run_bcpso(bc_rng, matrices, sys, spec.swarm);
    rec.feasible = bc.best.feasible();
    if (rec.feasible) {
        const Solution& sol = bc.best.value();
        rec.bcpso = sol.sum_rate;
        rec.gains = sol.gains;
        for (std::size_t k = 0; k < sys.n_users; ++k)
            rec.powers.push_back(sol.power.power_of_user(k));
        for (const Complex& x : sol.tx.entries())
            rec.tx_phases.push_back(std::arg(x));
        if (spec.oma) {
            double oma = 0.0;
            for (double g : sol.gains)
                oma += oma_rate_from_gain(g, sys);
            rec.oma = oma;
        }
    } else {
        rec.infeasible_reason = std::string(to_string(bc.best.reason()));
    }

    if (spec.plain_pso) {
        Rng pso_rng = swarm_stream.split(1);
        const BeamSearchResult pso = run_plain_pso(pso_rng, matrices, sys, spec.swarm);
        if (pso.best)
            rec.plain_pso = pso.best->sum_rate;
    }
    if (spec.oracle) {
        const auto best = oracle::exhaustive_phase_tx(matrices, sys, spec.oracle_phases);
        if (best)
            rec.oracle = best->sum_rate;
    }
    return rec;
}

ResultRow aggregate(const ExperimentSpec& spec, std::size_t grid_index,
                    std::span<const RealizationRecord> records) {
    ResultRow row;
    row.sweep_value = spec.grid.at(grid_index);
    const std::size_t k = spec.system_at(row.sweep_value).n_users;

    Accumulator bcpso, oma, pso, orc;
    std::vector<double> power_sum(k, 0.0), gain_sum(k, 0.0);
    std::size_t feasible = 0;
    for (const RealizationRecord& rec : records) {
        if (!rec.feasible)
            continue;
        ++feasible;
        bcpso.add(rec.bcpso);
        oma.add(rec.oma);
        pso.add(rec.plain_pso);
        orc.add(rec.oracle);
        for (std::size_t u = 0; u < k; ++u) {
            power_sum[u] += rec.powers[u];
            gain_sum[u] += rec.gains[u];
        }
    }
    row.bcpso = bcpso.finish();
    if (spec.oma)
        row.oma = oma.finish();
    if (spec.plain_pso)
        row.plain_pso = pso.finish();
    if (spec.oracle)
        row.oracle = orc.finish();
    row.mean_power.assign(k, kNaN);
    row.mean_gain.assign(k, kNaN);
    if (feasible > 0)
        for (std::size_t u = 0; u < k; ++u) {
            row.mean_power[u] = power_sum[u] / static_cast<double>(feasible);
            row.mean_gain[u] = gain_sum[u] / static_cast<double>(feasible);
        }
    row.feasible_fraction =
        records.empty() ? 0.0 : static_cast<double>(feasible) / static_cast<double>(records.size());
    return row;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
    spec.validate();
    ExperimentResult result;
    const std::size_t threads = thread_count(options);
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<RealizationRecord> batch(spec.n_realizations);
        parallel_for(spec.n_realizations, threads,
                     [&](std::size_t r) { batch[r] = run_realization(spec, g, r); });
        ResultRow row = aggregate(spec, g, batch);
        row.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result.rows.push_back(std::move(row));
        std::move(batch.begin(), batch.end(), std::back_inserter(result.records));
    }
    return result;
}

std::vector<std::string> csv_header(std::size_t max_users) {
    std::vector<std::string> cols{"sweep_value"};
    for (const char* method : {"bcpso", "oma", "pso", "oracle"})
        for (const char* stat : {"mean", "min", "max"})
            cols.push_back(std::string(method) + "_" + stat);
    for (std::size_t u = 1; u <= max_users; ++u) {
        cols.push_back("user" + std::to_string(u) + "_power");
        cols.push_back("user" + std::to_string(u) + "_gain");
    }
    cols.push_back("feasible_fraction");
    cols.push_back("wall_seconds");
    return cols;
}

void write_csv(std::ostream& out, std::span<const ResultRow> rows, std::size_t max_users) {
    const auto header = csv_header(max_users);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << '\n';
    auto stats = [&out](const std::optional<MethodStats>& s) {
        if (s)
            out << ',' << cell(s->mean) << ',' << cell(s->min) << ',' << cell(s->max);
        else
            out << ",,,";
    };
    for (const ResultRow& row : rows) {
        out << cell(row.sweep_value);
        stats(row.bcpso);
        stats(row.oma);
        stats(row.plain_pso);
        stats(row.oracle);
        for (std::size_t u = 0; u < max_users; ++u) {
            if (u < row.mean_power.size())
                out << ',' << cell(row.mean_power[u]) << ',' << cell(row.mean_gain[u]);
            else
                out << ",,";
        }
        out << ',' << cell(row.feasible_fraction) << ',' << cell(row.wall_seconds) << '\n';
    }
}

void emit_csv(const std::filesystem::path& path, std::span<const ResultRow> rows,
              std::size_t max_users) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write CSV to " + path.string());
    write_csv(out, rows, max_users);
    if (!out)
        throw std::runtime_error("I/O error while writing " + path.string());
}

namespace {

json stats_json(const std::optional<MethodStats>& s) {
    if (!s)
        return nullptr;
    return {{"mean", number_or_null(s->mean)},
            {"min", number_or_null(s->min)},
            {"max", number_or_null(s->max)},
            {"count", s->count}};
}

json row_json(const ResultRow& row, bool with_wall) {
    json out = {{"sweep_value", row.sweep_value},
                {"bcpso", stats_json(row.bcpso)},
                {"oma", stats_json(row.oma)},
                {"plain_pso", stats_json(row.plain_pso)},
                {"oracle", stats_json(row.oracle)},
                {"mean_power", json::array()},
                {"mean_gain", json::array()},
                {"feasible_fraction", row.feasible_fraction}};
    for (std::size_t u = 0; u < row.mean_power.size(); ++u) {
        out["mean_power"].push_back(number_or_null(row.mean_power[u]));
        out["mean_gain"].push_back(number_or_null(row.mean_gain[u]));
    }
    if (with_wall)
        out["wall_seconds"] = row.wall_seconds;
    return out;
}

json record_json(const RealizationRecord& rec) {
    json channels = json::array();
    for (const auto& ch : rec.channels)
        channels.push_back(to_json(ch));
    return {{"grid_index", rec.grid_index},
            {"sweep_value", rec.sweep_value},
            {"realization", rec.realization},
            {"channel_seed", rec.channel_seed},
            {"swarm_seed", rec.swarm_seed},
            {"feasible", rec.feasible},
            {"infeasible_reason", rec.infeasible_reason},
            {"bcpso", number_or_null(rec.bcpso)},
            {"oma", number_or_null(rec.oma)},
            {"plain_pso", number_or_null(rec.plain_pso)},
            {"oracle", number_or_null(rec.oracle)},
            {"powers", rec.powers},
            {"gains", rec.gains},
            {"tx_phases", rec.tx_phases},
            {"channels", std::move(channels)}};
}

} // namespace

json records_to_json(const ExperimentSpec& spec, const ExperimentResult& result) {
    json rows = json::array();
    for (const ResultRow& row : result.rows)
        rows.push_back(row_json(row, true));
    json records = json::array();
    for (const RealizationRecord& rec : result.records)
        records.push_back(record_json(rec));
    return {{"format", "mmnoma-records/1"},
            {"spec", to_json(spec)},
            {"rows", std::move(rows)},
            {"records", std::move(records)}};
}

void emit_json(const std::filesystem::path& path, const ExperimentSpec& spec,
               const ExperimentResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write JSON to " + path.string());
    out << records_to_json(spec, result).dump(1) << '\n';
    if (!out)
        throw std::runtime_error("I/O error while writing " + path.string());
}

ReplayReport replay(const json& records_doc, const RunOptions& options) {
    if (records_doc.value("format", std::string()) != "mmnoma-records/1")
        throw ConfigError("replay: not an mmnoma records document");
    const ExperimentSpec spec = spec_from_json(records_doc.at("spec"));
    const ExperimentResult fresh = run_experiment(spec, options);

    ReplayReport report;
    const json& stored_records = records_doc.at("records");
    if (stored_records.size() != fresh.records.size()) {
        report.identical = false;
        report.mismatches.push_back("record count " + std::to_string(stored_records.size()) +
                                    " vs " + std::to_string(fresh.records.size()));
    }
    const std::size_t n = std::min<std::size_t>(stored_records.size(), fresh.records.size());
    for (std::size_t i = 0; i < n; ++i) {
        ++report.records_checked;
        if (record_json(fresh.records[i]) != stored_records[i]) {
            report.identical = false;
            report.mismatches.push_back("record " + std::to_string(i) + " (grid " +
                                        std::to_string(fresh.records[i].grid_index) +
                                        ", realization " +
                                        std::to_string(fresh.records[i].realization) + ")");
        }
    }
    const json& stored_rows = records_doc.at("rows");
    for (std::size_t g = 0; g < fresh.rows.size() && g < stored_rows.size(); ++g) {
        json stored = stored_rows[g];
        stored.erase("wall_seconds");
        if (row_json(fresh.rows[g], false) != stored) {
            report.identical = false;
            report.mismatches.push_back("row " + std::to_string(g));
        }
    }
    return report;
}

std::vector<CheckLine> oracle_check(const ExperimentSpec& spec, const RunOptions& options) {
    spec.validate();
    for (double v : spec.grid)
        if (spec.system_at(v).n_tx > 6)
            throw ConfigError("oracle-check: needs n_tx <= 6 at every grid point");

    struct Item {
        bool oracle_feasible = false;
        bool swarm_close = false;
        std::size_t rx_total = 0, rx_pass = 0;
        bool power_checked = false, power_pass = false;
        double power_excess = 0.0;
    };
    const std::size_t total = spec.grid.size() * spec.n_realizations;
    std::vector<Item> items(total);
    parallel_for(total, thread_count(options), [&](std::size_t idx) {
        const std::size_t g = idx / spec.n_realizations;
        const std::size_t r = idx % spec.n_realizations;
        const SystemConfig sys = spec.system_at(spec.grid[g]);
        const auto channels = draw_channels(spec, sys.n_tx, sys.n_users, r);
        std::vector<CMatrix> mats;
        for (const auto& ch : channels)
            mats.push_back(ch.matrix);
        Item& item = items[idx];

        const auto best = oracle::exhaustive_phase_tx(mats, sys, spec.oracle_phases);
        Rng swarm_rng = Rng(spec.master_seed).split(kSwarmStream).split(g).split(r).split(0);
        const auto bc = run_bcpso(swarm_rng, mats, sys, spec.swarm);
        item.oracle_feasible = best.feasible();
        if (best && bc.best)
            item.swarm_close = bc.best->sum_rate >= 0.95 * best->sum_rate;
        if (!bc.best)
            return;

        const Solution& sol = bc.best.value();
        Rng rx_rng = swarm_rng.split(7);
        for (std::size_t u = 0; u < mats.size(); ++u) {
            const double sampled = oracle::random_rx_sampling(mats[u], sol.tx, 10000, rx_rng);
            ++item.rx_total;
            if (sampled <= sol.gains[u] * (1.0 + 1e-12))
                ++item.rx_pass;
        }
        if (sys.n_users <= 3) {
            const auto targets = RateTargets::from_min_rates(sys.min_rates);
            const auto grid = oracle::grid_power_search(sol.order, targets, sys.total_power,
                                                        sys.noise_power, 200);
            item.power_checked = true;
            const double closed = sum_rate(sol.power, sys.noise_power);
            item.power_excess = grid ? sum_rate(*grid, sys.noise_power) - closed : 0.0;
            item.power_pass = item.power_excess <= 1e-3;
        }
    });

    std::size_t oracle_feasible = 0, close = 0, rx_total = 0, rx_pass = 0, power_checked = 0,
                power_pass = 0;
    double worst_excess = 0.0;
    for (const Item& it : items) {
        oracle_feasible += it.oracle_feasible;
        close += it.swarm_close;
        rx_total += it.rx_total;
        rx_pass += it.rx_pass;
        power_checked += it.power_checked;
        power_pass += it.power_pass;
        worst_excess = std::max(worst_excess, it.power_excess);
    }
    std::vector<CheckLine> lines;
    {
        std::ostringstream d;
        d << close << "/" << oracle_feasible << " oracle-feasible realizations within 0.95 of "
          << "the Q=" << spec.oracle_phases << " exhaustive search (need >= 90%)";
        lines.push_back({"swarm-vs-exhaustive",
                         oracle_feasible > 0 && static_cast<double>(close) >=
                                                    0.9 * static_cast<double>(oracle_feasible),
                         d.str()});
    }
    lines.push_back({"rx-closed-form-dominance", rx_total > 0 && rx_pass == rx_total,
                     std::to_string(rx_pass) + "/" + std::to_string(rx_total) +
                         " users beat 1e4 random receive beams"});
    if (power_checked > 0)
        lines.push_back({"power-closed-form-vs-grid", power_pass == power_checked,
                         std::to_string(power_pass) + "/" + std::to_string(power_checked) +
                             " instances, worst grid excess " + format_double(worst_excess)});
    return lines;
}

} // namespace mmnoma
