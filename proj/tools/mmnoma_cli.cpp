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

// Command-line front end for the experiment harness.
//
//   mmnoma_cli run <spec.json> [--seed S] [--realizations R] [--threads T] [--out-dir DIR]
//   mmnoma_cli oracle-check <spec.json> [--seed S] [--realizations R] [--threads T]
//   mmnoma_cli replay <records.json> [--threads T]
//
// Output files go to --out-dir, else $MMNOMA_OUT_DIR, else the working
// directory.

#include "mmnoma/experiment.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> realizations;
};

mmnoma::ExperimentSpec load_with_overrides(const std::string& path, const Overrides& ov) {
    mmnoma::ExperimentSpec spec = mmnoma::load_spec(path);
    if (ov.seed)
        spec.master_seed = *ov.seed;
    if (ov.realizations)
        spec.n_realizations = *ov.realizations;
    spec.validate();
    return spec;
}

fs::path output_dir(const std::string& flag) {
    if (!flag.empty())
        return flag;
    if (const char* env = std::getenv("MMNOMA_OUT_DIR"); env && *env)
        return env;
    return fs::current_path();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mmWave-NOMA joint beamforming and power allocation experiments"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_dir;
    Overrides overrides;
    mmnoma::RunOptions run_options;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", overrides.seed, "Override the spec's master seed");
        cmd->add_option("--realizations", overrides.realizations,
                        "Override the number of Monte-Carlo realizations");
        cmd->add_option("--threads", run_options.threads, "Worker threads (0 = all cores)");
    };

    auto* run = app.add_subcommand("run", "Run a Monte-Carlo sweep and write CSV + JSON records");
    run->add_option("spec", spec_path, "Experiment spec (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--out-dir", out_dir, "Output directory (default: $MMNOMA_OUT_DIR or cwd)");
    add_common(run);

    auto* check = app.add_subcommand("oracle-check", "Compare against brute-force oracles (N <= 6)");
    check->add_option("spec", spec_path, "Experiment spec (JSON)")->required()->check(CLI::ExistingFile);
    add_common(check);

    std::string records_path;
    auto* rep = app.add_subcommand("replay", "Re-run a records file and verify identical results");
    rep->add_option("records", records_path, "Records JSON written by `run`")
        ->required()
        ->check(CLI::ExistingFile);
    rep->add_option("--threads", run_options.threads, "Worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) {
            const auto spec = load_with_overrides(spec_path, overrides);
            const auto result = mmnoma::run_experiment(spec, run_options);
            const fs::path dir = output_dir(out_dir);
            fs::create_directories(dir);
            const std::string stem = fs::path(spec_path).stem().string();
            const fs::path csv = dir / (stem + ".csv");
            const fs::path records = dir / (stem + ".records.json");
            mmnoma::emit_csv(csv, result.rows, spec.max_users());
            mmnoma::emit_json(records, spec, result);
            mmnoma::write_csv(std::cout, result.rows, spec.max_users());
            std::cerr << "wrote " << csv.string() << " and " << records.string() << "\n";
            return 0;
        }
        if (*check) {
            const auto spec = load_with_overrides(spec_path, overrides);
            bool ok = true;
            for (const auto& line : mmnoma::oracle_check(spec, run_options)) {
                std::cout << (line.passed ? "PASS " : "FAIL ") << line.name << ": " << line.detail
                          << "\n";
                ok = ok && line.passed;
            }
            return ok ? 0 : 1;
        }
        if (*rep) {
            std::ifstream in(records_path);
            const auto doc = nlohmann::json::parse(in);
            const auto report = mmnoma::replay(doc, run_options);
            for (const auto& m : report.mismatches)
                std::cout << "mismatch: " << m << "\n";
            std::cout << (report.identical ? "identical" : "DIFFERENT") << " ("
                      << report.records_checked << " records)\n";
            return report.identical ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
