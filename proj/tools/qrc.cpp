// Copyright 2026 The photonic-qrc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qrc: command-line front end for the photonic reservoir simulator.
//
//   qrc run <config>                  tune (optional), run replicas, write results
//   qrc characterize <suite> <config> write sweep.csv for one of the sweep suites
//   qrc validate <config>             check a config and print it with defaults filled in
//   qrc version
//
// Exit status: 0 on success, 2 for config errors, 1 for anything else.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qrc/config.hpp"
#include "qrc/experiment.hpp"

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replicas;
    std::optional<std::string> output_dir;
    bool noiseless = false;
    std::size_t jobs = 1;
};

qrc::ExperimentConfig load(const std::string& path, const Overrides& o) {
    std::vector<std::string> notes;
    qrc::ExperimentConfig cfg = qrc::load_config(path, &notes);
    for (const auto& n : notes) std::cerr << "note: " << n << '\n';

    if (o.seed) {
        cfg.pipeline.reservoir.seed = *o.seed;
        if (cfg.hyperopt) cfg.hyperopt->seed = *o.seed;
    }
    if (o.noiseless) {
        cfg.pipeline.reservoir.n_shot.reset();
        cfg.replicas = 1;
    }
    if (o.replicas) cfg.replicas = *o.replicas;
    if (const char* env = std::getenv("QRC_OUTPUT_DIR"); env && *env) cfg.output_dir = env;
    if (o.output_dir) cfg.output_dir = *o.output_dir;
    qrc::validate_config(cfg);
    return cfg;
}

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--seed", o.seed, "Reservoir and hyperopt seed");
    cmd->add_option("--replicas", o.replicas, "Monte Carlo replicas (needs finite n_shot)");
    cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--output-dir", o.output_dir, "Output directory (overrides QRC_OUTPUT_DIR and the config)");
    cmd->add_flag("--noiseless", o.noiseless, "Use exact probabilities (n_shot = inf, one replica)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photonic quantum reservoir computing simulator"};
    app.require_subcommand(1);

    Overrides o;
    std::string config_path;
    std::string suite;

    auto* run = app.add_subcommand("run", "Run an experiment config");
    run->add_option("config", config_path, "Config file")->required();
    add_common(run, o);

    auto* characterize = app.add_subcommand("characterize", "Run a parameter sweep");
    characterize->add_option("suite", suite, "memory | expressivity | counts_sweep | visibility_sweep | photon_sweep | feedback_sweep")
        ->required();
    characterize->add_option("config", config_path, "Config file")->required();
    add_common(characterize, o);

    auto* validate = app.add_subcommand("validate", "Validate a config and print resolved defaults");
    validate->add_option("config", config_path, "Config file")->required();
    add_common(validate, o);

    app.add_subcommand("version", "Print the version");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("version")) {
            std::cout << qrc::version_string() << '\n';
            return 0;
        }
        if (*validate) {
            const auto cfg = load(config_path, o);
            std::cout << "valid\n" << qrc::resolved_config_json(cfg) << '\n';
            return 0;
        }
        if (*run) {
            const auto cfg = load(config_path, o);
            const auto bundle = qrc::run_experiment(cfg, o.jobs);
            qrc::write_results(bundle, cfg.output_dir);
            std::cerr << fmt::format("wrote {} replica(s) to {}\n", bundle.replicas.size(), cfg.output_dir);
            return 0;
        }
        if (*characterize) {
            const auto which = qrc::suite_from_string(suite);
            const auto cfg = load(config_path, o);
            const auto sweep = qrc::characterize(which, cfg, o.jobs);
            qrc::write_sweep(sweep, cfg.output_dir);
            std::cerr << fmt::format("wrote {} rows to {}/sweep.csv\n", sweep.rows.size(), cfg.output_dir);
            return 0;
        }
    } catch (const qrc::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
