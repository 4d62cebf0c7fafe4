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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qrc/experiment.hpp"

using namespace qrc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig noisy_memory(std::size_t replicas) {
    return parse_config(R"({
  "task": {"kind": "memory", "order": 1, "K": 200},
  "reservoir": {"a_in": 2.0, "a_fb_D": 1.2, "a_fb_4": -0.8, "mu_prime": 2, "mu_dprime": 7, "n_shot": 2000, "seed": 3},
  "replicas": )" + std::to_string(replicas) + R"(,
  "output_dir": "unused"
})");
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(QRC_BINARY_DIR) / "scratch" / name;
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("summaries") {
    const auto s = summarize({3.0, 1.0, 2.0, std::nan("")});
    CHECK(s.n == 3);
    CHECK(s.median == 2.0);
    CHECK(s.std == doctest::Approx(1.0));
    CHECK(summarize({1.0, 2.0, 3.0, 4.0}).median == 2.5);
    CHECK(summarize({5.0}).std == 0.0);
    CHECK(summarize({}).n == 0);
}

TEST_CASE("replicas use consecutive seeds and aggregate") {
    const auto b = run_experiment(noisy_memory(3));
    REQUIRE(b.replicas.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(b.replicas[i].seed == 3 + i);
    CHECK(b.replicas[0].metrics.mse != b.replicas[1].metrics.mse);
    CHECK(b.aggregate.at("capacity").n == 3);
    CHECK(b.aggregate.at("r2_d1").n == 3);
    CHECK(b.trace.size() == 200);
    CHECK(b.outcome_labels.size() == 10);
    CHECK(!b.search);

    // Same config with more jobs gives identical replicas.
    const auto again = run_experiment(noisy_memory(3), 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(again.replicas[i].metrics.mse == b.replicas[i].metrics.mse);
}

TEST_CASE("results are written as a complete set") {
    const auto dir = scratch("run");
    const auto b = run_experiment(noisy_memory(2));
    write_results(b, dir);
    for (const char* f : {"results.json", "predictions.csv", "trace.csv", "dataset.csv"}) CHECK(fs::exists(dir / f));
    CHECK(!fs::exists(dir / "trials.jsonl"));
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");

    const auto j = nlohmann::json::parse(slurp(dir / "results.json"));
    CHECK(j["version"].get<std::string>() == version_string());
    CHECK(j["replicas"].size() == 2);
    CHECK(j["hyperopt"].is_null());
    CHECK(j["aggregate"].contains("capacity"));
    CHECK(j["config"]["reservoir"]["n_shot"] == 2000);

    const auto trace = slurp(dir / "trace.csv");
    CHECK(trace.rfind("k,s,phi_B,phi_D,phi_4,p_2000,", 0) == 0);
    CHECK(slurp(dir / "predictions.csv").rfind("replica,delay,k,split,target,prediction\n", 0) == 0);
    const auto ds = slurp(dir / "dataset.csv");
    CHECK(ds.rfind("k,s,y\n0,", 0) == 0);
    CHECK(ds.find(",nan\n") != std::string::npos);

    // Rerunning reproduces the same bytes.
    const auto dir2 = scratch("run2");
    write_results(run_experiment(noisy_memory(2)), dir2);
    for (const char* f : {"predictions.csv", "trace.csv", "dataset.csv"}) CHECK(slurp(dir / f) == slurp(dir2 / f));
}

TEST_CASE("search results are recorded") {
    auto c = parse_config(R"({"task": {"kind": "xor", "order": 1, "K": 120}, "readout": "optimize",
                             "hyperopt": {"budget": 9, "seed": 4}, "output_dir": "x"})");
    const auto b = run_experiment(c);
    REQUIRE(b.search);
    CHECK(b.search->log.size() == 9);
    CHECK(b.effective.reservoir.a_in == b.search->best->params.a_in);
    CHECK(b.effective.readout.alpha == b.search->best->params.ridge_alpha);
    const auto lines = trials_jsonl(*b.search);
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 9);
    const auto j = nlohmann::json::parse(results_json(b));
    CHECK(j["hyperopt"]["trials"] == 9);
    CHECK(j["hyperopt"]["best"]["index"] == b.search->best->index);
}

TEST_CASE("memory suite emits one row per delay and replica") {
    const auto sweep = characterize(Suite::Memory, noisy_memory(2));
    CHECK(sweep.rows.size() == 14);
    for (const auto& r : sweep.rows) {
        CHECK(r.variable == "d");
        CHECK(r.metric == "r2");
    }
    const auto csv = sweep_csv(sweep);
    CHECK(csv.rfind("sweep_variable,value,metric,replica,result\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 15);
    CHECK_THROWS_AS(suite_from_string("spectrum"), ConfigError);
    CHECK(suite_from_string("counts_sweep") == Suite::CountsSweep);
}

TEST_CASE("visibility sweep requires two photons") {
    auto c = parse_config(R"({"task": {"kind": "memory", "K": 100}, "photon": {"n_ph": 1}, "output_dir": "x"})");
    CHECK_THROWS_AS(characterize(Suite::VisibilitySweep, c), UnsupportedConfiguration);
    c.characterize_grid = {0.0, 1.0};
    c.pipeline.photon = PhotonInput::two_photon(1.0);
    const auto s = characterize(Suite::VisibilitySweep, c);
    CHECK(!s.rows.empty());
}
