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

#include "qrc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>
#include <tuple>

#include <fmt/format.h>

#include "json_io.hpp"
#include "qrc/csv.hpp"

namespace qrc {

using detail::number_or_null;
using detail::ordered_json;

Summary summarize(std::vector<double> values) {
    std::erase_if(values, [](double v) { return !std::isfinite(v); });
    Summary s;
    s.n = values.size();
    if (values.empty()) {
        s.median = std::numeric_limits<double>::quiet_NaN();
        s.std = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    if (n > 1) {
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        s.std = std::sqrt(ss / static_cast<double>(n - 1));
    }
    return s;
}

std::map<std::string, double> metric_values(const MetricsReport& r) {
    std::map<std::string, double> m;
    m["mse"] = r.mse;
    m["r2"] = r.r2;
    m["gram_rank"] = static_cast<double>(r.gram_rank);
    if (r.accuracy) m["accuracy"] = *r.accuracy;
    if (r.capacity) m["capacity"] = *r.capacity;
    for (std::size_t d = 0; d < r.per_delay_r2.size(); ++d) m[fmt::format("r2_d{}", d)] = r.per_delay_r2[d];
    return m;
}

std::map<std::string, Summary> aggregate_metrics(const std::vector<ReplicaResult>& replicas) {
    std::map<std::string, std::vector<double>> columns;
    for (const auto& rep : replicas)
        for (const auto& [name, v] : metric_values(rep.metrics)) columns[name].push_back(v);
    std::map<std::string, Summary> out;
    for (auto& [name, vs] : columns) out[name] = summarize(std::move(vs));
    return out;
}

namespace {

PipelineSpec tuned_spec(const PipelineSpec& spec, const std::optional<HyperoptSettings>& h, std::size_t jobs,
                        std::optional<OptimizeResult>* search = nullptr) {
    if (!h) return spec;
    const auto sampler = make_sampler(h->sampler);
    TunedPipeline t = tune(spec, h->budget, h->seed, *sampler, jobs);
    if (!t.search.best) throw Error(fmt::format("all {} hyperopt trials failed", h->budget));
    if (search) *search = std::move(t.search);
    return t.spec;
}

std::size_t replica_count(const PipelineSpec& spec, std::size_t requested) {
    return spec.reservoir.noiseless() ? 1 : std::max<std::size_t>(requested, 1);
}

std::vector<MetricsReport> replicate(const PipelineSpec& spec, std::size_t replicas, std::size_t jobs) {
    const Dataset ds = generate(spec.task);
    const Reservoir reservoir(spec.reservoir, spec.photon);
    const std::size_t n = replica_count(spec, replicas);
    std::vector<MetricsReport> out(n);
    parallel_for(n, jobs, [&](std::size_t i) {
        out[i] = score_features(spec, ds, reservoir.features(ds.inputs, spec.reservoir.seed + i)).report;
    });
    return out;
}

} // namespace

ResultBundle run_experiment(const ExperimentConfig& config, std::size_t jobs) {
    validate_config(config);
    ResultBundle b;
    b.config = config;
    b.effective = tuned_spec(config.pipeline, config.hyperopt, jobs, &b.search);
    const PipelineSpec& spec = b.effective;

    const Dataset ds = generate(spec.task);
    const Reservoir reservoir(spec.reservoir, spec.photon);
    b.outcome_labels = reservoir.basis().labels();

    const std::size_t n = replica_count(spec, config.replicas);
    b.replicas.resize(n);
    b.predictions.resize(n);
    parallel_for(n, jobs, [&](std::size_t i) {
        const std::uint64_t seed = spec.reservoir.seed + i;
        FeatureMatrix x;
        if (i == 0) {
            b.trace = reservoir.run(ds.inputs);
            x = to_feature_matrix(b.trace);
        } else {
            x = reservoir.features(ds.inputs, seed);
        }
        Evaluation ev = score_features(spec, ds, x, true);
        b.replicas[i] = {i, seed, std::move(ev.report)};
        b.predictions[i] = std::move(ev.predictions);
    });
    b.aggregate = aggregate_metrics(b.replicas);
    return b;
}

std::string results_json(const ResultBundle& b) {
    ordered_json j;
    j["version"] = version_string();
    j["config"] = detail::to_json(b.config);
    if (b.search) {
        const auto& best = *b.search->best;
        std::size_t failed = 0;
        for (const auto& t : b.search->log) failed += t.status == TrialStatus::Failed ? 1 : 0;
        j["hyperopt"] = {{"trials", b.search->log.size()},
                         {"failed", failed},
                         {"best",
                          {{"index", best.index},
                           {"seed", best.seed},
                           {"objective", number_or_null(best.objective)},
                           {"params", detail::to_json(best.params)}}}};
    } else {
        j["hyperopt"] = nullptr;
    }
    ordered_json reps = ordered_json::array();
    for (const auto& r : b.replicas)
        reps.push_back({{"replica", r.replica}, {"seed", r.seed}, {"metrics", detail::to_json(r.metrics)}});
    j["replicas"] = reps;
    ordered_json agg = ordered_json::object();
    for (const auto& [name, s] : b.aggregate)
        agg[name] = {{"median", number_or_null(s.median)}, {"std", number_or_null(s.std)}, {"n", s.n}};
    j["aggregate"] = agg;
    return j.dump(2) + "\n";
}

std::string predictions_csv(const ResultBundle& b) {
    std::ostringstream out;
    CsvWriter w(out);
    w.header({"replica", "delay", "k", "split", "target", "prediction"});
    for (std::size_t i = 0; i < b.predictions.size(); ++i)
        for (const auto& p : b.predictions[i])
            w.row(i, p.delay, p.k, p.train ? "train" : "test", p.target, p.prediction);
    return out.str();
}

std::string trace_csv(const ResultBundle& b) {
    std::ostringstream out;
    CsvWriter w(out);
    std::vector<std::string> cols{"k", "s", "phi_B", "phi_D", "phi_4"};
    for (const auto& l : b.outcome_labels) cols.push_back("p_" + l);
    w.header(cols);
    for (const auto& r : b.trace) {
        w.cell(r.k).cell(r.s).cell(r.phases.phi_B).cell(r.phases.phi_D).cell(r.phases.phi_4);
        for (double p : r.probs.probs) w.cell(p);
        w.end_row();
    }
    return out.str();
}

std::string dataset_csv(const Dataset& ds) {
    std::ostringstream out;
    CsvWriter w(out);
    w.header({"k", "s", "y"});
    for (std::size_t k = 0; k < ds.size(); ++k) {
        const bool scored = k >= ds.valid_from && k < ds.valid_to;
        w.row(k, ds.inputs[k], scored ? ds.targets[k] : std::numeric_limits<double>::quiet_NaN());
    }
    return out.str();
}

std::string trials_jsonl(const OptimizeResult& search) {
    std::string out;
    for (const auto& t : search.log) {
        ordered_json j;
        j["index"] = t.index;
        j["seed"] = t.seed;
        j["status"] = t.status == TrialStatus::Complete ? "complete" : "failed";
        j["objective"] = number_or_null(t.objective);
        j["params"] = detail::to_json(t.params);
        j["duration_s"] = t.duration_s;
        j["error"] = t.error.empty() ? ordered_json(nullptr) : ordered_json(t.error);
        out += j.dump() + "\n";
    }
    return out;
}

void write_files_atomically(const std::filesystem::path& dir,
                            const std::vector<std::pair<std::string, std::string>>& files) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<fs::path> staged;
    auto cleanup = [&] {
        std::error_code ec;
        for (const auto& p : staged) fs::remove(p, ec);
    };
    try {
        for (const auto& [name, content] : files) {
            const fs::path tmp = dir / (name + ".tmp");
            staged.push_back(tmp);
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << content;
            out.close();
            if (!out) throw Error(fmt::format("failed to write '{}'", tmp.string()));
        }
        for (std::size_t i = 0; i < files.size(); ++i) fs::rename(staged[i], dir / files[i].first);
    } catch (...) {
        cleanup();
        std::error_code ec;
        for (const auto& [name, _] : files) fs::remove(dir / name, ec);
        throw;
    }
}

void write_results(const ResultBundle& b, const std::filesystem::path& dir) {
    std::vector<std::pair<std::string, std::string>> files{
        {"results.json", results_json(b)}, {"predictions.csv", predictions_csv(b)}, {"trace.csv", trace_csv(b)},
        {"dataset.csv", dataset_csv(generate(b.effective.task))}};
    if (b.search) files.emplace_back("trials.jsonl", trials_jsonl(*b.search));
    write_files_atomically(dir, files);
}

// ---------------------------------------------------------------------------
// Sweeps

const char* to_string(Suite suite) {
    switch (suite) {
    case Suite::Memory: return "memory";
    case Suite::Expressivity: return "expressivity";
    case Suite::CountsSweep: return "counts_sweep";
    case Suite::VisibilitySweep: return "visibility_sweep";
    case Suite::PhotonSweep: return "photon_sweep";
    case Suite::FeedbackSweep: return "feedback_sweep";
    }
    return "?";
}

Suite suite_from_string(const std::string& name) {
    for (Suite s : {Suite::Memory, Suite::Expressivity, Suite::CountsSweep, Suite::VisibilitySweep,
                    Suite::PhotonSweep, Suite::FeedbackSweep})
        if (name == to_string(s)) return s;
    throw ConfigError(fmt::format(
        "unknown suite '{}' (memory, expressivity, counts_sweep, visibility_sweep, photon_sweep, feedback_sweep)",
        name));
}

namespace {

std::vector<double> range(int lo, int hi) {
    std::vector<double> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

std::string value_label(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == std::floor(v) && std::abs(v) < 1e15) return fmt::format("{}", static_cast<long long>(v));
    return format_double(v);
}

int as_order(double v) {
    if (v != std::floor(v) || v < 0 || v > 1e6) throw ConfigError(fmt::format("grid value {} is not an order", v));
    return static_cast<int>(v);
}

void push_metrics(SweepResult& out, const std::string& variable, const std::string& value,
                  const std::vector<MetricsReport>& reports) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const MetricsReport& r = reports[i];
        out.rows.push_back({variable, value, "mse", i, r.mse});
        out.rows.push_back({variable, value, "r2", i, r.r2});
        if (r.accuracy) out.rows.push_back({variable, value, "accuracy", i, *r.accuracy});
        if (r.capacity) out.rows.push_back({variable, value, "capacity", i, *r.capacity});
    }
}

PipelineSpec with_photons(PipelineSpec spec, const std::vector<int>& modes, double visibility) {
    spec.photon = PhotonInput{modes, visibility};
    const std::size_t dim = basis_dimension(4, spec.photon.photon_count());
    auto& r = spec.reservoir;
    r.mu_prime %= dim;
    r.mu_dprime %= dim;
    r.mu_tprime %= dim;
    return spec;
}

} // namespace

std::vector<double> default_grid(Suite suite, const ExperimentConfig& config) {
    if (!config.characterize_grid.empty()) return config.characterize_grid;
    switch (suite) {
    case Suite::Memory: return range(0, 6);
    case Suite::Expressivity:
        switch (config.pipeline.task.kind) {
        case TaskKind::Memory: return range(0, 6);
        case TaskKind::Monomial: return range(2, 13);
        case TaskKind::Polynomial: return range(1, 7);
        case TaskKind::Xor: return range(1, 6);
        case TaskKind::Narma: return range(1, 8);
        case TaskKind::MackeyGlass: return range(0, 12);
        }
        break;
    case Suite::CountsSweep: return {1e2, 1e3, 1e4, std::numeric_limits<double>::infinity()};
    case Suite::VisibilitySweep: return {0.0, 0.5, 1.0};
    case Suite::PhotonSweep:
    case Suite::FeedbackSweep: return {};
    }
    return {};
}

SweepResult characterize(Suite suite, const ExperimentConfig& config, std::size_t jobs) {
    SweepResult out;
    out.suite = suite;
    const std::vector<double> grid = default_grid(suite, config);
    const PipelineSpec& base = config.pipeline;
    const auto& h = config.hyperopt;
    const std::size_t reps = config.replicas;

    switch (suite) {
    case Suite::Memory: {
        PipelineSpec spec = base;
        int d_max = 0;
        for (double v : grid) d_max = std::max(d_max, as_order(v));
        spec.task.kind = TaskKind::Memory;
        spec.task.order = std::clamp(spec.task.order, 0, d_max);
        spec.memory_d_max = d_max;
        const auto reports = replicate(tuned_spec(spec, h, jobs), reps, jobs);
        for (std::size_t i = 0; i < reports.size(); ++i)
            for (double v : grid)
                out.rows.push_back({"d", value_label(v), "r2", i, reports[i].per_delay_r2.at(as_order(v))});
        break;
    }
    case Suite::Expressivity: {
        const std::string variable = order_name(base.task.kind);
        for (double v : grid) {
            PipelineSpec spec = base;
            spec.task.order = as_order(v);
            if (spec.task.kind == TaskKind::Memory) spec.memory_d_max = std::max(spec.memory_d_max, spec.task.order);
            push_metrics(out, variable, value_label(v), replicate(tuned_spec(spec, h, jobs), reps, jobs));
        }
        break;
    }
    case Suite::CountsSweep: {
        PipelineSpec noiseless = base;
        noiseless.reservoir.n_shot.reset();
        const PipelineSpec tuned = tuned_spec(noiseless, h, jobs);
        for (double v : grid) {
            PipelineSpec spec = tuned;
            if (std::isinf(v)) {
                spec.reservoir.n_shot.reset();
            } else {
                if (!(v >= 1.0)) throw ConfigError(fmt::format("n_shot grid value {} must be >= 1", v));
                spec.reservoir.n_shot = std::llround(v);
            }
            push_metrics(out, "n_shot", value_label(v), replicate(spec, reps, jobs));
        }
        break;
    }
    case Suite::VisibilitySweep: {
        if (base.photon.photon_count() != 2)
            throw UnsupportedConfiguration("visibility_sweep needs a two-photon input (n_ph = 2)");
        for (double v : grid) {
            const PipelineSpec spec = with_photons(base, base.photon.input_modes, v);
            push_metrics(out, "V", value_label(v), replicate(tuned_spec(spec, h, jobs), reps, jobs));
        }
        break;
    }
    case Suite::PhotonSweep: {
        const std::vector<std::tuple<const char*, int, double>> points{
            {"n1", 1, 1.0}, {"n2_V0", 2, 0.0}, {"n2_V1", 2, 1.0}, {"n3_V1", 3, 1.0}};
        for (const auto& [label, n, v] : points) {
            const PipelineSpec spec = with_photons(base, default_input_modes(n), v);
            push_metrics(out, "photons", label, replicate(tuned_spec(spec, h, jobs), reps, jobs));
        }
        break;
    }
    case Suite::FeedbackSweep: {
        for (FeedbackMode m : {FeedbackMode::Off, FeedbackMode::OneStep, FeedbackMode::TwoStep, FeedbackMode::ThreeLoop}) {
            PipelineSpec spec = base;
            spec.reservoir.feedback_mode = m;
            push_metrics(out, "feedback", to_string(m), replicate(tuned_spec(spec, h, jobs), reps, jobs));
        }
        break;
    }
    }
    return out;
}

std::string sweep_csv(const SweepResult& result) {
    std::ostringstream out;
    CsvWriter w(out);
    w.header({"sweep_variable", "value", "metric", "replica", "result"});
    for (const auto& r : result.rows) w.row(r.variable, r.value, r.metric, r.replica, r.result);
    return out.str();
}

void write_sweep(const SweepResult& result, const std::filesystem::path& dir) {
    write_files_atomically(dir, {{"sweep.csv", sweep_csv(result)}});
}

} // namespace qrc
