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

#include "qrc/pipeline.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "qrc/errors.hpp"

namespace qrc {

namespace {

int memory_window(const PipelineSpec& spec) { return std::max(spec.memory_d_max, spec.task.order); }

struct Fit {
    std::vector<double> train_pred;
    std::vector<double> test_pred;
    ReadoutModel model;
};

Fit fit_and_predict(const Eigen::MatrixXd& x_train, std::span<const double> y_train, const Eigen::MatrixXd& x_test,
                    const ReadoutSettings& readout) {
    Fit f;
    f.model = ridge_fit(x_train, y_train, RidgeOptions{readout.alpha, readout.washout, readout.standardize});
    f.train_pred = predict(f.model, x_train);
    f.test_pred = predict(f.model, x_test);
    return f;
}

void append_rows(std::vector<PredictionRow>& out, int delay, std::size_t start, std::size_t train,
                 std::span<const double> y, const Fit& fit) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        const bool is_train = i < train;
        out.push_back({delay, start + i, is_train, y[i], is_train ? fit.train_pred[i] : fit.test_pred[i - train]});
    }
}

Evaluation score_impl(const PipelineSpec& spec, const Dataset& ds, const FeatureMatrix& x,
                      std::optional<SplitSpec> split_override, bool keep_predictions) {
    if (static_cast<std::size_t>(x.rows()) != ds.size())
        throw DimensionError(fmt::format("feature matrix has {} rows for {} inputs", x.rows(), ds.size()));
    const std::size_t start = first_scored_row(spec, ds);
    const std::size_t end = ds.valid_to;
    if (start >= end) throw DimensionError("task leaves no scored rows");
    const std::size_t rows = end - start;

    const SplitSpec split = split_override ? *split_override : SplitSpec::from_fraction(rows, spec.train_fraction);
    if (split.total() != rows)
        throw DimensionError(fmt::format("split {}+{} does not cover the {} scored rows", split.train, split.test, rows));
    if (split.test < 1) throw DimensionError("split has no test rows");
    if (spec.readout.washout >= split.train)
        throw ConfigError(fmt::format("washout {} must be < K_tr = {}", spec.readout.washout, split.train));

    const auto s0 = static_cast<Eigen::Index>(start);
    const auto ntr = static_cast<Eigen::Index>(split.train);
    const auto nts = static_cast<Eigen::Index>(split.test);
    const Eigen::MatrixXd x_train = x.middleRows(s0, ntr);
    const Eigen::MatrixXd x_test = x.middleRows(s0 + ntr, nts);

    Evaluation ev;
    MetricsReport& r = ev.report;
    r.gram_rank = gram_effective_rank(x_train.bottomRows(ntr - static_cast<Eigen::Index>(spec.readout.washout)),
                                      spec.readout.gram_tol);

    auto score_target = [&](std::span<const double> y, int delay, bool primary) {
        const Fit fit = fit_and_predict(x_train, y.first(split.train), x_test, spec.readout);
        const auto y_test = y.subspan(split.train);
        const double r2 = r2_score(fit.test_pred, y_test);
        if (primary) {
            r.mse = mse_score(fit.test_pred, y_test);
            r.r2 = r2;
            r.r2_degenerate = r2_is_degenerate(fit.test_pred, y_test);
            r.pseudoinverse = fit.model.pseudoinverse;
            r.ridge_residual = fit.model.residual;
            if (spec.task.kind == TaskKind::Xor) r.accuracy = binary_accuracy(fit.test_pred, y_test);
        }
        if (keep_predictions) append_rows(ev.predictions, delay, start, split.train, y, fit);
        return r2;
    };

    if (spec.task.kind == TaskKind::Memory) {
        const int d_max = memory_window(spec);
        std::vector<double> y(rows);
        for (int d = 0; d <= d_max; ++d) {
            for (std::size_t i = 0; i < rows; ++i) y[i] = ds.inputs[start + i - static_cast<std::size_t>(d)];
            r.per_delay_r2.push_back(score_target(y, d, d == spec.task.order));
        }
        r.capacity = memory_capacity(r.per_delay_r2);
    } else {
        score_target(std::span<const double>(ds.targets).subspan(start, rows), -1, true);
    }
    return ev;
}

} // namespace

std::size_t first_scored_row(const PipelineSpec& spec, const Dataset& ds) {
    if (spec.task.kind == TaskKind::Memory)
        return std::max(ds.valid_from, static_cast<std::size_t>(memory_window(spec)));
    return ds.valid_from;
}

Evaluation score_features(const PipelineSpec& spec, const Dataset& ds, const FeatureMatrix& x, bool keep_predictions) {
    return score_impl(spec, ds, x, std::nullopt, keep_predictions);
}

Evaluation evaluate(const PipelineSpec& spec, std::uint64_t reservoir_seed, bool keep_predictions) {
    const Dataset ds = generate(spec.task);
    const Reservoir reservoir(spec.reservoir, spec.photon);
    return score_impl(spec, ds, reservoir.features(ds.inputs, reservoir_seed), std::nullopt, keep_predictions);
}

MetricsReport evaluate_config(const TaskSpec& task, const ReservoirConfig& config, const PhotonInput& photon,
                              const SplitSpec& split, const ReadoutSettings& readout) {
    PipelineSpec spec;
    spec.task = task;
    spec.reservoir = config;
    spec.photon = photon;
    spec.readout = readout;
    const Dataset ds = generate(task);
    const Reservoir reservoir(config, photon);
    return score_impl(spec, ds, reservoir.features(ds.inputs), split, false).report;
}

double objective_value(TaskKind kind, const MetricsReport& report) {
    switch (kind) {
    case TaskKind::Xor: return -report.accuracy.value_or(0.0);
    case TaskKind::Memory: return -report.capacity.value_or(0.0);
    default: return report.mse;
    }
}

FeedbackMode default_feedback_mode(TaskKind kind) {
    switch (kind) {
    case TaskKind::Monomial:
    case TaskKind::Polynomial: return FeedbackMode::OneStep;
    default: return FeedbackMode::TwoStep;
    }
}

SearchSpace search_space_for(const PipelineSpec& spec) {
    SearchSpace space;
    space.outcomes = basis_dimension(4, spec.photon.photon_count());
    space.feedback_mode = spec.reservoir.feedback_mode;
    return space;
}

TunedPipeline tune(const PipelineSpec& spec, std::size_t budget, std::uint64_t seed, const Sampler& sampler,
                   std::size_t jobs) {
    const SearchSpace space = search_space_for(spec);
    const Dataset ds = generate(spec.task);

    auto with_params = [&spec](const TrialParams& p) {
        PipelineSpec s = spec;
        s.reservoir = p.apply(spec.reservoir);
        s.readout.alpha = p.ridge_alpha;
        s.readout.washout = p.washout;
        return s;
    };

    const Objective objective = [&](const TrialParams& p, std::uint64_t trial_seed) {
        const PipelineSpec s = with_params(p);
        const Reservoir reservoir(s.reservoir, s.photon);
        const std::uint64_t run_seed = s.reservoir.noiseless() ? s.reservoir.seed : trial_seed;
        const Evaluation ev = score_impl(s, ds, reservoir.features(ds.inputs, run_seed), std::nullopt, false);
        return objective_value(s.task.kind, ev.report);
    };

    TunedPipeline out{spec, optimize(space, objective, budget, seed, sampler, jobs)};
    if (out.search.best) out.spec = with_params(out.search.best->params);
    return out;
}

} // namespace qrc
