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

#pragma once

// End-to-end evaluation: task generation -> reservoir -> readout -> metrics.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qrc/fock.hpp"
#include "qrc/hyperopt.hpp"
#include "qrc/readout.hpp"
#include "qrc/reservoir.hpp"
#include "qrc/tasks.hpp"

namespace qrc {

struct ReadoutSettings {
    double alpha = 1e-8;
    std::size_t washout = 10;
    bool standardize = false;
    double gram_tol = 1e-10;
};

struct PredictionRow {
    int delay = -1; // memory task: the delay d this row scores; -1 otherwise
    std::size_t k = 0;
    bool train = false;
    double target = 0.0;
    double prediction = 0.0;
};

struct Evaluation {
    MetricsReport report;
    std::vector<PredictionRow> predictions;
};

/// Everything needed to score one configuration.
struct PipelineSpec {
    TaskSpec task;
    PhotonInput photon;
    ReservoirConfig reservoir;
    ReadoutSettings readout;
    double train_fraction = 0.8;
    /// Memory task: delays 0..memory_d_max are all scored and summed into C_Sigma.
    int memory_d_max = 6;
};

/// Rows of the feature matrix that carry targets for this task. The memory
/// task shares one window across all delays, starting at max(d, d_max).
std::size_t first_scored_row(const PipelineSpec& spec, const Dataset& ds);

/// Fits the readout on the chronological train prefix of the scored rows
/// and scores the test suffix.
Evaluation score_features(const PipelineSpec& spec, const Dataset& ds, const FeatureMatrix& x,
                          bool keep_predictions = false);

/// Generates the dataset, runs the reservoir with `reservoir_seed`, and scores.
Evaluation evaluate(const PipelineSpec& spec, std::uint64_t reservoir_seed, bool keep_predictions = false);

/// evaluate() with an explicit split; split.total() must equal the number
/// of scored rows.
MetricsReport evaluate_config(const TaskSpec& task, const ReservoirConfig& config, const PhotonInput& photon,
                              const SplitSpec& split, const ReadoutSettings& readout = {});

/// Scalar to minimise for a task family: MSE, -accuracy (XOR) or -C_Sigma (memory).
double objective_value(TaskKind kind, const MetricsReport& report);

/// Default feedback wiring per task family.
FeedbackMode default_feedback_mode(TaskKind kind);

/// Search space for the given spec (outcome count from the photon basis).
SearchSpace search_space_for(const PipelineSpec& spec);

/// Runs hyperparameter search for `spec`; the readout and reservoir
/// weights of the returned spec are replaced by the best trial.
struct TunedPipeline {
    PipelineSpec spec;
    OptimizeResult search;
};
TunedPipeline tune(const PipelineSpec& spec, std::size_t budget, std::uint64_t seed, const Sampler& sampler,
                   std::size_t jobs = 1);

} // namespace qrc
