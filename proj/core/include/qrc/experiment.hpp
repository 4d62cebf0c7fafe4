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

// Experiment runner: hyperparameter search, Monte Carlo replicas, sweeps
// and the files they leave behind.
//
// Output layout under the output directory:
//   results.json     resolved config, version, best trial, per-replica metrics, aggregate
//   predictions.csv  replica,delay,k,split,target,prediction
//   trace.csv        k,s,phi_B,phi_D,phi_4,p_<outcome>... (replica 0)
//   dataset.csv      k,s,y (y is nan outside the scored window)
//   trials.jsonl     one JSON object per hyperopt trial (only with hyperopt)
//   sweep.csv        sweep_variable,value,metric,replica,result (characterize)
//
// Files are staged under temporary names and renamed once everything has
// been computed, so a failed run leaves no partial outputs.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrc/config.hpp"

namespace qrc {

struct Summary {
    double median = 0.0;
    double std = 0.0; // sample standard deviation; 0 for a single value
    std::size_t n = 0;
};

/// Median and sample std of the finite entries of `values`.
Summary summarize(std::vector<double> values);

struct ReplicaResult {
    std::size_t replica = 0;
    std::uint64_t seed = 0;
    MetricsReport metrics;
};

struct ResultBundle {
    ExperimentConfig config; // as resolved from the file
    PipelineSpec effective;  // what the replicas ran: tuned weights and readout when searched
    std::optional<OptimizeResult> search;
    std::vector<ReplicaResult> replicas;
    std::map<std::string, Summary> aggregate;
    std::vector<StepRecord> trace;                      // replica 0
    std::vector<std::vector<PredictionRow>> predictions; // per replica
    std::vector<std::string> outcome_labels;
};

/// Scalar metrics of a report keyed by name: mse, r2, accuracy, capacity,
/// r2_d<d>, gram_rank. Absent optionals are skipped.
std::map<std::string, double> metric_values(const MetricsReport& report);

/// Aggregate over replicas, recomputable from bundle.replicas.
std::map<std::string, Summary> aggregate_metrics(const std::vector<ReplicaResult>& replicas);

/// Tunes when config.hyperopt is set, then evaluates config.replicas
/// Monte Carlo extractions with seeds reservoir.seed + i.
ResultBundle run_experiment(const ExperimentConfig& config, std::size_t jobs = 1);

void write_results(const ResultBundle& bundle, const std::filesystem::path& dir);

/// Serialized pieces, exposed for tests.
std::string results_json(const ResultBundle& bundle);
std::string predictions_csv(const ResultBundle& bundle);
std::string trace_csv(const ResultBundle& bundle);
std::string dataset_csv(const Dataset& ds);
std::string trials_jsonl(const OptimizeResult& search);

enum class Suite { Memory, Expressivity, CountsSweep, VisibilitySweep, PhotonSweep, FeedbackSweep };

const char* to_string(Suite suite);
Suite suite_from_string(const std::string& name);

struct SweepRow {
    std::string variable;
    std::string value;
    std::string metric;
    std::size_t replica = 0;
    double result = 0.0;
};

struct SweepResult {
    Suite suite = Suite::Memory;
    std::vector<SweepRow> rows;
};

/// Default grid per suite and task; config.characterize_grid overrides it.
std::vector<double> default_grid(Suite suite, const ExperimentConfig& config);

SweepResult characterize(Suite suite, const ExperimentConfig& config, std::size_t jobs = 1);

std::string sweep_csv(const SweepResult& result);
void write_sweep(const SweepResult& result, const std::filesystem::path& dir);

/// Writes named files into `dir` atomically as a group: every file is
/// staged under a temporary name first and renamed only when all writes
/// succeed. Temporaries are removed on failure.
void write_files_atomically(const std::filesystem::path& dir,
                            const std::vector<std::pair<std::string, std::string>>& files);

} // namespace qrc
