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

// Experiment configuration files.
//
// A config is a JSON document with the sections task, photon, reservoir,
// split, readout, hyperopt, replicas, output_dir and characterize. Every
// field is optional except task.kind; the resolved form (all defaults
// materialised) is what gets echoed by `validate` and embedded in results.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrc/errors.hpp"
#include "qrc/pipeline.hpp"

namespace qrc {

struct HyperoptSettings {
    std::size_t budget = 200;
    std::uint64_t seed = 0;
    std::string sampler = "random";
};

struct ExperimentConfig {
    PipelineSpec pipeline;
    std::optional<HyperoptSettings> hyperopt;
    std::size_t replicas = 1;
    std::string output_dir = "qrc-out";
    /// Optional sweep grid for `characterize`, as written in the file.
    std::vector<double> characterize_grid;
};

/// A config problem tied to a field path such as "reservoir.mu_prime".
class FieldError : public ConfigError {
  public:
    FieldError(std::string path, const std::string& message)
        : ConfigError(path + ": " + message), path_(std::move(path)), message_(message) {}
    const std::string& path() const { return path_; }
    const std::string& detail() const { return message_; }

  private:
    std::string path_;
    std::string message_;
};

/// A config problem with a resolved source location; what() reads
/// "<file>:<line>: <message>".
class ConfigFileError : public ConfigError {
  public:
    ConfigFileError(const std::string& file, std::size_t line, const std::string& message)
        : ConfigError(file + ":" + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Default input modes per photon count: 1 -> {0}, 2 -> {0,3}, 3 -> {0,1,3}, 4 -> {0,1,2,3}.
std::vector<int> default_input_modes(int n_ph);

/// Parses and validates; errors are ConfigFileError with line numbers.
/// Out-of-range feedback/input weights are wrapped into [-pi, pi) and
/// reported through `notes`.
ExperimentConfig parse_config(std::string_view text, const std::string& source = "<config>",
                              std::vector<std::string>* notes = nullptr);
ExperimentConfig load_config(const std::filesystem::path& path, std::vector<std::string>* notes = nullptr);

/// Cross-field checks; throws FieldError.
void validate_config(const ExperimentConfig& config);

/// Resolved config as pretty-printed JSON.
std::string resolved_config_json(const ExperimentConfig& config);

/// 1-based line of the field at `path` ("a.b.c") in `text`; 1 if not found.
std::size_t locate_field(std::string_view text, const std::string& path);

std::string version_string();

} // namespace qrc
