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

// JSON conversions shared by the config loader and the result writer.

#include <json.hpp>

#include "qrc/config.hpp"
#include "qrc/hyperopt.hpp"
#include "qrc/readout.hpp"

namespace qrc::detail {

using nlohmann::ordered_json;

ordered_json to_json(const ExperimentConfig& config);
ordered_json to_json(const TrialParams& params);
ordered_json to_json(const MetricsReport& report);

/// Finite doubles as numbers, NaN/inf as null.
ordered_json number_or_null(double v);

} // namespace qrc::detail
