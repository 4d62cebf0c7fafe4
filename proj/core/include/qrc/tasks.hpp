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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qrc {

enum class TaskKind { Memory, Monomial, Polynomial, Xor, Narma, MackeyGlass };

const char* to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& name);
/// Name of the order parameter: "d", "n", "N" or "t_f".
const char* order_name(TaskKind kind);

/// y_k = alpha y_{k-1} + beta y_{k-1} sum_{j=k-N}^{k-1} y_j
///       + gamma (u_{k-1}^3 + u_{k-1}^5) + delta,   u_k = mu + nu s_k
struct NarmaParams {
    double alpha = 0.3;
    double beta = 0.05;
    double gamma = 50.0;
    double delta = 0.1;
    double mu = 0.0;
    double nu = 0.2;
    /// |y_k| above this aborts generation.
    double divergence_bound = 1e6;
};

/// ds/dt = alpha s(t - tau) / (1 + s(t - tau)^beta) - gamma s(t)
struct MackeyGlassParams {
    double alpha = 0.2;
    double beta = 10.0;
    double gamma = 0.1;
    double tau = 17.0;
    double h = 0.1;               // RK4 step
    double history = 1.2;         // s(t) for t <= 0
    double sample_interval = 1.0; // integrated time per reservoir step
    double transient_taus = 10.0; // discarded lead-in, in units of tau
};

struct TaskSpec {
    TaskKind kind = TaskKind::Memory;
    int order = 1; // d, n, N or t_f depending on kind
    std::size_t K = 500;
    std::uint64_t seed = 0;
    NarmaParams narma;
    MackeyGlassParams mg;
    bool shuffle = false;

    void validate() const;
};

/// Inputs s in [0, 1] and targets y. Only [valid_from, valid_to) carries
/// well-defined targets; entries outside are zero.
struct Dataset {
    std::vector<double> inputs;
    std::vector<double> targets;
    std::size_t valid_from = 0;
    std::size_t valid_to = 0;

    std::size_t size() const { return inputs.size(); }
    std::size_t valid_count() const { return valid_to - valid_from; }
};

Dataset gen_memory(std::size_t K, int d, std::uint64_t seed);
Dataset gen_monomial(std::size_t K, int n);
Dataset gen_polynomial(std::size_t K, int N);
Dataset gen_xor(std::size_t K, int d, std::uint64_t seed);
Dataset gen_narma(std::size_t K, int N, std::uint64_t seed, const NarmaParams& params = {});
Dataset gen_mackey_glass(std::size_t K, int t_f, const MackeyGlassParams& params = {});

/// Raw RK4 trajectory sampled at every integrator step, t = h, 2h, ..., steps*h.
std::vector<double> integrate_mackey_glass(const MackeyGlassParams& params, std::size_t steps);

/// Applies one random permutation jointly to the valid (s, y) pairs.
Dataset shuffle_dataset(const Dataset& ds, std::uint64_t seed);

/// Dispatches on spec.kind; applies shuffle_dataset when spec.shuffle is set.
Dataset generate(const TaskSpec& spec);

} // namespace qrc
