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

#include "qrc/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "qrc/errors.hpp"
#include "qrc/random.hpp"

namespace qrc {

const char* to_string(TaskKind kind) {
    switch (kind) {
    case TaskKind::Memory: return "memory";
    case TaskKind::Monomial: return "monomial";
    case TaskKind::Polynomial: return "polynomial";
    case TaskKind::Xor: return "xor";
    case TaskKind::Narma: return "narma";
    case TaskKind::MackeyGlass: return "mackey_glass";
    }
    return "?";
}

TaskKind task_kind_from_string(const std::string& name) {
    for (auto k : {TaskKind::Memory, TaskKind::Monomial, TaskKind::Polynomial, TaskKind::Xor, TaskKind::Narma,
                   TaskKind::MackeyGlass})
        if (name == to_string(k)) return k;
    throw ConfigError(fmt::format(
        "unknown task kind '{}' (expected memory, monomial, polynomial, xor, narma, mackey_glass)", name));
}

const char* order_name(TaskKind kind) {
    switch (kind) {
    case TaskKind::Memory:
    case TaskKind::Xor: return "d";
    case TaskKind::Monomial: return "n";
    case TaskKind::Polynomial:
    case TaskKind::Narma: return "N";
    case TaskKind::MackeyGlass: return "t_f";
    }
    return "?";
}

void TaskSpec::validate() const {
    if (K < 10) throw ConfigError(fmt::format("task length K = {} must be >= 10", K));
    switch (kind) {
    case TaskKind::Memory:
        if (order < 0 || static_cast<std::size_t>(order) >= K)
            throw ConfigError(fmt::format("memory delay d = {} must lie in [0, K)", order));
        break;
    case TaskKind::Xor:
        if (order < 1 || static_cast<std::size_t>(order) >= K)
            throw ConfigError(fmt::format("XOR delay d = {} must lie in [1, K)", order));
        break;
    case TaskKind::Monomial:
    case TaskKind::Polynomial:
        if (order < 1) throw ConfigError(fmt::format("{} = {} must be >= 1", order_name(kind), order));
        break;
    case TaskKind::Narma:
        if (order < 1 || static_cast<std::size_t>(order) >= K)
            throw ConfigError(fmt::format("NARMA order N = {} must lie in [1, K)", order));
        break;
    case TaskKind::MackeyGlass: {
        if (order < 0 || static_cast<std::size_t>(order) >= K)
            throw ConfigError(fmt::format("horizon t_f = {} must lie in [0, K)", order));
        if (!(mg.h > 0.0)) throw ConfigError(fmt::format("Mackey-Glass step h = {} must be > 0", mg.h));
        const double ratio = mg.tau / mg.h;
        if (std::abs(ratio - std::round(ratio)) > 1e-9)
            throw ConfigError(fmt::format("tau / h = {} must be an integer", ratio));
        const double sub = mg.sample_interval / mg.h;
        if (!(mg.sample_interval > 0.0) || std::abs(sub - std::round(sub)) > 1e-9)
            throw ConfigError(fmt::format("sample_interval / h = {} must be a positive integer", sub));
        break;
    }
    }
}

Dataset gen_memory(std::size_t K, int d, std::uint64_t seed) {
    if (d < 0 || static_cast<std::size_t>(d) >= K)
        throw ConfigError(fmt::format("memory delay d = {} must lie in [0, {})", d, K));
    Rng rng(seed);
    Dataset ds{std::vector<double>(K), std::vector<double>(K, 0.0), static_cast<std::size_t>(d), K};
    for (auto& s : ds.inputs) s = uniform01(rng);
    for (std::size_t k = ds.valid_from; k < K; ++k) ds.targets[k] = ds.inputs[k - static_cast<std::size_t>(d)];
    return ds;
}

namespace {

std::vector<double> ordered_grid(std::size_t K) {
    if (K < 2) throw ConfigError(fmt::format("grid length K = {} must be >= 2", K));
    std::vector<double> s(K);
    for (std::size_t k = 0; k < K; ++k) s[k] = static_cast<double>(k) / static_cast<double>(K - 1);
    return s;
}

} // namespace

Dataset gen_monomial(std::size_t K, int n) {
    if (n < 1) throw ConfigError(fmt::format("monomial degree n = {} must be >= 1", n));
    Dataset ds{ordered_grid(K), std::vector<double>(K), 0, K};
    for (std::size_t k = 0; k < K; ++k) ds.targets[k] = std::pow(ds.inputs[k], n);
    return ds;
}

Dataset gen_polynomial(std::size_t K, int N) {
    if (N < 1) throw ConfigError(fmt::format("polynomial order N = {} must be >= 1", N));
    Dataset ds{ordered_grid(K), std::vector<double>(K), 0, K};
    for (std::size_t k = 0; k < K; ++k) {
        double acc = 0.0;
        for (int n = 1; n <= N; ++n) acc += ((n % 2 == 0) ? 1.0 : -1.0) * std::pow(ds.inputs[k], n);
        ds.targets[k] = acc;
    }
    return ds;
}

Dataset gen_xor(std::size_t K, int d, std::uint64_t seed) {
    if (d < 1 || static_cast<std::size_t>(d) >= K)
        throw ConfigError(fmt::format("XOR delay d = {} must lie in [1, {})", d, K));
    Rng rng(seed);
    Dataset ds{std::vector<double>(K), std::vector<double>(K, 0.0), static_cast<std::size_t>(d), K};
    for (auto& s : ds.inputs) s = static_cast<double>(rng() >> 63);
    for (std::size_t k = ds.valid_from; k < K; ++k)
        ds.targets[k] = (ds.inputs[k] != ds.inputs[k - static_cast<std::size_t>(d)]) ? 1.0 : 0.0;
    return ds;
}

Dataset gen_narma(std::size_t K, int N, std::uint64_t seed, const NarmaParams& p) {
    if (N < 1 || static_cast<std::size_t>(N) >= K)
        throw ConfigError(fmt::format("NARMA order N = {} must lie in [1, {})", N, K));
    Rng rng(seed);
    Dataset ds{std::vector<double>(K), std::vector<double>(K, 0.0), static_cast<std::size_t>(N), K};
    for (auto& s : ds.inputs) s = uniform01(rng);

    auto& y = ds.targets;
    const auto n = static_cast<std::size_t>(N);
    for (std::size_t k = n; k < K; ++k) {
        double window = 0.0;
        for (std::size_t j = k - n; j < k; ++j) window += y[j];
        const double u = p.mu + p.nu * ds.inputs[k - 1];
        y[k] = p.alpha * y[k - 1] + p.beta * y[k - 1] * window + p.gamma * (u * u * u + u * u * u * u * u) + p.delta;
        if (!std::isfinite(y[k]) || std::abs(y[k]) > p.divergence_bound)
            throw GenerationError(fmt::format(
                "NARMA-{} diverged at k = {} (y = {:.6g}, bound {:.3g}); seed {}", N, k, y[k], p.divergence_bound, seed));
    }
    return ds;
}

std::vector<double> integrate_mackey_glass(const MackeyGlassParams& p, std::size_t steps) {
    const auto lag = static_cast<std::size_t>(std::llround(p.tau / p.h));
    if (lag < 1 || std::abs(p.tau / p.h - static_cast<double>(lag)) > 1e-9)
        throw ConfigError(fmt::format("tau / h = {} must be a positive integer", p.tau / p.h));

    auto rhs = [&](double s, double delayed) {
        return p.alpha * delayed / (1.0 + std::pow(delayed, p.beta)) - p.gamma * s;
    };

    // Grid values and derivatives for t = -lag*h .. now; the delayed value at a
    // half step comes from cubic Hermite interpolation, which keeps RK4 at
    // fourth order.
    std::vector<double> s(lag + 1, p.history);
    std::vector<double> ds(lag + 1, 0.0);
    s.reserve(lag + 1 + steps);
    ds.reserve(lag + 1 + steps);
    // s' jumps at t = 0: the history side sees 0, the solution side the rhs.
    const double start_slope = rhs(p.history, p.history);

    std::vector<double> out;
    out.reserve(steps);
    const double h = p.h;
    for (std::size_t i = 0; i < steps; ++i) {
        const std::size_t now = lag + i;
        const std::size_t back = now - lag; // index of t - tau
        const double d0 = s[back];
        const double d1 = s[back + 1];
        const double slope0 = back == lag ? start_slope : ds[back];
        const double dmid = 0.5 * (d0 + d1) + h * (slope0 - ds[back + 1]) / 8.0;

        const double x = s[now];
        const double k1 = rhs(x, d0);
        const double k2 = rhs(x + 0.5 * h * k1, dmid);
        const double k3 = rhs(x + 0.5 * h * k2, dmid);
        const double k4 = rhs(x + h * k3, d1);
        const double next = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        s.push_back(next);
        ds.push_back(rhs(next, d1));
        out.push_back(next);
    }
    return out;
}

Dataset gen_mackey_glass(std::size_t K, int t_f, const MackeyGlassParams& p) {
    if (t_f < 0 || static_cast<std::size_t>(t_f) >= K)
        throw ConfigError(fmt::format("horizon t_f = {} must lie in [0, {})", t_f, K));
    if (!(p.h > 0.0)) throw ConfigError(fmt::format("Mackey-Glass step h = {} must be > 0", p.h));
    const double sub_ratio = p.sample_interval / p.h;
    const auto stride = static_cast<std::size_t>(std::llround(sub_ratio));
    if (stride < 1 || std::abs(sub_ratio - static_cast<double>(stride)) > 1e-9)
        throw ConfigError(fmt::format("sample_interval / h = {} must be a positive integer", sub_ratio));
    const auto transient = static_cast<std::size_t>(std::llround(p.transient_taus * p.tau / p.h));

    const std::vector<double> traj = integrate_mackey_glass(p, transient + K * stride);
    std::vector<double> raw(K);
    for (std::size_t k = 0; k < K; ++k) raw[k] = traj[transient + (k + 1) * stride - 1];

    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    const double range = *hi - *lo;
    Dataset ds{std::vector<double>(K, 0.0), std::vector<double>(K, 0.0), 0, K - static_cast<std::size_t>(t_f)};
    for (std::size_t k = 0; k < K; ++k) ds.inputs[k] = range > 0.0 ? (raw[k] - *lo) / range : 0.0;
    for (std::size_t k = 0; k < ds.valid_to; ++k) ds.targets[k] = ds.inputs[k + static_cast<std::size_t>(t_f)];
    return ds;
}

Dataset shuffle_dataset(const Dataset& ds, std::uint64_t seed) {
    Dataset out = ds;
    const std::size_t n = ds.valid_count();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    // Fisher-Yates with a library-independent index draw.
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
    for (std::size_t i = 0; i < n; ++i) {
        out.inputs[ds.valid_from + i] = ds.inputs[ds.valid_from + perm[i]];
        out.targets[ds.valid_from + i] = ds.targets[ds.valid_from + perm[i]];
    }
    return out;
}

Dataset generate(const TaskSpec& spec) {
    spec.validate();
    Dataset ds;
    switch (spec.kind) {
    case TaskKind::Memory: ds = gen_memory(spec.K, spec.order, spec.seed); break;
    case TaskKind::Monomial: ds = gen_monomial(spec.K, spec.order); break;
    case TaskKind::Polynomial: ds = gen_polynomial(spec.K, spec.order); break;
    case TaskKind::Xor: ds = gen_xor(spec.K, spec.order, spec.seed); break;
    case TaskKind::Narma: ds = gen_narma(spec.K, spec.order, spec.seed, spec.narma); break;
    case TaskKind::MackeyGlass: ds = gen_mackey_glass(spec.K, spec.order, spec.mg); break;
    }
    if (spec.shuffle) ds = shuffle_dataset(ds, derive_seed(spec.seed, 0x5f));
    return ds;
}

} // namespace qrc
