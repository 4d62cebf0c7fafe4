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

#include "qrc/reservoir.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qrc/errors.hpp"

namespace qrc {

namespace {

constexpr double kPi = std::numbers::pi;

void check_weight(const char* name, double w) {
    // Table values such as 3.14 are rounded pi; allow that much slack.
    if (!std::isfinite(w) || std::abs(w) > kPi + 1e-9)
        throw ConfigError(fmt::format("{} = {} outside [-pi, pi]", name, w));
}

void check_outcome(const char* name, std::size_t mu, std::size_t basis_size) {
    if (mu >= basis_size)
        throw ConfigError(fmt::format("{} = {}: outcome index >= {}", name, mu, basis_size));
}

} // namespace

const char* to_string(FeedbackMode mode) {
    switch (mode) {
    case FeedbackMode::Off: return "off";
    case FeedbackMode::OneStep: return "one_step";
    case FeedbackMode::TwoStep: return "two_step";
    case FeedbackMode::ThreeLoop: return "three_loop";
    }
    return "?";
}

FeedbackMode feedback_mode_from_string(const std::string& name) {
    if (name == "off") return FeedbackMode::Off;
    if (name == "one_step") return FeedbackMode::OneStep;
    if (name == "two_step") return FeedbackMode::TwoStep;
    if (name == "three_loop") return FeedbackMode::ThreeLoop;
    throw ConfigError(fmt::format("unknown feedback_mode '{}' (expected off, one_step, two_step, three_loop)", name));
}

void ReservoirConfig::validate(std::size_t basis_size) const {
    check_weight("a_in", a_in);
    check_weight("a_fb_D", a_fb_D);
    check_weight("a_fb_4", a_fb_4);
    check_weight("a_fb_B", a_fb_B);
    check_outcome("mu_prime", mu_prime, basis_size);
    check_outcome("mu_dprime", mu_dprime, basis_size);
    if (feedback_mode == FeedbackMode::ThreeLoop) check_outcome("mu_tprime", mu_tprime, basis_size);
    if (n_shot && *n_shot < 1) throw ConfigError(fmt::format("n_shot must be >= 1, got {}", *n_shot));
    if (!(phase_step >= 0.0) || !std::isfinite(phase_step))
        throw ConfigError(fmt::format("phase_step must be finite and >= 0, got {}", phase_step));
}

FeatureMatrix to_feature_matrix(std::span<const StepRecord> records) {
    if (records.empty()) return {};
    const auto d = static_cast<Eigen::Index>(records.front().probs.size());
    FeatureMatrix x(static_cast<Eigen::Index>(records.size()), d);
    for (std::size_t k = 0; k < records.size(); ++k)
        for (Eigen::Index j = 0; j < d; ++j) x(static_cast<Eigen::Index>(k), j) = records[k].probs[static_cast<std::size_t>(j)];
    return x;
}

double quantize_phase(double phi, double step) {
    if (step == 0.0) return phi;
    // nearbyint honours the default round-to-nearest-even mode.
    return std::nearbyint(phi / step) * step;
}

double wrap_phase(double phi) {
    double w = std::fmod(phi + kPi, 2.0 * kPi);
    if (w < 0) w += 2.0 * kPi;
    return w - kPi;
}

std::vector<std::int64_t> sample_counts(const OutputDistribution& dist, std::int64_t n_shot, Rng& rng) {
    if (n_shot < 1) throw ConfigError(fmt::format("n_shot must be >= 1, got {}", n_shot));
    // Sequential conditional binomials: outcome i takes Bin(remaining, p_i / mass_left).
    std::vector<std::int64_t> counts(dist.size(), 0);
    std::int64_t remaining = n_shot;
    double mass_left = dist.total();
    for (std::size_t i = 0; i + 1 < dist.size() && remaining > 0; ++i) {
        const double p = dist[i];
        if (p <= 0.0) continue;
        const double q = mass_left > 0.0 ? std::min(1.0, p / mass_left) : 1.0;
        std::binomial_distribution<std::int64_t> bin(remaining, q);
        counts[i] = bin(rng);
        remaining -= counts[i];
        mass_left -= p;
    }
    if (!counts.empty()) counts.back() += remaining;
    return counts;
}

Reservoir::Reservoir(ReservoirConfig config, PhotonInput photon)
    : config_(std::move(config)), table_(4, photon) {
    config_.validate(table_.basis().size());
}

template <class Sink>
void Reservoir::drive(std::span<const double> inputs, std::uint64_t seed, Sink&& sink) const {
    const std::size_t dim = table_.basis().size();
    const std::vector<double> zeros(dim, 0.0);
    // history[0] = p_{k-1}, history[1] = p_{k-2}, history[2] = p_{k-3}
    std::array<std::vector<double>, 3> history{zeros, zeros, zeros};
    Rng rng(seed);

    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const double s = inputs[k];
        if (std::isnan(s)) throw InputError(fmt::format("input s_{} is NaN", k));
        if (s < 0.0 || s > 1.0) throw InputError(fmt::format("input s_{} = {} outside [0, 1]", k, s));

        CircuitPhases ph;
        ph.phi_B = config_.a_in * s;
        switch (config_.feedback_mode) {
        case FeedbackMode::Off: break;
        case FeedbackMode::OneStep:
            ph.phi_D = config_.a_fb_D * history[0][config_.mu_prime];
            ph.phi_4 = config_.a_fb_4 * history[0][config_.mu_dprime];
            break;
        case FeedbackMode::TwoStep:
            ph.phi_D = config_.a_fb_D * history[0][config_.mu_prime];
            ph.phi_4 = config_.a_fb_4 * history[1][config_.mu_dprime];
            break;
        case FeedbackMode::ThreeLoop:
            ph.phi_D = config_.a_fb_D * history[0][config_.mu_prime];
            ph.phi_4 = config_.a_fb_4 * history[1][config_.mu_dprime];
            ph.phi_B += config_.a_fb_B * history[2][config_.mu_tprime];
            break;
        }
        ph.phi_B = quantize_phase(ph.phi_B, config_.phase_step);
        ph.phi_D = quantize_phase(ph.phi_D, config_.phase_step);
        ph.phi_4 = quantize_phase(ph.phi_4, config_.phase_step);

        OutputDistribution exact = table_.mixed(build_canonical_unitary(ph));
        std::vector<std::int64_t> counts;
        OutputDistribution observed;
        if (config_.n_shot) {
            counts = sample_counts(exact, *config_.n_shot, rng);
            observed.probs.resize(dim);
            const double n = static_cast<double>(*config_.n_shot);
            for (std::size_t i = 0; i < dim; ++i) observed.probs[i] = static_cast<double>(counts[i]) / n;
        } else {
            observed = exact;
        }

        std::rotate(history.rbegin(), history.rbegin() + 1, history.rend());
        history[0] = (config_.n_shot && !config_.exact_feedback) ? observed.probs : exact.probs;

        sink(k, s, ph, std::move(observed), std::move(counts));
    }
}

std::vector<StepRecord> Reservoir::run(std::span<const double> inputs) const {
    std::vector<StepRecord> records;
    records.reserve(inputs.size());
    drive(inputs, config_.seed,
          [&](std::size_t k, double s, const CircuitPhases& ph, OutputDistribution&& p, std::vector<std::int64_t>&& c) {
              records.push_back({k, s, ph, std::move(p), std::move(c)});
          });
    return records;
}

FeatureMatrix Reservoir::features(std::span<const double> inputs) const { return features(inputs, config_.seed); }

FeatureMatrix Reservoir::features(std::span<const double> inputs, std::uint64_t seed) const {
    FeatureMatrix x(static_cast<Eigen::Index>(inputs.size()), static_cast<Eigen::Index>(table_.basis().size()));
    drive(inputs, seed,
          [&](std::size_t k, double, const CircuitPhases&, OutputDistribution&& p, std::vector<std::int64_t>&&) {
              for (std::size_t j = 0; j < p.size(); ++j)
                  x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = p[j];
          });
    return x;
}

std::vector<StepRecord> run_sequence(std::span<const double> inputs, const ReservoirConfig& config,
                                     const PhotonInput& photon) {
    return Reservoir(config, photon).run(inputs);
}

std::vector<FeatureMatrix> monte_carlo_replicas(std::span<const double> inputs, const ReservoirConfig& config,
                                                const PhotonInput& photon, std::size_t n_replicas) {
    if (!config.n_shot)
        throw ConfigError("Monte Carlo replicas need a finite n_shot; noiseless runs are identical");
    if (n_replicas < 1) throw ConfigError("n_replicas must be >= 1");
    const Reservoir reservoir(config, photon);
    std::vector<FeatureMatrix> out;
    out.reserve(n_replicas);
    for (std::size_t i = 0; i < n_replicas; ++i) out.push_back(reservoir.features(inputs, config.seed + i));
    return out;
}

} // namespace qrc
