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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qrc/circuit.hpp"
#include "qrc/fock.hpp"
#include "qrc/random.hpp"

namespace qrc {

/// Which past outputs drive the feedback phases at step k.
///
///  - Off:       phi_D = phi_4 = 0
///  - OneStep:   phi_D = a_fb_D p_{k-1}(mu'),  phi_4 = a_fb_4 p_{k-1}(mu'')
///  - TwoStep:   phi_D = a_fb_D p_{k-1}(mu'),  phi_4 = a_fb_4 p_{k-2}(mu'')
///  - ThreeLoop: TwoStep, plus a_fb_B p_{k-3}(mu''') added to phi_B
enum class FeedbackMode { Off, OneStep, TwoStep, ThreeLoop };

const char* to_string(FeedbackMode mode);
FeedbackMode feedback_mode_from_string(const std::string& name);

/// Resolution used by the "discretized phase" studies when none is given.
inline constexpr double kDefaultPhaseStep = 2.0 * 3.14159265358979323846 / 512.0;

struct ReservoirConfig {
    double a_in = 0.0;   // rad per unit input
    double a_fb_D = 0.0; // rad per unit probability
    double a_fb_4 = 0.0;
    double a_fb_B = 0.0; // third loop, ThreeLoop mode only
    std::size_t mu_prime = 0;
    std::size_t mu_dprime = 0;
    std::size_t mu_tprime = 0;
    FeedbackMode feedback_mode = FeedbackMode::TwoStep;
    /// Detection events per step; nullopt means exact probabilities.
    std::optional<std::int64_t> n_shot;
    double phase_step = 0.0; // 0 = continuous phases
    std::uint64_t seed = 0;
    /// Drive feedback from exact probabilities even when sampling.
    bool exact_feedback = false;

    bool noiseless() const { return !n_shot.has_value(); }
    /// Throws ConfigError on out-of-range weights, outcome indices or noise settings.
    void validate(std::size_t basis_size) const;
};

struct StepRecord {
    std::size_t k = 0;
    double s = 0.0;
    CircuitPhases phases;       // as applied, after quantization
    OutputDistribution probs;   // empirical when sampled
    std::vector<std::int64_t> counts; // empty when noiseless
};

/// K x D matrix of per-step outcome probabilities, one row per step.
using FeatureMatrix = Eigen::MatrixXd;

FeatureMatrix to_feature_matrix(std::span<const StepRecord> records);

/// Nearest multiple of `step` (ties to even); pass-through for step == 0.
double quantize_phase(double phi, double step);

/// Wraps an angle into [-pi, pi).
double wrap_phase(double phi);

/// Multinomial draw of n_shot events over the distribution's outcomes.
std::vector<std::int64_t> sample_counts(const OutputDistribution& dist, std::int64_t n_shot, Rng& rng);

/// Stateless engine for the encode -> evolve -> measure -> feedback loop.
/// Construct once per (config, photon input); run() may be called from
/// several threads.
class Reservoir {
  public:
    Reservoir(ReservoirConfig config, PhotonInput photon);

    const ReservoirConfig& config() const { return config_; }
    const FockBasis& basis() const { return table_.basis(); }
    const TransitionTable& transitions() const { return table_; }

    std::vector<StepRecord> run(std::span<const double> inputs) const;
    /// Same dynamics as run() with a different seed, without the record overhead.
    FeatureMatrix features(std::span<const double> inputs) const;
    FeatureMatrix features(std::span<const double> inputs, std::uint64_t seed) const;

  private:
    template <class Sink>
    void drive(std::span<const double> inputs, std::uint64_t seed, Sink&& sink) const;

    ReservoirConfig config_;
    TransitionTable table_;
};

std::vector<StepRecord> run_sequence(std::span<const double> inputs, const ReservoirConfig& config,
                                     const PhotonInput& photon);

/// Independent sampled runs with seeds config.seed + i. Requires finite n_shot.
std::vector<FeatureMatrix> monte_carlo_replicas(std::span<const double> inputs, const ReservoirConfig& config,
                                                const PhotonInput& photon, std::size_t n_replicas);

} // namespace qrc
