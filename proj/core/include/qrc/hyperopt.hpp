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
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrc/random.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

/// One point of the reservoir + readout hyperparameter space.
struct TrialParams {
    double a_in = 0.0;
    double a_fb_D = 0.0;
    double a_fb_4 = 0.0;
    double a_fb_B = 0.0;
    std::size_t mu_prime = 0;
    std::size_t mu_dprime = 0;
    std::size_t mu_tprime = 0;
    double ridge_alpha = 1e-8;
    std::size_t washout = 10;

    /// Copies the reservoir-side fields into `base`.
    ReservoirConfig apply(ReservoirConfig base) const;
};

struct SearchSpace {
    double phase_lo = -3.14159265358979323846;
    double phase_hi = 3.14159265358979323846;
    std::size_t outcomes = 10; // mu indices range over [0, outcomes)
    double alpha_lo = 1e-25;
    double alpha_hi = 1e-1;
    std::size_t washout_lo = 3;
    std::size_t washout_hi = 50;
    FeedbackMode feedback_mode = FeedbackMode::TwoStep;

    void validate() const;
    bool contains(const TrialParams& p) const;
    /// Samples every dimension independently (log-uniform for alpha).
    TrialParams sample_uniform(Rng& rng) const;
};

enum class TrialStatus { Complete, Failed };

struct Trial {
    std::size_t index = 0;
    TrialParams params;
    double objective = 0.0; // lower is better
    std::uint64_t seed = 0;
    TrialStatus status = TrialStatus::Complete;
    double duration_s = 0.0;
    std::string error;
};

/// Proposes the next point given the completed history.
class Sampler {
  public:
    virtual ~Sampler() = default;
    virtual std::string name() const = 0;
    virtual TrialParams propose(const SearchSpace& space, std::span<const Trial> history, Rng& rng) const = 0;
};

class RandomSampler final : public Sampler {
  public:
    std::string name() const override { return "random"; }
    TrialParams propose(const SearchSpace& space, std::span<const Trial> history, Rng& rng) const override;
};

/// Exploits the best `gamma` quantile of completed trials: after
/// `startup` uniform trials, each proposal perturbs a randomly chosen
/// elite point with Gaussian kernels of width `bandwidth` (as a fraction
/// of each range, log scale for alpha); categorical indices are copied
/// from the elite point or resampled uniformly with probability `explore`.
class KdeSampler final : public Sampler {
  public:
    KdeSampler(std::size_t startup = 20, double gamma = 0.2, double bandwidth = 0.1, double explore = 0.2)
        : startup_(startup), gamma_(gamma), bandwidth_(bandwidth), explore_(explore) {}
    std::string name() const override { return "kde"; }
    TrialParams propose(const SearchSpace& space, std::span<const Trial> history, Rng& rng) const override;

  private:
    std::size_t startup_;
    double gamma_;
    double bandwidth_;
    double explore_;
};

std::unique_ptr<Sampler> make_sampler(const std::string& name);

/// Objective over (params, per-trial seed); lower is better.
using Objective = std::function<double(const TrialParams&, std::uint64_t seed)>;

struct OptimizeResult {
    std::optional<Trial> best; // empty when every trial failed
    std::vector<Trial> log;    // in trial-index order
};

/// Proposals are made in fixed batches of `kBatch`, so the trial log is
/// independent of `jobs`. Non-finite objectives and exceptions mark the
/// trial failed; failed trials count against the budget.
OptimizeResult optimize(const SearchSpace& space, const Objective& objective, std::size_t budget,
                        std::uint64_t seed, const Sampler& sampler = RandomSampler{}, std::size_t jobs = 1);

inline constexpr std::size_t kProposalBatch = 8;

/// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

} // namespace qrc
