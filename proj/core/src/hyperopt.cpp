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

#include "qrc/hyperopt.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "qrc/errors.hpp"

namespace qrc {

ReservoirConfig TrialParams::apply(ReservoirConfig base) const {
    base.a_in = a_in;
    base.a_fb_D = a_fb_D;
    base.a_fb_4 = a_fb_4;
    base.a_fb_B = a_fb_B;
    base.mu_prime = mu_prime;
    base.mu_dprime = mu_dprime;
    base.mu_tprime = mu_tprime;
    return base;
}

void SearchSpace::validate() const {
    if (!(phase_lo < phase_hi)) throw ConfigError("search space: phase_lo must be < phase_hi");
    if (outcomes < 1) throw ConfigError("search space: outcome set is empty");
    if (!(alpha_lo > 0.0 && alpha_lo <= alpha_hi))
        throw ConfigError(fmt::format("search space: need 0 < alpha_lo <= alpha_hi, got [{}, {}]", alpha_lo, alpha_hi));
    if (washout_lo > washout_hi)
        throw ConfigError(fmt::format("search space: washout range [{}, {}] is empty", washout_lo, washout_hi));
}

bool SearchSpace::contains(const TrialParams& p) const {
    auto in = [&](double v) { return v >= phase_lo && v <= phase_hi; };
    return in(p.a_in) && in(p.a_fb_D) && in(p.a_fb_4) && in(p.a_fb_B) && p.mu_prime < outcomes &&
           p.mu_dprime < outcomes && p.mu_tprime < outcomes && p.ridge_alpha >= alpha_lo &&
           p.ridge_alpha <= alpha_hi && p.washout >= washout_lo && p.washout <= washout_hi;
}

TrialParams SearchSpace::sample_uniform(Rng& rng) const {
    auto phase = [&] { return phase_lo + (phase_hi - phase_lo) * uniform01(rng); };
    TrialParams p;
    p.a_in = phase();
    p.a_fb_D = phase();
    p.a_fb_4 = phase();
    p.a_fb_B = feedback_mode == FeedbackMode::ThreeLoop ? phase() : 0.0;
    p.mu_prime = uniform_index(rng, outcomes);
    p.mu_dprime = uniform_index(rng, outcomes);
    p.mu_tprime = feedback_mode == FeedbackMode::ThreeLoop ? uniform_index(rng, outcomes) : 0;
    const double la = std::log10(alpha_lo);
    const double lb = std::log10(alpha_hi);
    p.ridge_alpha = std::pow(10.0, la + (lb - la) * uniform01(rng));
    p.washout = washout_lo + uniform_index(rng, washout_hi - washout_lo + 1);
    return p;
}

TrialParams RandomSampler::propose(const SearchSpace& space, std::span<const Trial>, Rng& rng) const {
    return space.sample_uniform(rng);
}

namespace {

double gaussian(Rng& rng) {
    // Box-Muller on library-independent uniforms.
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

double perturb(double v, double lo, double hi, double width, Rng& rng) {
    // Reflect at the bounds so the density stays inside the range.
    double x = v + width * (hi - lo) * gaussian(rng);
    for (int i = 0; i < 8 && (x < lo || x > hi); ++i) x = x < lo ? 2 * lo - x : 2 * hi - x;
    return std::clamp(x, lo, hi);
}

} // namespace

TrialParams KdeSampler::propose(const SearchSpace& space, std::span<const Trial> history, Rng& rng) const {
    std::vector<const Trial*> done;
    for (const auto& t : history)
        if (t.status == TrialStatus::Complete) done.push_back(&t);
    if (done.size() < std::max<std::size_t>(startup_, 1)) return space.sample_uniform(rng);

    std::stable_sort(done.begin(), done.end(), [](const Trial* a, const Trial* b) { return a->objective < b->objective; });
    const auto n_elite = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(gamma_ * static_cast<double>(done.size()))));
    const TrialParams& e = done[uniform_index(rng, n_elite)]->params;

    TrialParams p = e;
    p.a_in = perturb(e.a_in, space.phase_lo, space.phase_hi, bandwidth_, rng);
    p.a_fb_D = perturb(e.a_fb_D, space.phase_lo, space.phase_hi, bandwidth_, rng);
    p.a_fb_4 = perturb(e.a_fb_4, space.phase_lo, space.phase_hi, bandwidth_, rng);
    if (space.feedback_mode == FeedbackMode::ThreeLoop)
        p.a_fb_B = perturb(e.a_fb_B, space.phase_lo, space.phase_hi, bandwidth_, rng);
    auto categorical = [&](std::size_t v) { return uniform01(rng) < explore_ ? uniform_index(rng, space.outcomes) : v; };
    p.mu_prime = categorical(e.mu_prime);
    p.mu_dprime = categorical(e.mu_dprime);
    if (space.feedback_mode == FeedbackMode::ThreeLoop) p.mu_tprime = categorical(e.mu_tprime);
    const double la = std::log10(space.alpha_lo);
    const double lb = std::log10(space.alpha_hi);
    p.ridge_alpha = std::pow(10.0, perturb(std::log10(e.ridge_alpha), la, lb, bandwidth_, rng));
    const double w = perturb(static_cast<double>(e.washout), static_cast<double>(space.washout_lo),
                             static_cast<double>(space.washout_hi), bandwidth_, rng);
    p.washout = static_cast<std::size_t>(std::llround(w));
    return p;
}

std::unique_ptr<Sampler> make_sampler(const std::string& name) {
    if (name == "random") return std::make_unique<RandomSampler>();
    if (name == "kde") return std::make_unique<KdeSampler>();
    throw ConfigError(fmt::format("unknown sampler '{}' (expected random or kde)", name));
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w)
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    workers.clear();
    if (first_error) std::rethrow_exception(first_error);
}

OptimizeResult optimize(const SearchSpace& space, const Objective& objective, std::size_t budget,
                        std::uint64_t seed, const Sampler& sampler, std::size_t jobs) {
    space.validate();
    if (budget < 1) throw ConfigError("hyperopt budget must be >= 1");

    OptimizeResult result;
    result.log.reserve(budget);
    for (std::size_t start = 0; start < budget; start += kProposalBatch) {
        const std::size_t count = std::min(kProposalBatch, budget - start);
        std::vector<Trial> batch(count);
        for (std::size_t j = 0; j < count; ++j) {
            Trial& t = batch[j];
            t.index = start + j;
            t.seed = derive_seed(seed, t.index);
            Rng rng(t.seed);
            t.params = sampler.propose(space, result.log, rng);
        }
        parallel_for(count, jobs, [&](std::size_t j) {
            Trial& t = batch[j];
            const auto t0 = std::chrono::steady_clock::now();
            try {
                t.objective = objective(t.params, t.seed);
                if (!std::isfinite(t.objective)) {
                    t.status = TrialStatus::Failed;
                    t.error = "non-finite objective";
                }
            } catch (const std::exception& ex) {
                t.status = TrialStatus::Failed;
                t.error = ex.what();
            }
            t.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        });
        for (auto& t : batch) {
            if (t.status == TrialStatus::Complete && (!result.best || t.objective < result.best->objective))
                result.best = t;
            result.log.push_back(std::move(t));
        }
    }
    return result;
}

} // namespace qrc
