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

#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qrc/errors.hpp"
#include "qrc/reservoir.hpp"

using namespace qrc;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform_inputs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> s(n);
    for (auto& x : s) x = uniform01(rng);
    return s;
}

ReservoirConfig random_config(std::mt19937_64& rng, FeedbackMode mode, std::size_t dim) {
    std::uniform_real_distribution<double> w(-kPi, kPi);
    ReservoirConfig c;
    c.a_in = w(rng);
    c.a_fb_D = w(rng);
    c.a_fb_4 = w(rng);
    c.a_fb_B = w(rng);
    c.mu_prime = uniform_index(rng, dim);
    c.mu_dprime = uniform_index(rng, dim);
    c.mu_tprime = uniform_index(rng, dim);
    c.feedback_mode = mode;
    return c;
}

} // namespace

TEST_CASE("noiseless loop matches the reference recursion") {
    std::mt19937_64 rng(11);
    const auto s = uniform_inputs(60, 1);
    struct Case {
        std::vector<int> modes;
        double v;
    };
    for (const Case& pc : {Case{{0}, 1.0}, Case{{0, 3}, 1.0}, Case{{0, 3}, 0.0}, Case{{0, 3}, 0.4}, Case{{0, 1, 3}, 1.0}}) {
        const PhotonInput photon(pc.modes, pc.v);
        const std::size_t dim = FockBasis(4, static_cast<int>(pc.modes.size())).size();
        for (auto mode : {FeedbackMode::Off, FeedbackMode::OneStep, FeedbackMode::TwoStep, FeedbackMode::ThreeLoop}) {
            const auto c = random_config(rng, mode, dim);
            const auto got = run_sequence(s, c, photon);
            const auto want = oracle::reservoir(s, c, pc.modes, pc.v);
            REQUIRE(got.size() == want.size());
            double worst = 0.0;
            for (std::size_t k = 0; k < got.size(); ++k) {
                worst = std::max(worst, std::abs(got[k].phases.phi_B - want[k].phi_B));
                worst = std::max(worst, std::abs(got[k].phases.phi_D - want[k].phi_D));
                worst = std::max(worst, std::abs(got[k].phases.phi_4 - want[k].phi_4));
                for (std::size_t i = 0; i < dim; ++i) worst = std::max(worst, std::abs(got[k].probs[i] - want[k].probs[i]));
            }
            CHECK(worst < 1e-10);
        }
    }
}

TEST_CASE("bootstrap history is zero") {
    ReservoirConfig c;
    c.a_in = 1.1;
    c.a_fb_D = 2.0;
    c.a_fb_4 = -1.5;
    c.mu_prime = 3;
    c.mu_dprime = 5;
    const auto rec = run_sequence(std::vector<double>{0.6, 0.2, 0.9}, c, PhotonInput::two_photon(1.0));
    CHECK(rec[0].phases.phi_B == doctest::Approx(0.66));
    CHECK(rec[0].phases.phi_D == 0.0);
    CHECK(rec[0].phases.phi_4 == 0.0);
    CHECK(rec[1].phases.phi_D == doctest::Approx(2.0 * rec[0].probs[3]));
    CHECK(rec[1].phases.phi_4 == 0.0);
    CHECK(rec[2].phases.phi_4 == doctest::Approx(-1.5 * rec[0].probs[5]));
}

TEST_CASE("causality: future inputs do not change past features") {
    std::mt19937_64 rng(12);
    for (auto noisy : {false, true}) {
        auto c = random_config(rng, FeedbackMode::TwoStep, 10);
        if (noisy) c.n_shot = 1000;
        c.seed = 9;
        auto s = uniform_inputs(40, 2);
        const Reservoir r(c, PhotonInput::two_photon(1.0));
        const auto a = r.features(s);
        for (std::size_t k = 20; k < s.size(); ++k) s[k] = 1.0 - s[k];
        const auto b = r.features(s);
        CHECK(a.topRows(20) == b.topRows(20));
        CHECK(a.bottomRows(20) != b.bottomRows(20));
    }
}

TEST_CASE("feedback off is memoryless") {
    std::mt19937_64 rng(13);
    const auto c = random_config(rng, FeedbackMode::Off, 10);
    const Reservoir r(c, PhotonInput::two_photon(0.7));
    const std::vector<double> a{0.1, 0.5, 0.9, 0.5}, b{0.8, 0.3, 0.2, 0.5};
    const auto fa = r.features(a), fb = r.features(b);
    CHECK((fa.row(1) - fa.row(3)).norm() < 1e-15);
    CHECK((fa.row(3) - fb.row(3)).norm() < 1e-15);
}

TEST_CASE("feature matrix shape and row sums") {
    ReservoirConfig c;
    c.a_in = 2.0;
    c.a_fb_D = 1.0;
    c.a_fb_4 = 1.0;
    const auto rec = run_sequence(uniform_inputs(25, 3), c, PhotonInput::two_photon(1.0));
    const auto f = to_feature_matrix(rec);
    CHECK(f.rows() == 25);
    CHECK(f.cols() == 10);
    for (Eigen::Index k = 0; k < f.rows(); ++k) CHECK(std::abs(f.row(k).sum() - 1.0) < 1e-12);
}

TEST_CASE("sample_counts") {
    Rng rng(5);
    OutputDistribution d;
    d.probs = {0.0, 1.0, 0.0};
    CHECK(sample_counts(d, 1000, rng) == std::vector<std::int64_t>{0, 1000, 0});
    CHECK_THROWS_AS(sample_counts(d, 0, rng), ConfigError);

    d.probs = {0.2, 0.3, 0.5};
    const auto one = sample_counts(d, 1, rng);
    CHECK(std::accumulate(one.begin(), one.end(), std::int64_t{0}) == 1);

    // Means converge to n p within a few standard errors.
    std::vector<double> mean(3, 0.0);
    const int reps = 2000;
    for (int t = 0; t < reps; ++t) {
        const auto c = sample_counts(d, 100, rng);
        CHECK(std::accumulate(c.begin(), c.end(), std::int64_t{0}) == 100);
        for (std::size_t i = 0; i < 3; ++i) mean[i] += static_cast<double>(c[i]) / reps;
    }
    for (std::size_t i = 0; i < 3; ++i) {
        const double se = std::sqrt(100 * d[i] * (1 - d[i]) / reps);
        CHECK(std::abs(mean[i] - 100 * d[i]) < 5 * se);
    }
}

TEST_CASE("phase quantization and wrapping") {
    const double step = kDefaultPhaseStep;
    CHECK(quantize_phase(0.3, 0.0) == 0.3);
    CHECK(quantize_phase(step * 0.4, step) == 0.0);
    CHECK(quantize_phase(step * 0.6, step) == doctest::Approx(step));
    CHECK(quantize_phase(step * 0.5, step) == 0.0);
    CHECK(quantize_phase(step * 1.5, step) == doctest::Approx(2 * step));
    CHECK(quantize_phase(-step * 0.6, step) == doctest::Approx(-step));
    CHECK(wrap_phase(0.5) == doctest::Approx(0.5));
    CHECK(wrap_phase(5.94) == doctest::Approx(5.94 - 2 * kPi));
    CHECK(wrap_phase(-4.0) == doctest::Approx(-4.0 + 2 * kPi));

    ReservoirConfig c;
    c.a_in = 1.0;
    c.phase_step = step;
    const auto rec = run_sequence(std::vector<double>{0.123456}, c, PhotonInput::single_photon());
    const double q = rec[0].phases.phi_B / step;
    CHECK(std::abs(q - std::round(q)) < 1e-9);
}

TEST_CASE("shot noise: counts, seeds and replicas") {
    ReservoirConfig c;
    c.a_in = 2.0;
    c.a_fb_D = 1.5;
    c.a_fb_4 = -0.7;
    c.mu_prime = 1;
    c.mu_dprime = 4;
    c.n_shot = 500;
    c.seed = 42;
    const auto s = uniform_inputs(30, 4);
    const PhotonInput photon = PhotonInput::two_photon(1.0);
    const auto rec = run_sequence(s, c, photon);
    for (const auto& r : rec) {
        CHECK(std::accumulate(r.counts.begin(), r.counts.end(), std::int64_t{0}) == 500);
        for (std::size_t i = 0; i < r.counts.size(); ++i) CHECK(r.probs[i] == static_cast<double>(r.counts[i]) / 500.0);
    }
    CHECK(to_feature_matrix(run_sequence(s, c, photon)) == to_feature_matrix(rec));

    const auto reps = monte_carlo_replicas(s, c, photon, 3);
    REQUIRE(reps.size() == 3);
    CHECK(reps[0] == to_feature_matrix(rec));
    const Reservoir r(c, photon);
    CHECK(reps[2] == r.features(s, 44));
    CHECK(reps[1] != reps[0]);

    auto noiseless = c;
    noiseless.n_shot.reset();
    CHECK_THROWS_AS(monte_carlo_replicas(s, noiseless, photon, 2), ConfigError);
    CHECK(run_sequence(s, noiseless, photon)[0].counts.empty());
}

TEST_CASE("exact feedback keeps the phase trajectory noiseless") {
    ReservoirConfig c;
    c.a_in = 2.0;
    c.a_fb_D = 1.5;
    c.a_fb_4 = -0.7;
    c.mu_prime = 1;
    c.mu_dprime = 4;
    const auto s = uniform_inputs(20, 5);
    const auto exact = run_sequence(s, c, PhotonInput::two_photon(1.0));
    c.n_shot = 50;
    c.exact_feedback = true;
    const auto noisy = run_sequence(s, c, PhotonInput::two_photon(1.0));
    for (std::size_t k = 0; k < s.size(); ++k) CHECK(noisy[k].phases.phi_D == exact[k].phases.phi_D);
}

TEST_CASE("config validation") {
    ReservoirConfig c;
    c.mu_prime = 10;
    CHECK_THROWS_AS(c.validate(10), ConfigError);
    c.mu_prime = 0;
    c.a_fb_D = 4.0;
    CHECK_THROWS_AS(c.validate(10), ConfigError);
    c.a_fb_D = 3.14;
    CHECK_NOTHROW(c.validate(10));
    c.n_shot = 0;
    CHECK_THROWS_AS(c.validate(10), ConfigError);
    CHECK(feedback_mode_from_string("three_loop") == FeedbackMode::ThreeLoop);
    CHECK_THROWS_AS(feedback_mode_from_string("two"), ConfigError);
}
