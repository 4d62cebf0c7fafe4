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

#include <atomic>
#include <cmath>
#include <numbers>

#include "qrc/errors.hpp"
#include "qrc/hyperopt.hpp"

using namespace qrc;

namespace {

double bowl(const TrialParams& p, std::uint64_t) {
    return (p.a_in - 0.5) * (p.a_in - 0.5) + (p.a_fb_D + 1.0) * (p.a_fb_D + 1.0);
}

} // namespace

TEST_CASE("budget of one runs one trial") {
    const auto r = optimize(SearchSpace{}, bowl, 1, 3);
    REQUIRE(r.log.size() == 1);
    REQUIRE(r.best);
    CHECK(r.best->index == 0);
    CHECK(r.best->objective == r.log[0].objective);
    CHECK_THROWS_AS(optimize(SearchSpace{}, bowl, 0, 3), ConfigError);
}

TEST_CASE("samples stay inside the space") {
    const SearchSpace space;
    Rng rng(1);
    std::size_t low_alpha = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto p = space.sample_uniform(rng);
        CHECK(space.contains(p));
        CHECK(p.mu_prime < 10);
        CHECK((p.washout >= 3 && p.washout <= 50));
        low_alpha += p.ridge_alpha < 1e-13;
    }
    // Log-uniform: half the draws fall below the geometric midpoint.
    CHECK(low_alpha > 900);
    CHECK(low_alpha < 1100);
}

TEST_CASE("convex objective reaches the minimum") {
    for (const std::string name : {"random", "kde"}) {
        const auto sampler = make_sampler(name);
        const auto r = optimize(SearchSpace{}, bowl, 400, 7, *sampler);
        REQUIRE(r.best);
        CHECK(r.best->objective < 0.05);
        for (const auto& t : r.log) CHECK(r.best->objective <= t.objective);
    }
    CHECK_THROWS_AS(make_sampler("grid"), ConfigError);
}

TEST_CASE("search is deterministic and independent of jobs") {
    const auto a = optimize(SearchSpace{}, bowl, 30, 11, KdeSampler(8));
    const auto b = optimize(SearchSpace{}, bowl, 30, 11, KdeSampler(8), 3);
    REQUIRE(a.log.size() == b.log.size());
    for (std::size_t i = 0; i < a.log.size(); ++i) {
        CHECK(a.log[i].seed == b.log[i].seed);
        CHECK(a.log[i].objective == b.log[i].objective);
        CHECK(a.log[i].params.mu_prime == b.log[i].params.mu_prime);
    }
    CHECK(optimize(SearchSpace{}, bowl, 30, 12).log[0].objective != a.log[0].objective);
}

TEST_CASE("failed trials are logged and skipped") {
    const Objective flaky = [](const TrialParams& p, std::uint64_t) {
        if (p.mu_prime % 2 == 0) throw std::runtime_error("diverged");
        if (p.mu_prime == 9) return std::nan("");
        return bowl(p, 0);
    };
    const auto r = optimize(SearchSpace{}, flaky, 50, 5);
    std::size_t failed = 0;
    for (const auto& t : r.log) {
        if (t.status == TrialStatus::Failed) {
            ++failed;
            CHECK(!t.error.empty());
            CHECK((t.params.mu_prime % 2 == 0 || t.params.mu_prime == 9));
        }
    }
    CHECK(failed > 0);
    REQUIRE(r.best);
    CHECK(r.best->status == TrialStatus::Complete);

    const auto none = optimize(SearchSpace{}, [](const TrialParams&, std::uint64_t) -> double { throw std::runtime_error("x"); }, 5, 1);
    CHECK(!none.best);
    CHECK(none.log.size() == 5);
}

TEST_CASE("wrapped table weights lie in the phase range") {
    const SearchSpace space;
    TrialParams p;
    p.a_fb_D = 5.94;
    CHECK(!space.contains(p));
    p.a_fb_D = wrap_phase(5.94);
    CHECK(space.contains(p));
    p.a_in = 3.14;
    CHECK(space.contains(p));
    p.ridge_alpha = 1.0;
    CHECK(!space.contains(p));
}

TEST_CASE("parallel_for covers every index once") {
    std::vector<std::atomic<int>> hits(37);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS(parallel_for(5, 2, [](std::size_t i) {
        if (i == 3) throw std::runtime_error("boom");
    }));
}
