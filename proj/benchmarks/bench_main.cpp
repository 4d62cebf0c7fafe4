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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qrc/circuit.hpp"
#include "qrc/fock.hpp"
#include "qrc/readout.hpp"
#include "qrc/reservoir.hpp"

namespace {

qrc::ComplexMatrix random_matrix(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    qrc::ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
    return a;
}

void BM_Permanent(benchmark::State& state) {
    const auto a = random_matrix(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(qrc::permanent(a));
}
BENCHMARK(BM_Permanent)->DenseRange(2, 12, 2);

std::vector<int> modes_for(int n) {
    static const std::vector<std::vector<int>> table{{0}, {0, 3}, {0, 1, 3}, {0, 1, 2, 3}};
    return table.at(static_cast<std::size_t>(n - 1));
}

void BM_Distribution(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const bool indist = state.range(1) != 0;
    const qrc::TransitionTable table(4, {modes_for(n), indist ? 1.0 : 0.0});
    const auto u = qrc::build_canonical_unitary(0.3, -1.1, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(table.mixed(u));
}
BENCHMARK(BM_Distribution)->ArgsProduct({{1, 2, 3, 4}, {0, 1}});

void BM_ReservoirRun(benchmark::State& state) {
    qrc::ReservoirConfig cfg;
    cfg.a_in = 1.3;
    cfg.a_fb_D = -0.7;
    cfg.a_fb_4 = 2.1;
    cfg.mu_prime = 3;
    cfg.mu_dprime = 7;
    if (state.range(1) > 0) cfg.n_shot = state.range(1);
    const qrc::Reservoir reservoir(cfg, qrc::PhotonInput::two_photon(1.0));
    std::vector<double> s(static_cast<std::size_t>(state.range(0)));
    std::mt19937_64 rng(3);
    for (auto& v : s) v = std::uniform_real_distribution<double>()(rng);
    for (auto _ : state) benchmark::DoNotOptimize(reservoir.features(s));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReservoirRun)->Args({500, 0})->Args({500, 10000});

void BM_RidgeFit(benchmark::State& state) {
    const auto rows = state.range(0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u;
    Eigen::MatrixXd x(rows, 10);
    std::vector<double> y(static_cast<std::size_t>(rows));
    for (Eigen::Index i = 0; i < rows; ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < 10; ++j) sum += x(i, j) = u(rng);
        x.row(i) /= sum;
        y[static_cast<std::size_t>(i)] = u(rng);
    }
    for (auto _ : state) benchmark::DoNotOptimize(qrc::ridge_fit(x, y, 1e-8, 10));
}
BENCHMARK(BM_RidgeFit)->Arg(400)->Arg(4000);

} // namespace
BENCHMARK_MAIN();
