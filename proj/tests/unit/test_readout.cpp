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

#include <random>

#include "oracles.hpp"
#include "qrc/errors.hpp"
#include "qrc/readout.hpp"

using namespace qrc;

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd x(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) x(i, j) = g(rng);
    return x;
}

std::vector<std::vector<double>> rows_of(const Eigen::MatrixXd& x) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        out[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(x.cols()));
        for (Eigen::Index j = 0; j < x.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x(i, j);
    }
    return out;
}

double weight_norm(const ReadoutModel& m) { return static_cast<double>(m.weights.norm()); }

} // namespace

TEST_CASE("ridge matches the bordered normal equations") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 10; ++t) {
        const Eigen::MatrixXd x = random_matrix(20, 5, rng);
        std::vector<double> y(20);
        std::normal_distribution<double> g;
        for (auto& v : y) v = g(rng);
        const auto want = oracle::ridge(rows_of(x), y, 0.1);
        const auto m = ridge_fit(x, y, 0.1, 0);
        for (int j = 0; j < 5; ++j) CHECK(std::abs(static_cast<double>(m.weights(j)) - want[static_cast<std::size_t>(j)]) < 1e-10);
        CHECK(std::abs(static_cast<double>(m.bias) - want[5]) < 1e-10);
        CHECK(m.residual < 1e-12);
    }
}

TEST_CASE("ridge interpolates an exact linear target") {
    std::mt19937_64 rng(2);
    const Eigen::MatrixXd x = random_matrix(30, 4, rng);
    const Eigen::Vector4d w(0.5, -1.0, 2.0, 0.25);
    const Eigen::VectorXd yv = (x * w).array() + 3.0;
    const std::vector<double> y(yv.data(), yv.data() + yv.size());
    const auto m = ridge_fit(x, y, 0.0, 0);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(static_cast<double>(m.weights(j)) - w(j)) < 1e-10);
    CHECK(std::abs(static_cast<double>(m.bias) - 3.0) < 1e-10);
    CHECK(mse_score(predict(m, x), y) < 1e-20);
}

TEST_CASE("regularization shrinks the weights") {
    std::mt19937_64 rng(3);
    const Eigen::MatrixXd x = random_matrix(40, 6, rng);
    std::vector<double> y(40);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x(static_cast<Eigen::Index>(i), 0) - 0.3 * x(static_cast<Eigen::Index>(i), 3);
    CHECK(weight_norm(ridge_fit(x, y, 1e12, 0)) < 1e-6);
    double prev = std::numeric_limits<double>::infinity();
    for (double a : {0.0, 1e-3, 1e-1, 1.0, 10.0, 1e3, 1e6}) {
        const double nrm = weight_norm(ridge_fit(x, y, a, 0));
        CHECK(nrm <= prev * (1 + 1e-12));
        prev = nrm;
    }
}

TEST_CASE("washout and input checks") {
    std::mt19937_64 rng(4);
    const Eigen::MatrixXd x = random_matrix(25, 3, rng);
    std::vector<double> y(25, 1.0);
    y[0] = 100.0;
    const auto m = ridge_fit(x, y, 0.0, 5);
    CHECK(m.rows_used == 20);
    CHECK(m.washout == 5);
    // Rows in the washout do not influence the fit.
    CHECK(std::abs(static_cast<double>(m.bias) - 1.0) < 1e-10);
    CHECK(weight_norm(m) < 1e-10);

    CHECK_THROWS_AS(ridge_fit(x, y, 0.1, 25), DimensionError);
    CHECK_THROWS_AS(ridge_fit(x, std::vector<double>(24, 0.0), 0.1, 0), DimensionError);
    CHECK_THROWS_AS(ridge_fit(x, y, -1.0, 0), ConfigError);
    CHECK_THROWS_AS(predict(m, random_matrix(2, 4, rng)), DimensionError);
}

TEST_CASE("collinear features fall back to the minimum-norm solution") {
    std::mt19937_64 rng(5);
    Eigen::MatrixXd x = random_matrix(20, 3, rng);
    x.col(2) = x.col(0);
    std::vector<double> y(20);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 2.0 * x(static_cast<Eigen::Index>(i), 0);
    const auto m = ridge_fit(x, y, 0.0, 0);
    CHECK(m.pseudoinverse);
    CHECK(std::abs(static_cast<double>(m.weights(0)) - 1.0) < 1e-10);
    CHECK(std::abs(static_cast<double>(m.weights(2)) - 1.0) < 1e-10);
}

TEST_CASE("predict is linear in the features") {
    std::mt19937_64 rng(6);
    const Eigen::MatrixXd x = random_matrix(30, 4, rng);
    std::vector<double> y(30);
    std::normal_distribution<double> g;
    for (auto& v : y) v = g(rng);
    const auto m = ridge_fit(x, y, 0.5, 0);
    const Eigen::MatrixXd a = random_matrix(5, 4, rng), b = random_matrix(5, 4, rng);
    const auto pa = predict(m, a), pb = predict(m, b), pab = predict(m, 2.0 * a + 3.0 * b);
    const double bias = static_cast<double>(m.bias);
    for (std::size_t i = 0; i < 5; ++i) CHECK(pab[i] - bias == doctest::Approx(2.0 * (pa[i] - bias) + 3.0 * (pb[i] - bias)));
}

TEST_CASE("scores") {
    const std::vector<double> t{1, 2, 3, 4};
    CHECK(r2_score(t, t) == doctest::Approx(1.0));
    CHECK(r2_score(std::vector<double>{2, 4, 6, 8}, t) == doctest::Approx(1.0));
    CHECK(r2_score(std::vector<double>{4, 3, 2, 1}, t) == doctest::Approx(1.0));
    CHECK(r2_score(std::vector<double>{5, 5, 5, 5}, t) == 0.0);
    CHECK(r2_is_degenerate(std::vector<double>{5, 5, 5, 5}, t));
    CHECK(r2_score(std::vector<double>{1, 3, 2, 4}, t) == doctest::Approx(0.64));

    CHECK(mse_score(std::vector<double>{1, 2, 3, 5}, t) == doctest::Approx(0.25));
    CHECK(mse_score(t, t) == 0.0);
    CHECK_THROWS_AS(mse_score(std::vector<double>{1}, t), DimensionError);

    CHECK(memory_capacity(std::vector<double>{1.0, 0.9, 0.5, 0.1}) == doctest::Approx(2.5));
    CHECK_THROWS_AS(memory_capacity(std::vector<double>{}), DimensionError);

    CHECK(binary_accuracy(std::vector<double>{0.2, 0.7, 0.5, 0.49}, std::vector<double>{0, 1, 0, 0}) ==
          doctest::Approx(0.75));
    CHECK_THROWS_AS(binary_accuracy(std::vector<double>{0.2}, std::vector<double>{0.5}), InputError);

    CHECK(min_max_normalize(std::vector<double>{2, 4, 3}) == std::vector<double>{0.0, 1.0, 0.5});
    CHECK(min_max_normalize(std::vector<double>{7, 7}) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("Gram rank agrees with an eigenvalue count") {
    std::mt19937_64 rng(7);
    for (int r : {1, 2, 4, 6}) {
        const Eigen::MatrixXd x = random_matrix(50, r, rng) * random_matrix(r, 6, rng);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.transpose() * x);
        const double top = es.eigenvalues().maxCoeff();
        const auto want = static_cast<std::size_t>((es.eigenvalues().array() > 1e-16 * top).count());
        CHECK(want == static_cast<std::size_t>(r));
        CHECK(gram_effective_rank(x) == want);
    }
    CHECK(gram_effective_rank(Eigen::MatrixXd::Zero(4, 3)) == 0);
}

TEST_CASE("split from fraction") {
    const auto s = SplitSpec::from_fraction(491, 0.8);
    CHECK(s.train == 392);
    CHECK(s.test == 99);
    CHECK(SplitSpec::from_fraction(10, 0.5).train == 5);
    CHECK_THROWS_AS(SplitSpec::from_fraction(10, 1.0), ConfigError);
    CHECK_THROWS_AS(SplitSpec::from_fraction(1, 0.5), ConfigError);
}
