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
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qrc {

/// Linear readout y = X w + b fitted by ridge regression.
///
/// The bias column is not penalized. `residual` is
/// ||(A^T A + alpha P) W - A^T y|| / ||A^T y|| for the augmented design
/// A = [X 1] and P = diag(1, ..., 1, 0), recorded for every fit.
/// Weights are kept in extended precision: with tiny alpha and nearly
/// collinear probability features they can reach 1e7 or more, and rounding
/// them to double alone would leave a visible normal-equation residual.
using WeightVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

struct ReadoutModel {
    WeightVector weights;
    long double bias = 0.0L;
    double alpha = 0.0;
    std::size_t washout = 0;
    std::size_t rows_used = 0;
    double residual = 0.0;
    /// Numerically null directions of the centered design were dropped
    /// (minimum-norm solution).
    bool pseudoinverse = false;
    /// Per-feature scale applied before fitting; empty when not standardized.
    Eigen::VectorXd feature_scale;
};

struct RidgeOptions {
    double alpha = 0.0;
    std::size_t washout = 0;
    bool standardize = false;
};

/// Drops the first `washout` rows, then solves the penalized normal
/// equations via an SVD of the centered design.
ReadoutModel ridge_fit(const Eigen::MatrixXd& x, std::span<const double> y, const RidgeOptions& options);
ReadoutModel ridge_fit(const Eigen::MatrixXd& x, std::span<const double> y, double alpha, std::size_t washout);

std::vector<double> predict(const ReadoutModel& model, const Eigen::MatrixXd& x);

/// Chronological split: train prefix of length `train`, test suffix of length `test`.
struct SplitSpec {
    std::size_t train = 0;
    std::size_t test = 0;
    bool shuffle = false;

    std::size_t total() const { return train + test; }
    /// train = floor(fraction * total), test = total - train.
    static SplitSpec from_fraction(std::size_t total, double train_fraction);
};

struct MetricsReport {
    double mse = 0.0;
    double r2 = 0.0;
    bool r2_degenerate = false;
    std::optional<double> accuracy;
    std::vector<double> per_delay_r2;
    std::optional<double> capacity;
    std::size_t gram_rank = 0;
    bool pseudoinverse = false;
    double ridge_residual = 0.0;
};

/// Squared Pearson correlation cov^2 / (var_pred var_target). Zero when
/// either vector has zero variance; query r2_is_degenerate for that case.
double r2_score(std::span<const double> pred, std::span<const double> target);
bool r2_is_degenerate(std::span<const double> pred, std::span<const double> target);

double mse_score(std::span<const double> pred, std::span<const double> target);

double memory_capacity(std::span<const double> per_delay_r2);

/// Number of singular values of X above tol * s_max; equals rank(X^T X).
std::size_t gram_effective_rank(const Eigen::MatrixXd& x, double tol = 1e-10);

/// Rounds predictions to {0, 1} (threshold 0.5) and returns the fraction
/// matching the targets.
double binary_accuracy(std::span<const double> pred, std::span<const double> target);

/// Affine map onto [0, 1]; a constant vector maps to zeros.
std::vector<double> min_max_normalize(std::span<const double> v);

} // namespace qrc
