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

#include "qrc/readout.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "qrc/errors.hpp"

namespace qrc {

namespace {

// Singular values below this fraction of the largest are treated as zero.
constexpr double kSingularCutoff = 1e-12;

void check_same_length(std::span<const double> a, std::span<const double> b, std::size_t min_len) {
    if (a.size() != b.size())
        throw DimensionError(fmt::format("length mismatch: {} predictions vs {} targets", a.size(), b.size()));
    if (a.size() < min_len)
        throw DimensionError(fmt::format("need at least {} samples, got {}", min_len, a.size()));
}

double mean(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

struct Moments {
    double var_p = 0.0;
    double var_t = 0.0;
    double cov = 0.0;
    double scale_p = 0.0; // mean of squares, for relative degeneracy checks
    double scale_t = 0.0;
};

Moments moments(std::span<const double> p, std::span<const double> t) {
    const double mp = mean(p);
    const double mt = mean(t);
    Moments m;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double dp = p[i] - mp;
        const double dt = t[i] - mt;
        m.var_p += dp * dp;
        m.var_t += dt * dt;
        m.cov += dp * dt;
        m.scale_p += p[i] * p[i];
        m.scale_t += t[i] * t[i];
    }
    const double n = static_cast<double>(p.size());
    m.var_p /= n;
    m.var_t /= n;
    m.cov /= n;
    m.scale_p /= n;
    m.scale_t /= n;
    return m;
}

bool negligible(double var, double scale) { return var <= 1e-28 * scale || var == 0.0; }

} // namespace

ReadoutModel ridge_fit(const Eigen::MatrixXd& x, std::span<const double> y, const RidgeOptions& options) {
    const auto rows = static_cast<std::size_t>(x.rows());
    if (rows != y.size())
        throw DimensionError(fmt::format("feature matrix has {} rows but {} targets", rows, y.size()));
    if (options.washout >= rows)
        throw DimensionError(fmt::format("washout {} leaves no training rows out of {}", options.washout, rows));
    if (!(options.alpha >= 0.0) || !std::isfinite(options.alpha))
        throw ConfigError(fmt::format("ridge alpha must be finite and >= 0, got {}", options.alpha));

    const auto n = static_cast<Eigen::Index>(rows - options.washout);
    const Eigen::Index d = x.cols();
    Eigen::MatrixXd a = x.bottomRows(n);
    const Eigen::VectorXd target =
        Eigen::Map<const Eigen::VectorXd>(y.data() + options.washout, n);

    ReadoutModel model;
    model.alpha = options.alpha;
    model.washout = options.washout;
    model.rows_used = static_cast<std::size_t>(n);

    Eigen::VectorXd scale = Eigen::VectorXd::Ones(d);
    if (options.standardize) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const double mu = a.col(j).mean();
            const double sd = std::sqrt((a.col(j).array() - mu).square().mean());
            if (sd > 0.0) scale(j) = sd;
        }
        a = a.array().rowwise() / scale.transpose().array();
        model.feature_scale = scale;
    }

    // Centering removes the unpenalized bias from the problem exactly:
    // w solves (Xc^T Xc + alpha I) w = Xc^T yc, then b = ybar - xbar^T w.
    const Eigen::RowVectorXd xbar = a.colwise().mean();
    const double ybar = target.mean();
    const Eigen::MatrixXd xc = a.rowwise() - xbar;
    const Eigen::VectorXd yc = target.array() - ybar;

    // Spectral filter of the centered design; the same factors solve the
    // refinement corrections below.
    Eigen::MatrixXd v;
    Eigen::MatrixXd ut;
    Eigen::VectorXd filt; // s / (s^2 + alpha), zero for dropped directions
    Eigen::VectorXd inv;  // 1 / (s^2 + alpha), zero for dropped directions
    if (d > 0) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(xc, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& s = svd.singularValues();
        const double smax = s.size() > 0 ? s(0) : 0.0;
        filt = Eigen::VectorXd::Zero(s.size());
        inv = Eigen::VectorXd::Zero(s.size());
        bool dropped = false;
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            if (s(i) <= kSingularCutoff * smax || s(i) == 0.0) {
                dropped = true;
                continue;
            }
            filt(i) = s(i) / (s(i) * s(i) + options.alpha);
            inv(i) = 1.0 / (s(i) * s(i) + options.alpha);
        }
        v = svd.matrixV();
        ut = svd.matrixU().transpose();
        model.pseudoinverse = dropped && options.alpha == 0.0;
    }
    using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using LVec = WeightVector;
    LVec w = d > 0 ? LVec((v * filt.cwiseProduct(ut * yc)).cast<long double>()) : LVec::Zero(d);
    long double b = static_cast<long double>(ybar) - xbar.cast<long double>().dot(w);

    // Residual of the augmented normal equations, A^T (A W - y) + alpha P W
    // with A = [X 1] and P = diag(1, ..., 1, 0), in extended precision.
    const LMat al = a.cast<long double>();
    const LVec tl = target.cast<long double>();
    const auto alpha_l = static_cast<long double>(options.alpha);
    auto normal_residual = [&](const LVec& wv, long double bv) {
        const LVec err = (al * wv).array() + bv - tl.array();
        LVec r(d + 1);
        r.head(d) = al.transpose() * err + alpha_l * wv;
        r(d) = err.sum();
        return r;
    };
    LVec res = normal_residual(w, b);

    // Iterative refinement. The augmented system reduces to the centered
    // one: dw = (Xc^T Xc + alpha I)^+ (r_w - xbar^T r_b), db = r_b / n - xbar dw.
    for (int step = 0; step < 4 && d > 0; ++step) {
        const Eigen::VectorXd r = res.cast<double>();
        const Eigen::VectorXd rhs_w = r.head(d) - xbar.transpose() * r(d);
        const Eigen::VectorXd dw = -(v * inv.cwiseProduct(v.transpose() * rhs_w));
        const double db = -r(d) / static_cast<double>(n) - xbar.dot(dw);
        LVec w2 = w + dw.cast<long double>();
        const long double b2 = b + static_cast<long double>(db);
        LVec res2 = normal_residual(w2, b2);
        if (!(res2.norm() < res.norm())) break;
        w = std::move(w2);
        b = b2;
        res = std::move(res2);
    }

    LVec rhs(d + 1);
    rhs.head(d) = al.transpose() * tl;
    rhs(d) = tl.sum();
    const long double rhs_norm = rhs.norm();
    model.residual = static_cast<double>(rhs_norm > 0.0L ? res.norm() / rhs_norm : res.norm());

    model.weights = w.array() / scale.cast<long double>().array();
    model.bias = b;
    return model;
}

ReadoutModel ridge_fit(const Eigen::MatrixXd& x, std::span<const double> y, double alpha, std::size_t washout) {
    return ridge_fit(x, y, RidgeOptions{alpha, washout, false});
}

std::vector<double> predict(const ReadoutModel& model, const Eigen::MatrixXd& x) {
    if (x.cols() != model.weights.size())
        throw DimensionError(fmt::format("model expects {} features, matrix has {}", model.weights.size(), x.cols()));
    const WeightVector p = (x.cast<long double>() * model.weights).array() + model.bias;
    std::vector<double> out(static_cast<std::size_t>(p.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(i)] = static_cast<double>(p(i));
    return out;
}

SplitSpec SplitSpec::from_fraction(std::size_t total, double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ConfigError(fmt::format("train fraction must lie in (0, 1), got {}", train_fraction));
    SplitSpec split;
    split.train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(total) + 1e-9));
    split.test = total - split.train;
    if (split.test < 1 || split.train < 1)
        throw ConfigError(fmt::format("split of {} samples at {} leaves an empty side", total, train_fraction));
    return split;
}

double r2_score(std::span<const double> pred, std::span<const double> target) {
    check_same_length(pred, target, 2);
    const Moments m = moments(pred, target);
    if (negligible(m.var_p, m.scale_p) || negligible(m.var_t, m.scale_t)) return 0.0;
    const double r2 = (m.cov * m.cov) / (m.var_p * m.var_t);
    return std::clamp(r2, 0.0, 1.0);
}

bool r2_is_degenerate(std::span<const double> pred, std::span<const double> target) {
    check_same_length(pred, target, 2);
    const Moments m = moments(pred, target);
    return negligible(m.var_p, m.scale_p) || negligible(m.var_t, m.scale_t);
}

double mse_score(std::span<const double> pred, std::span<const double> target) {
    check_same_length(pred, target, 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double e = pred[i] - target[i];
        acc += e * e;
    }
    return acc / static_cast<double>(pred.size());
}

double memory_capacity(std::span<const double> per_delay_r2) {
    if (per_delay_r2.empty()) throw DimensionError("memory capacity needs at least one delay");
    return std::accumulate(per_delay_r2.begin(), per_delay_r2.end(), 0.0);
}

std::size_t gram_effective_rank(const Eigen::MatrixXd& x, double tol) {
    if (x.size() == 0) throw DimensionError("Gram rank of an empty matrix");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
    const Eigen::VectorXd& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    return static_cast<std::size_t>((s.array() > tol * s(0)).count());
}

double binary_accuracy(std::span<const double> pred, std::span<const double> target) {
    check_same_length(pred, target, 1);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (target[i] != 0.0 && target[i] != 1.0)
            throw InputError(fmt::format("binary target {} at index {} is not 0 or 1", target[i], i));
        const double label = pred[i] >= 0.5 ? 1.0 : 0.0;
        if (label == target[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(pred.size());
}

std::vector<double> min_max_normalize(std::span<const double> v) {
    std::vector<double> out(v.size(), 0.0);
    if (v.empty()) return out;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double range = *hi - *lo;
    if (range <= 0.0) return out;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - *lo) / range;
    return out;
}

} // namespace qrc
