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

// Reference implementations used only by tests. Each one takes the
// slow, obvious route so it shares no code path with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <vector>

#include "qrc/circuit.hpp"
#include "qrc/fock.hpp"
#include "qrc/reservoir.hpp"

namespace oracle {

using qrc::Complex;
using qrc::ComplexMatrix;

inline Complex permanent(const ComplexMatrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    Complex sum = 0.0;
    do {
        Complex prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= a(i, p[static_cast<std::size_t>(i)]);
        sum += prod;
    } while (std::next_permutation(p.begin(), p.end()));
    return sum;
}

inline double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

/// Calls fn(tuple) for every ordered assignment of n photons to m output modes.
template <class F>
void for_each_tuple(int m, int n, F&& fn) {
    std::vector<int> o(static_cast<std::size_t>(n), 0);
    while (true) {
        fn(o);
        int i = n - 1;
        while (i >= 0 && ++o[static_cast<std::size_t>(i)] == m) o[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) return;
    }
}

inline std::vector<int> occupation_of(const std::vector<int>& tuple, int m) {
    std::vector<int> occ(static_cast<std::size_t>(m), 0);
    for (int o : tuple) ++occ[static_cast<std::size_t>(o)];
    return occ;
}

/// Bosonic path sum: amplitude(T) = sqrt(prod t! / prod s!) * sum over tuples
/// o with occupation T of prod_i U[o_i, in_i].
inline std::map<std::vector<int>, double> indistinguishable(const ComplexMatrix& u, const std::vector<int>& in) {
    const int m = static_cast<int>(u.rows());
    const int n = static_cast<int>(in.size());
    std::map<std::vector<int>, Complex> amp;
    for_each_tuple(m, n, [&](const std::vector<int>& o) {
        Complex prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= u(o[static_cast<std::size_t>(i)], in[static_cast<std::size_t>(i)]);
        amp[occupation_of(o, m)] += prod;
    });
    double in_norm = 1.0;
    for (int k = 0; k < m; ++k) in_norm *= factorial(static_cast<int>(std::count(in.begin(), in.end(), k)));
    std::map<std::vector<int>, double> out;
    for (const auto& [occ, a] : amp) {
        double t = 1.0;
        for (int c : occ) t *= factorial(c);
        out[occ] = std::norm(a) * t / in_norm;
    }
    return out;
}

/// Classical particles: P(T) = sum over tuples with occupation T of prod |U[o_i, in_i]|^2.
inline std::map<std::vector<int>, double> distinguishable(const ComplexMatrix& u, const std::vector<int>& in) {
    const int m = static_cast<int>(u.rows());
    const int n = static_cast<int>(in.size());
    std::map<std::vector<int>, double> out;
    for_each_tuple(m, n, [&](const std::vector<int>& o) {
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= std::norm(u(o[static_cast<std::size_t>(i)], in[static_cast<std::size_t>(i)]));
        out[occupation_of(o, m)] += prod;
    });
    return out;
}

/// Probability vector in basis order from an occupation-keyed map.
inline std::vector<double> in_basis(const qrc::FockBasis& basis, const std::map<std::vector<int>, double>& p) {
    std::vector<double> v(basis.size(), 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto it = p.find(basis[i].occupations);
        if (it != p.end()) v[i] = it->second;
    }
    return v;
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

/// Ridge with an unpenalized bias, from the bordered normal equations
/// [X^T X + alpha I, X^T 1; 1^T X, n] [w; b] = [X^T y; sum y].
inline std::vector<double> ridge(const std::vector<std::vector<double>>& x, const std::vector<double>& y, double alpha) {
    const std::size_t n = x.size();
    const std::size_t d = x.front().size();
    std::vector<std::vector<double>> a(d + 1, std::vector<double>(d + 1, 0.0));
    std::vector<double> rhs(d + 1, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) a[i][j] += x[r][i] * x[r][j];
            a[i][d] += x[r][i];
            a[d][i] += x[r][i];
            rhs[i] += x[r][i] * y[r];
        }
        a[d][d] += 1.0;
        rhs[d] += y[r];
    }
    for (std::size_t i = 0; i < d; ++i) a[i][i] += alpha;
    return solve(a, rhs);
}

/// Straight-line reservoir loop for noiseless runs: explicit history
/// variables, probabilities from the path-sum oracles.
struct ReferenceStep {
    double phi_B, phi_D, phi_4;
    std::vector<double> probs;
};

inline std::vector<ReferenceStep> reservoir(const std::vector<double>& s, const qrc::ReservoirConfig& c,
                                            const std::vector<int>& in, double visibility) {
    const qrc::FockBasis basis(4, static_cast<int>(in.size()));
    std::vector<double> p1(basis.size(), 0.0), p2(basis.size(), 0.0), p3(basis.size(), 0.0);
    std::vector<ReferenceStep> out;
    for (double sk : s) {
        double pb = c.a_in * sk, pd = 0.0, p4 = 0.0;
        if (c.feedback_mode == qrc::FeedbackMode::OneStep) {
            pd = c.a_fb_D * p1[c.mu_prime];
            p4 = c.a_fb_4 * p1[c.mu_dprime];
        } else if (c.feedback_mode == qrc::FeedbackMode::TwoStep) {
            pd = c.a_fb_D * p1[c.mu_prime];
            p4 = c.a_fb_4 * p2[c.mu_dprime];
        } else if (c.feedback_mode == qrc::FeedbackMode::ThreeLoop) {
            pd = c.a_fb_D * p1[c.mu_prime];
            p4 = c.a_fb_4 * p2[c.mu_dprime];
            pb += c.a_fb_B * p3[c.mu_tprime];
        }
        const auto u = qrc::build_canonical_unitary(pb, pd, p4).matrix();
        const auto pi = in_basis(basis, indistinguishable(u, in));
        const auto pdist = in_basis(basis, distinguishable(u, in));
        std::vector<double> p(basis.size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = visibility * pi[i] + (1.0 - visibility) * pdist[i];
        out.push_back({pb, pd, p4, p});
        p3 = p2;
        p2 = p1;
        p1 = p;
    }
    return out;
}

} // namespace oracle
