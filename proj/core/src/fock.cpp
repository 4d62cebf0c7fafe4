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

#include "qrc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "qrc/errors.hpp"

namespace qrc {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Weak compositions of `remaining` into occupations[pos..], largest first.
void compose_descending(std::vector<int>& occupations, std::size_t pos, int remaining,
                        std::vector<OccupationState>& out) {
    if (pos + 1 == occupations.size()) {
        occupations[pos] = remaining;
        out.push_back({occupations});
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        occupations[pos] = v;
        compose_descending(occupations, pos + 1, remaining - v, out);
    }
}

std::vector<int> modes_with_multiplicity(const std::vector<int>& occupations) {
    std::vector<int> modes;
    for (std::size_t i = 0; i < occupations.size(); ++i)
        modes.insert(modes.end(), static_cast<std::size_t>(occupations[i]), static_cast<int>(i));
    return modes;
}

void check_photon_cap(int n) {
    if (n > kMaxPhotons)
        throw UnsupportedConfiguration(
            fmt::format("{} photons requested; at most {} are supported", n, kMaxPhotons));
}

} // namespace

int OccupationState::photon_count() const {
    return std::accumulate(occupations.begin(), occupations.end(), 0);
}

std::string OccupationState::label() const {
    std::string s;
    for (int v : occupations) s += v < 10 ? std::to_string(v) : "[" + std::to_string(v) + "]";
    return s;
}

std::size_t basis_dimension(int modes, int photons) {
    // binomial(n + m - 1, n) computed incrementally; exact for the sizes used here.
    std::size_t r = 1;
    for (int i = 1; i <= photons; ++i)
        r = r * static_cast<std::size_t>(modes - 1 + i) / static_cast<std::size_t>(i);
    return r;
}

FockBasis::FockBasis(int modes, int photons) : modes_(modes), photons_(photons) {
    if (modes < 1) throw ValidationError(fmt::format("mode count must be >= 1, got {}", modes));
    if (photons < 0) throw ValidationError(fmt::format("photon count must be >= 0, got {}", photons));
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    states_.reserve(basis_dimension(modes, photons));
    compose_descending(occ, 0, photons, states_);
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i].occupations, i);
}

std::size_t FockBasis::index_of(const OccupationState& state) const {
    auto it = index_.find(state.occupations);
    if (it == index_.end())
        throw ValidationError(fmt::format("state |{}> is not in the {}-mode {}-photon basis",
                                          state.label(), modes_, photons_));
    return it->second;
}

bool FockBasis::contains(const OccupationState& state) const {
    return index_.contains(state.occupations);
}

std::vector<std::string> FockBasis::labels() const {
    std::vector<std::string> out;
    out.reserve(states_.size());
    for (const auto& s : states_) out.push_back(s.label());
    return out;
}

FockBasis enumerate_basis(int modes, int photons) { return FockBasis(modes, photons); }

double unitarity_defect(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
    const ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

ModeUnitary::ModeUnitary(ComplexMatrix entries, double tolerance) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
        throw DimensionError(fmt::format("mode unitary must be square and non-empty, got {}x{}",
                                         entries_.rows(), entries_.cols()));
    if (!entries_.allFinite()) throw ValidationError("mode unitary has non-finite entries");
    const double defect = unitarity_defect(entries_);
    if (!(defect < tolerance))
        throw ValidationError(
            fmt::format("matrix is not unitary: max|U^dagger U - I| = {:.3e} (tolerance {:.1e})",
                        defect, tolerance));
}

OccupationState PhotonInput::occupation(int modes) const {
    OccupationState s{std::vector<int>(static_cast<std::size_t>(modes), 0)};
    for (int m : input_modes) {
        if (m < 0 || m >= modes)
            throw ValidationError(fmt::format("input mode {} out of range [0, {})", m, modes));
        ++s.occupations[static_cast<std::size_t>(m)];
    }
    return s;
}

void PhotonInput::validate(int modes) const {
    if (input_modes.empty()) throw ValidationError("photon input needs at least one photon");
    check_photon_cap(photon_count());
    for (int m : input_modes)
        if (m < 0 || m >= modes)
            throw ValidationError(fmt::format("input mode {} out of range [0, {})", m, modes));
    if (!(visibility >= 0.0 && visibility <= 1.0))
        throw ValidationError(fmt::format("visibility must lie in [0, 1], got {}", visibility));
    if (fractional_visibility() && photon_count() != 2)
        throw UnsupportedConfiguration(fmt::format(
            "fractional visibility V = {} is only defined for two photons (got n_ph = {})",
            visibility, photon_count()));
}

double OutputDistribution::total() const {
    return std::accumulate(probs.begin(), probs.end(), 0.0);
}

TransitionTable::TransitionTable(int modes, const PhotonInput& input)
    : input_(input), basis_(modes, input.photon_count()) {
    input_.validate(modes);
    const OccupationState in = input_.occupation(modes);
    columns_ = modes_with_multiplicity(in.occupations);

    double in_norm = 1.0;
    for (int s : in.occupations) in_norm *= factorial(s);

    outputs_.reserve(basis_.size());
    for (const auto& out : basis_.states()) {
        double norm = in_norm;
        for (int t : out.occupations) norm *= factorial(t);
        outputs_.push_back({modes_with_multiplicity(out.occupations), 1.0 / norm});
    }

    // Every ordered assignment photon j -> output mode o_j, encoded base m.
    const int n = input_.photon_count();
    std::size_t tuples = 1;
    for (int j = 0; j < n; ++j) tuples *= static_cast<std::size_t>(modes);
    ordered_to_outcome_.resize(tuples);
    OccupationState occ{std::vector<int>(static_cast<std::size_t>(modes), 0)};
    for (std::size_t code = 0; code < tuples; ++code) {
        std::fill(occ.occupations.begin(), occ.occupations.end(), 0);
        std::size_t c = code;
        for (int j = 0; j < n; ++j) {
            ++occ.occupations[c % static_cast<std::size_t>(modes)];
            c /= static_cast<std::size_t>(modes);
        }
        ordered_to_outcome_[code] = basis_.index_of(occ);
    }
}

OutputDistribution TransitionTable::indistinguishable(const ModeUnitary& u) const {
    if (u.modes() != basis_.modes())
        throw DimensionError(fmt::format("unitary has {} modes, basis has {}", u.modes(), basis_.modes()));
    const auto n = static_cast<Eigen::Index>(columns_.size());
    OutputDistribution dist{std::vector<double>(basis_.size(), 0.0)};
    ComplexMatrix sub(n, n);
    for (std::size_t t = 0; t < outputs_.size(); ++t) {
        const auto& term = outputs_[t];
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b)
                sub(a, b) = u(term.rows[static_cast<std::size_t>(a)], columns_[static_cast<std::size_t>(b)]);
        dist.probs[t] = std::norm(permanent(sub)) * term.inv_norm;
    }
    return dist;
}

OutputDistribution TransitionTable::distinguishable(const ModeUnitary& u) const {
    if (u.modes() != basis_.modes())
        throw DimensionError(fmt::format("unitary has {} modes, basis has {}", u.modes(), basis_.modes()));
    const int m = basis_.modes();
    const int n = input_.photon_count();
    // Single-photon landing probabilities for each labelled photon.
    std::vector<std::vector<double>> land(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m)));
    for (int j = 0; j < n; ++j)
        for (int o = 0; o < m; ++o)
            land[static_cast<std::size_t>(j)][static_cast<std::size_t>(o)] =
                std::norm(u(o, input_.input_modes[static_cast<std::size_t>(j)]));

    OutputDistribution dist{std::vector<double>(basis_.size(), 0.0)};
    for (std::size_t code = 0; code < ordered_to_outcome_.size(); ++code) {
        double p = 1.0;
        std::size_t c = code;
        for (int j = 0; j < n; ++j) {
            p *= land[static_cast<std::size_t>(j)][c % static_cast<std::size_t>(m)];
            c /= static_cast<std::size_t>(m);
        }
        dist.probs[ordered_to_outcome_[code]] += p;
    }
    return dist;
}

OutputDistribution TransitionTable::mixed(const ModeUnitary& u) const {
    const double v = input_.visibility;
    if (v == 1.0) return indistinguishable(u);
    if (v == 0.0) return distinguishable(u);
    OutputDistribution ind = indistinguishable(u);
    const OutputDistribution dis = distinguishable(u);
    for (std::size_t i = 0; i < ind.probs.size(); ++i)
        ind.probs[i] = v * ind.probs[i] + (1.0 - v) * dis.probs[i];
    return ind;
}

OutputDistribution indistinguishable_distribution(const ModeUnitary& u, const OccupationState& input) {
    if (input.modes() != u.modes())
        throw DimensionError(fmt::format("input state has {} modes, unitary has {}", input.modes(), u.modes()));
    for (int v : input.occupations)
        if (v < 0) throw ValidationError(fmt::format("negative occupation in |{}>", input.label()));
    check_photon_cap(input.photon_count());
    PhotonInput photons{modes_with_multiplicity(input.occupations), 1.0};
    return TransitionTable(u.modes(), photons).indistinguishable(u);
}

OutputDistribution distinguishable_distribution(const ModeUnitary& u, std::span<const int> input_modes) {
    PhotonInput photons{{input_modes.begin(), input_modes.end()}, 0.0};
    return TransitionTable(u.modes(), photons).distinguishable(u);
}

OutputDistribution mixed_distribution(const ModeUnitary& u, const PhotonInput& input) {
    return TransitionTable(u.modes(), input).mixed(u);
}

} // namespace qrc
