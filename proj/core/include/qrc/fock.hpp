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

// Multiphoton statistics through a linear-optical mode transformation.
//
// Outcomes are indexed against FockBasis, whose ordering is lexicographic
// descending on the occupation vector: for m = 4, n = 2 the outcomes are
// 2000, 1100, 1010, 1001, 0200, 0110, 0101, 0020, 0011, 0002.

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qrc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Largest photon number any distribution routine accepts.
inline constexpr int kMaxPhotons = 4;

/// Default tolerance on max |U^dagger U - I| for ModeUnitary.
inline constexpr double kUnitarityTolerance = 1e-10;

/// Photon count per optical mode, e.g. |1 0 0 1>.
struct OccupationState {
    std::vector<int> occupations;

    int modes() const { return static_cast<int>(occupations.size()); }
    int photon_count() const;
    /// Concatenated digits, "1001". Occupations above 9 are bracketed.
    std::string label() const;

    auto operator<=>(const OccupationState&) const = default;
};

/// All weak compositions of n photons into m modes, in canonical order.
class FockBasis {
  public:
    FockBasis(int modes, int photons);

    int modes() const { return modes_; }
    int photons() const { return photons_; }
    std::size_t size() const { return states_.size(); }

    const OccupationState& operator[](std::size_t i) const { return states_[i]; }
    std::span<const OccupationState> states() const { return states_; }

    /// Throws ValidationError when the state is not in the basis.
    std::size_t index_of(const OccupationState& state) const;
    bool contains(const OccupationState& state) const;

    std::vector<std::string> labels() const;

  private:
    int modes_;
    int photons_;
    std::vector<OccupationState> states_;
    std::map<std::vector<int>, std::size_t> index_;
};

FockBasis enumerate_basis(int modes, int photons);

/// binomial(n + m - 1, n), the size of the basis for m modes and n photons.
std::size_t basis_dimension(int modes, int photons);

double unitarity_defect(const ComplexMatrix& u);

/// Square transfer matrix of an interferometer. Column j is the output
/// amplitude vector for a photon entering mode j.
class ModeUnitary {
  public:
    /// Validates unitarity against `tolerance`; throws ValidationError.
    explicit ModeUnitary(ComplexMatrix entries, double tolerance = kUnitarityTolerance);

    int modes() const { return static_cast<int>(entries_.rows()); }
    const ComplexMatrix& matrix() const { return entries_; }
    Complex operator()(int out, int in) const { return entries_(out, in); }
    double defect() const { return unitarity_defect(entries_); }

  private:
    ComplexMatrix entries_;
};

/// Photons injected into the interferometer.
///
/// `visibility` interpolates two-photon statistics between fully
/// distinguishable (0) and indistinguishable (1). For any other photon
/// count it must be exactly 0 or 1.
struct PhotonInput {
    std::vector<int> input_modes;
    double visibility = 1.0;

    int photon_count() const { return static_cast<int>(input_modes.size()); }
    OccupationState occupation(int modes) const;
    bool fractional_visibility() const { return visibility != 0.0 && visibility != 1.0; }

    /// Throws ValidationError / UnsupportedConfiguration.
    void validate(int modes) const;

    static PhotonInput single_photon() { return {{0}, 1.0}; }
    static PhotonInput two_photon(double v) { return {{0, 3}, v}; }
};

/// Outcome probabilities over a FockBasis.
struct OutputDistribution {
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
    double operator[](std::size_t i) const { return probs[i]; }
    double total() const;
};

/// Matrix permanent. Direct expansion for k <= 2, Ryser with Gray-code
/// subset ordering above. Throws DimensionError for non-square input.
Complex permanent(const ComplexMatrix& a);

/// Precomputed transition bookkeeping for repeatedly evaluating the
/// statistics of one input through many unitaries.
class TransitionTable {
  public:
    TransitionTable(int modes, const PhotonInput& input);

    const FockBasis& basis() const { return basis_; }
    const PhotonInput& input() const { return input_; }

    OutputDistribution indistinguishable(const ModeUnitary& u) const;
    OutputDistribution distinguishable(const ModeUnitary& u) const;
    /// V * indistinguishable + (1 - V) * distinguishable, componentwise.
    OutputDistribution mixed(const ModeUnitary& u) const;

  private:
    struct OutputTerm {
        std::vector<int> rows; // output modes with multiplicity
        double inv_norm;       // 1 / (prod s_i! prod t_j!)
    };

    PhotonInput input_;
    FockBasis basis_;
    std::vector<int> columns_;          // input modes with multiplicity, sorted
    std::vector<OutputTerm> outputs_;
    std::vector<std::size_t> ordered_to_outcome_; // m^n ordered tuples -> basis index
};

OutputDistribution indistinguishable_distribution(const ModeUnitary& u, const OccupationState& input);
OutputDistribution distinguishable_distribution(const ModeUnitary& u, std::span<const int> input_modes);
OutputDistribution mixed_distribution(const ModeUnitary& u, const PhotonInput& input);

} // namespace qrc
