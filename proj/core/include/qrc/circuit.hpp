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

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qrc/fock.hpp"

namespace qrc {

/// Phase settings of the four-mode reservoir interferometer, in radians.
///
/// phi_B carries the encoded input, phi_D and phi_4 the two feedback
/// loops. `extra` holds named auxiliary phases for gate-composed circuits
/// (e.g. "phi_1", "phi_A"); unknown names resolve to 0. Values are stored
/// unwrapped and only ever enter through e^{i phi}.
struct CircuitPhases {
    double phi_B = 0.0;
    double phi_D = 0.0;
    double phi_4 = 0.0;
    std::map<std::string, double> extra;

    /// Looks up phi_B / phi_D / phi_4 or an auxiliary phase.
    double resolve(const std::string& name) const;
};

/// Complete four-mode input/output map of the reservoir chip at the given
/// phases (encoding layer, evolution layer and routing folded together).
ModeUnitary build_canonical_unitary(const CircuitPhases& phases);
ModeUnitary build_canonical_unitary(double phi_B, double phi_D, double phi_4);

/// Identity on m modes with e^{i phi} on `mode`.
ModeUnitary build_phase_shifter(int modes, int mode, double phi);

/// Feedback-controlled evolution layer U_{phi_4} (x) U_{phi_D}.
ModeUnitary build_evolution_unitary(double phi_D, double phi_4);

enum class GateKind { BeamSplitter, PhaseShifter, Swap };

enum class BeamSplitterConvention {
    Symmetric, // (1/sqrt2) [[1, i], [i, 1]]
    Hadamard,  // (1/sqrt2) [[1, 1], [1, -1]]
};

/// One elementary optical element. `phase` is either a literal angle or
/// the name of a phase resolved through CircuitPhases at compose time.
struct Gate {
    GateKind kind = GateKind::PhaseShifter;
    std::vector<int> modes;
    std::variant<double, std::string> phase = 0.0;
};

using GateList = std::vector<Gate>;

/// Product of the gates in signal-propagation order: the first gate in
/// the list acts first, so U = G_last ... G_1.
ModeUnitary compose(const GateList& gates, int modes, const CircuitPhases& phases = {},
                    BeamSplitterConvention convention = BeamSplitterConvention::Symmetric);

const char* to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& name);

} // namespace qrc
