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

#include "qrc/circuit.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qrc/errors.hpp"

namespace qrc {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex expi(double phi) { return std::polar(1.0, phi); }

void check_mode(int mode, int modes) {
    if (mode < 0 || mode >= modes)
        throw ConfigError(fmt::format("mode index {} out of range [0, {})", mode, modes));
}

} // namespace

double CircuitPhases::resolve(const std::string& name) const {
    if (name == "phi_B") return phi_B;
    if (name == "phi_D") return phi_D;
    if (name == "phi_4") return phi_4;
    auto it = extra.find(name);
    return it == extra.end() ? 0.0 : it->second;
}

ModeUnitary build_canonical_unitary(double phi_B, double phi_D, double phi_4) {
    const Complex b = expi(phi_B);
    const Complex d = expi(phi_D);
    const Complex f = expi(phi_4);
    const Complex df = expi(phi_D + phi_4);

    ComplexMatrix u(4, 4);
    u << (1.0 - b + df - f), kI * (-1.0 + b + df - f), kI * (-1.0 - b + df + f), -(1.0 + b + df + f),
        kI * (-1.0 + b + df - f), (-1.0 + b - df + f), -(1.0 + b + df + f), kI * (1.0 + b - df - f),
        kI * (-b + d), -(2.0 + b + d), (b - d), kI * (2.0 - b - d),
        -(2.0 + b + d), kI * (b - d), kI * (2.0 - b - d), (-b + d);
    u /= 4.0;
    return ModeUnitary(std::move(u));
}

ModeUnitary build_canonical_unitary(const CircuitPhases& phases) {
    return build_canonical_unitary(phases.phi_B, phases.phi_D, phases.phi_4);
}

ModeUnitary build_phase_shifter(int modes, int mode, double phi) {
    if (modes < 1) throw ConfigError(fmt::format("mode count must be >= 1, got {}", modes));
    check_mode(mode, modes);
    ComplexMatrix u = ComplexMatrix::Identity(modes, modes);
    u(mode, mode) = expi(phi);
    return ModeUnitary(std::move(u));
}

ModeUnitary build_evolution_unitary(double phi_D, double phi_4) {
    const Complex d = expi(phi_D);
    const Complex f = expi(phi_4);
    const Complex df = expi(phi_D + phi_4);
    ComplexMatrix u(4, 4);
    u << df, kI * f, kI, -1.0,
        kI * df, -f, 1.0, kI,
        kI * d, 1.0, -1.0, kI,
        -d, kI, kI, 1.0;
    u /= 2.0;
    return ModeUnitary(std::move(u));
}

const char* to_string(GateKind kind) {
    switch (kind) {
    case GateKind::BeamSplitter: return "bs";
    case GateKind::PhaseShifter: return "ps";
    case GateKind::Swap: return "swap";
    }
    return "?";
}

GateKind gate_kind_from_string(const std::string& name) {
    if (name == "bs" || name == "beam_splitter") return GateKind::BeamSplitter;
    if (name == "ps" || name == "phase_shifter") return GateKind::PhaseShifter;
    if (name == "swap") return GateKind::Swap;
    throw ConfigError(fmt::format("unknown gate kind '{}' (expected bs, ps or swap)", name));
}

ModeUnitary compose(const GateList& gates, int modes, const CircuitPhases& phases,
                    BeamSplitterConvention convention) {
    if (modes < 1) throw ConfigError(fmt::format("mode count must be >= 1, got {}", modes));
    if (gates.empty()) throw ConfigError("gate list is empty");

    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix total = ComplexMatrix::Identity(modes, modes);
    for (std::size_t g = 0; g < gates.size(); ++g) {
        const Gate& gate = gates[g];
        const std::size_t arity = gate.kind == GateKind::PhaseShifter ? 1 : 2;
        if (gate.modes.size() != arity)
            throw ConfigError(fmt::format("gate {} ({}) needs {} mode index(es), got {}", g,
                                          to_string(gate.kind), arity, gate.modes.size()));
        for (int m : gate.modes) check_mode(m, modes);

        ComplexMatrix step = ComplexMatrix::Identity(modes, modes);
        switch (gate.kind) {
        case GateKind::PhaseShifter: {
            const double phi = std::holds_alternative<double>(gate.phase)
                                   ? std::get<double>(gate.phase)
                                   : phases.resolve(std::get<std::string>(gate.phase));
            step(gate.modes[0], gate.modes[0]) = expi(phi);
            break;
        }
        case GateKind::BeamSplitter: {
            const int a = gate.modes[0];
            const int b = gate.modes[1];
            if (a == b) throw ConfigError(fmt::format("beam splitter {} couples mode {} to itself", g, a));
            if (convention == BeamSplitterConvention::Symmetric) {
                step(a, a) = r;
                step(a, b) = kI * r;
                step(b, a) = kI * r;
                step(b, b) = r;
            } else {
                step(a, a) = r;
                step(a, b) = r;
                step(b, a) = r;
                step(b, b) = -r;
            }
            break;
        }
        case GateKind::Swap: {
            const int a = gate.modes[0];
            const int b = gate.modes[1];
            step(a, a) = 0.0;
            step(b, b) = 0.0;
            step(a, b) = 1.0;
            step(b, a) = 1.0;
            break;
        }
        }
        total = step * total;
    }
    return ModeUnitary(std::move(total));
}

} // namespace qrc
