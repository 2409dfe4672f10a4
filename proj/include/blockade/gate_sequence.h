// Copyright 2026 The Blockade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLOCKADE_GATE_SEQUENCE_H
#define BLOCKADE_GATE_SEQUENCE_H

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace blockade {

/// Single-site level order used by 4x4 operators: g, s, e, r.
enum class Transition {
    GroundIntermediate,    // g <-> e, classical field Omega_g
    StorageRydberg,        // s <-> r, classical field Omega_s
    CollectiveRydberg,     // e <-> r, blockaded collective coupling
    StorageAuxiliary,      // s <-> a, detuned phase pulse (abstract)
};

std::string to_string(Transition t);

struct Pulse {
    Transition transition = Transition::GroundIntermediate;
    double area = 0.0;      // rad
    double duration = 0.0;  // s
    double phase = 0.0;     // Rabi phase (rad); for StorageAuxiliary the accumulated phase
};

struct Gate {
    enum class Kind { X, H, Phase };
    Kind kind = Kind::X;
    double phi = 0.0;

    static Gate x() { return {Kind::X, 0.0}; }
    static Gate h() { return {Kind::H, 0.0}; }
    static Gate phase(double phi) { return {Kind::Phase, phi}; }
};

/// Gate from its name: "X", "H", or "Phase" (with `phi`). Throws UsageError
/// for anything else.
Gate parse_gate(const std::string& name, double phi = 0.0);

struct PulseTimings {
    double rabi_ground = 0.0;        // Omega_g, rad/s
    double rabi_storage = 0.0;       // Omega_s, rad/s
    double collective_pi_time = 0.0; // blockade pi_time, s
    double light_shift_rate = 0.0;   // phase accumulation rate on s <-> a, rad/s
};

/// Pulse train for one logical gate on an ensemble qubit (|0> = g, |1> = s).
///
/// X and H: g->e, s->r transfers, the collective e<->r pulse (area pi for X,
/// pi/2 for H), then r->s (Rabi phase pi) and e->g. Phase(phi) is a single
/// detuned s<->a pulse; Phase(0) is empty.
std::vector<Pulse> gate_pulse_sequence(const Gate& gate, const PulseTimings& timings);

double total_duration(std::span<const Pulse> pulses);

/// 4x4 unitary of one pulse on (g, s, e, r). A two-level pulse of area A
/// and phase p acts on (lower, upper) as
///   [[cos(A/2), e^{ip} sin(A/2)], [-e^{-ip} sin(A/2), cos(A/2)]].
Eigen::Matrix4cd pulse_unitary(const Pulse& pulse);

/// Product of pulse unitaries, first pulse applied first.
Eigen::Matrix4cd sequence_unitary(std::span<const Pulse> pulses);

/// The (g, s) block of a single-site operator.
Eigen::Matrix2cd logical_block(const Eigen::Matrix4cd& op);

}  // namespace blockade

#endif
