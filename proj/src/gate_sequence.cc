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

#include "blockade/gate_sequence.h"

#include <cmath>
#include <complex>

#include "blockade/errors.h"
#include "blockade/units.h"

namespace blockade {

namespace {

constexpr int kG = 0;
constexpr int kS = 1;
constexpr int kE = 2;
constexpr int kR = 3;

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) {
        throw DomainError(std::string(what) + " must be positive");
    }
}

}  // namespace

std::string to_string(Transition t) {
    switch (t) {
        case Transition::GroundIntermediate: return "g-e";
        case Transition::StorageRydberg: return "s-r";
        case Transition::CollectiveRydberg: return "e-r";
        case Transition::StorageAuxiliary: return "s-a";
    }
    return "?";
}

Gate parse_gate(const std::string& name, double phi) {
    if (name == "X") return Gate::x();
    if (name == "H") return Gate::h();
    if (name == "Phase") return Gate::phase(phi);
    throw UsageError("unknown gate '" + name + "' (expected X, H or Phase)");
}

std::vector<Pulse> gate_pulse_sequence(const Gate& gate, const PulseTimings& timings) {
    std::vector<Pulse> out;
    if (gate.kind == Gate::Kind::Phase) {
        if (gate.phi == 0.0) return out;
        require_positive(timings.light_shift_rate, "light shift rate");
        out.push_back({Transition::StorageAuxiliary, 0.0,
                       std::abs(gate.phi) / timings.light_shift_rate, gate.phi});
        return out;
    }
    if (gate.kind != Gate::Kind::X && gate.kind != Gate::Kind::H) {
        throw UsageError("unknown gate kind");
    }
    require_positive(timings.rabi_ground, "Omega_g");
    require_positive(timings.rabi_storage, "Omega_s");
    require_positive(timings.collective_pi_time, "collective pi time");

    const double pi = units::kPi;
    const double central_area = gate.kind == Gate::Kind::X ? pi : pi / 2.0;
    const double t_g = pi / timings.rabi_ground;
    const double t_s = pi / timings.rabi_storage;
    out.push_back({Transition::GroundIntermediate, pi, t_g, 0.0});
    out.push_back({Transition::StorageRydberg, pi, t_s, 0.0});
    out.push_back({Transition::CollectiveRydberg, central_area,
                   timings.collective_pi_time * central_area / pi, 0.0});
    out.push_back({Transition::StorageRydberg, pi, t_s, pi});
    out.push_back({Transition::GroundIntermediate, pi, t_g, 0.0});
    return out;
}

double total_duration(std::span<const Pulse> pulses) {
    double t = 0.0;
    for (const auto& p : pulses) t += p.duration;
    return t;
}

Eigen::Matrix4cd pulse_unitary(const Pulse& pulse) {
    using cd = std::complex<double>;
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    if (pulse.transition == Transition::StorageAuxiliary) {
        // exp(-i phi Z / 2) on the logical pair; g and s pick up opposite phases.
        u(kG, kG) = std::exp(cd(0.0, -pulse.phase / 2.0));
        u(kS, kS) = std::exp(cd(0.0, pulse.phase / 2.0));
        return u;
    }
    int lower = kG;
    int upper = kE;
    if (pulse.transition == Transition::StorageRydberg) {
        lower = kS;
        upper = kR;
    } else if (pulse.transition == Transition::CollectiveRydberg) {
        lower = kE;
        upper = kR;
    }
    const double c = std::cos(pulse.area / 2.0);
    const double s = std::sin(pulse.area / 2.0);
    const cd ph = std::exp(cd(0.0, pulse.phase));
    u(lower, lower) = c;
    u(upper, upper) = c;
    u(lower, upper) = ph * s;
    u(upper, lower) = -std::conj(ph) * s;
    return u;
}

Eigen::Matrix4cd sequence_unitary(std::span<const Pulse> pulses) {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    for (const auto& p : pulses) u = pulse_unitary(p) * u;
    return u;
}

Eigen::Matrix2cd logical_block(const Eigen::Matrix4cd& op) {
    Eigen::Matrix2cd b;
    b << op(kG, kG), op(kG, kS), op(kS, kG), op(kS, kS);
    return b;
}

}  // namespace blockade
