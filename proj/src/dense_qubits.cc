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

#include "blockade/dense_qubits.h"

#include <bit>
#include <cmath>
#include <numbers>

#include "blockade/errors.h"
#include "blockade/local_clifford.h"

namespace blockade {

namespace {

void require_qubits(const HybridState& psi) {
    for (const auto& s : psi.subsystems()) {
        if (s.dim != 2) throw UsageError("dense qubit backend needs two-level subsystems");
    }
}

std::size_t mask(const HybridState& psi, int q) { return psi.stride(q); }

}  // namespace

void dense_apply(HybridState& psi, int q, const Eigen::Matrix2cd& u) {
    require_qubits(psi);
    apply_local(psi, q, u);
}

void dense_h(HybridState& psi, int q) { dense_apply(psi, q, LocalClifford::h().matrix()); }

void dense_s(HybridState& psi, int q) { dense_apply(psi, q, LocalClifford::s().matrix()); }

void dense_cz(HybridState& psi, int a, int b) {
    require_qubits(psi);
    if (a == b || a < 0 || b < 0 || a >= psi.count() || b >= psi.count()) {
        throw UsageError("invalid CZ targets");
    }
    const std::size_t ma = mask(psi, a), mb = mask(psi, b);
    auto& amps = psi.mutable_amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & ma) && (i & mb)) amps[i] = -amps[i];
    }
}

namespace {

struct DensePauli {
    std::size_t x = 0, z = 0;
    Complex prefactor = 1.0;
};

DensePauli to_dense(const HybridState& psi, const PauliString& p) {
    if (p.size() != psi.count()) throw UsageError("Pauli string length mismatch");
    DensePauli d;
    int ys = 0;
    for (int q = 0; q < p.size(); ++q) {
        if (p.x(q)) d.x |= mask(psi, q);
        if (p.z(q)) d.z |= mask(psi, q);
        if (p.x(q) && p.z(q)) ++ys;
    }
    // Y = i X Z per site.
    static const Complex kI[4] = {1.0, Complex(0, 1), -1.0, Complex(0, -1)};
    d.prefactor = kI[ys % 4] * static_cast<double>(p.sign());
    return d;
}

}  // namespace

void dense_apply_pauli(HybridState& psi, const PauliString& p) {
    require_qubits(psi);
    const DensePauli d = to_dense(psi, p);
    const auto in = std::vector<Complex>(psi.amplitudes().begin(), psi.amplitudes().end());
    auto& out = psi.mutable_amplitudes();
    for (std::size_t i = 0; i < in.size(); ++i) {
        const double s = (std::popcount(d.z & i) & 1) ? -1.0 : 1.0;
        out[i ^ d.x] = d.prefactor * s * in[i];
    }
}

double pauli_expectation(const HybridState& psi, const PauliString& p) {
    require_qubits(psi);
    const DensePauli d = to_dense(psi, p);
    const auto a = psi.amplitudes();
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double s = (std::popcount(d.z & i) & 1) ? -1.0 : 1.0;
        acc += std::conj(a[i ^ d.x]) * d.prefactor * s * a[i];
    }
    return acc.real();
}

Eigen::Matrix2cd rotated_observable(double alpha) {
    return std::cos(alpha) * pauli_matrix(PauliBasis::X) -
           std::sin(alpha) * pauli_matrix(PauliBasis::Y);
}

MeasurementResult dense_measure(HybridState& psi, int q, const Eigen::Matrix2cd& observable,
                                Rng& rng) {
    require_qubits(psi);
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    HybridState plus = psi;
    plus.apply_local_operator(q, (id + observable) / 2.0);
    const double p_plus = plus.norm_squared() / psi.norm_squared();
    MeasurementResult res;
    if (p_plus > 1.0 - 1e-12) {
        res = {1, true};
    } else if (p_plus < 1e-12) {
        res = {-1, true};
    } else {
        res = {rng.uniform() < p_plus ? 1 : -1, false};
    }
    if (res.outcome == 1) {
        psi = std::move(plus);
    } else {
        psi.apply_local_operator(q, (id - observable) / 2.0);
    }
    psi.normalize();
    return res;
}

MeasurementResult dense_measure_pauli(HybridState& psi, int q, PauliBasis basis, Rng& rng) {
    return dense_measure(psi, q, pauli_matrix(basis), rng);
}

MeasurementResult measure_rotated(HybridState& psi, int q, double alpha, Rng& rng) {
    return dense_measure(psi, q, rotated_observable(alpha), rng);
}

std::pair<int, PauliBasis> rotated_as_pauli(double alpha) {
    const double quarter = alpha / (std::numbers::pi / 2.0);
    const double k = std::round(quarter);
    if (std::abs(quarter - k) > 1e-9) {
        throw CapabilityError("B(" + std::to_string(alpha) +
                              ") is not a Pauli measurement; use the dense backend");
    }
    switch (((static_cast<long long>(k) % 4) + 4) % 4) {
        case 0:
            return {1, PauliBasis::X};
        case 1:
            return {-1, PauliBasis::Y};
        case 2:
            return {-1, PauliBasis::X};
        default:
            return {1, PauliBasis::Y};
    }
}

HybridState build_cluster_dense(const Graph& g) {
    if (g.size() > kMaxDenseQubits) {
        throw CapabilityError("dense backend is limited to " + std::to_string(kMaxDenseQubits) +
                              " qubits");
    }
    HybridState psi = HybridState::qubits(g.size());
    auto& amps = psi.mutable_amplitudes();
    const double a = std::pow(2.0, -0.5 * g.size());
    for (auto& v : amps) v = a;
    for (const auto& [u, v] : g.edges()) dense_cz(psi, u, v);
    return psi;
}

HybridState ghz_dense(int n) {
    HybridState psi = HybridState::qubits(n);
    auto& amps = psi.mutable_amplitudes();
    amps[0] = 1.0 / std::sqrt(2.0);
    amps[amps.size() - 1] = 1.0 / std::sqrt(2.0);
    return psi;
}

void ghz_to_star(HybridState& psi, int center) {
    const int n = psi.count();
    if (center < 0 || center >= n) throw DomainError("star centre out of range");
    for (int q = 0; q < n; ++q) {
        if (q != center) dense_h(psi, q);
    }
}

HybridState tableau_to_dense(const StabilizerTableau& t) {
    const int n = t.size();
    if (n > kMaxDenseQubits) {
        throw CapabilityError("dense backend is limited to " + std::to_string(kMaxDenseQubits) +
                              " qubits");
    }
    if (const std::string msg = t.check_invariants(); !msg.empty()) {
        throw StateError("inconsistent tableau: " + msg);
    }
    // A computational basis state with nonzero overlap.
    StabilizerTableau probe = t;
    HybridState psi = HybridState::qubits(n);
    auto& amps = psi.mutable_amplitudes();
    amps[0] = 0.0;
    std::size_t index = 0;
    for (int q = 0; q < n; ++q) {
        const int known = probe.expectation(PauliString::single(n, q, PauliBasis::Z));
        const auto res = probe.measure_z(q, nullptr, known == 0 ? 1 : known);
        if (res.outcome == -1) index |= psi.stride(q);
    }
    amps[index] = 1.0;
    for (const auto& s : t.stabilizers()) {
        HybridState moved = psi;
        dense_apply_pauli(moved, s);
        auto& a = psi.mutable_amplitudes();
        const auto b = moved.amplitudes();
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = 0.5 * (a[i] + b[i]);
    }
    psi.normalize();
    return psi;
}

VerifyResult verify_stabilizers(const HybridState& psi, const Graph& g,
                                std::span<const int> vertices) {
    if (psi.count() != g.size()) throw UsageError("state and graph sizes differ");
    std::vector<int> all;
    if (vertices.empty()) {
        for (int j = 0; j < g.size(); ++j) all.push_back(j);
        vertices = all;
    }
    VerifyResult res;
    for (int j : vertices) {
        if (std::abs(pauli_expectation(psi, cluster_generator(g, j)) - 1.0) > 1e-10) {
            res.ok = false;
            res.violated.push_back(j);
        }
    }
    return res;
}

}  // namespace blockade
