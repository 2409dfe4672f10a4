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

#ifndef BLOCKADE_DENSE_QUBITS_H
#define BLOCKADE_DENSE_QUBITS_H

#include <span>

#include <Eigen/Dense>

#include "blockade/graph.h"
#include "blockade/hybrid_state.h"
#include "blockade/rng.h"
#include "blockade/stabilizer_tableau.h"

namespace blockade {

/// Largest register the dense backend accepts.
inline constexpr int kMaxDenseQubits = 14;

// State-vector helpers on qubit-only HybridStates (qubit 0 most significant).

void dense_apply(HybridState& psi, int q, const Eigen::Matrix2cd& u);
void dense_h(HybridState& psi, int q);
void dense_s(HybridState& psi, int q);
void dense_cz(HybridState& psi, int a, int b);
void dense_apply_pauli(HybridState& psi, const PauliString& p);

double pauli_expectation(const HybridState& psi, const PauliString& p);

/// cos(alpha) X - sin(alpha) Y, whose +1/-1 eigenvectors are
/// (e^{i alpha/2}|0> +/- e^{-i alpha/2}|1>)/sqrt(2).
Eigen::Matrix2cd rotated_observable(double alpha);

/// Projective measurement of a single-qubit observable with eigenvalues +/-1.
/// Consumes one uniform draw unless the outcome is certain.
MeasurementResult dense_measure(HybridState& psi, int q, const Eigen::Matrix2cd& observable,
                                Rng& rng);
MeasurementResult dense_measure_pauli(HybridState& psi, int q, PauliBasis basis, Rng& rng);
MeasurementResult measure_rotated(HybridState& psi, int q, double alpha, Rng& rng);

/// The B(alpha) Pauli for alpha a multiple of pi/2 (sign folded in);
/// CapabilityError for any other angle.
std::pair<int, PauliBasis> rotated_as_pauli(double alpha);

HybridState build_cluster_dense(const Graph& g);
HybridState ghz_dense(int n);
/// Hadamard on every qubit but `center`: (|0..0> + |1..1>)/sqrt2 becomes the
/// star graph state centred there.
void ghz_to_star(HybridState& psi, int center = 0);

/// Unique stabilized state, phase fixed by a forced Z readout.
HybridState tableau_to_dense(const StabilizerTableau& t);

/// <S_j> = +1 to 1e-10 for every j in `vertices` (all when empty).
VerifyResult verify_stabilizers(const HybridState& psi, const Graph& g,
                                std::span<const int> vertices = {});

}  // namespace blockade

#endif
