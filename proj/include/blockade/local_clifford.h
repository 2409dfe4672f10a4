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

#ifndef BLOCKADE_LOCAL_CLIFFORD_H
#define BLOCKADE_LOCAL_CLIFFORD_H

#include <string>
#include <utility>

#include <Eigen/Dense>

#include "blockade/stabilizer_tableau.h"

namespace blockade {

/// Single-qubit Clifford kept as a 2x2 unitary, compared up to global phase.
class LocalClifford {
   public:
    LocalClifford() : m_(Eigen::Matrix2cd::Identity()) {}
    explicit LocalClifford(const Eigen::Matrix2cd& m) : m_(m) {}

    static LocalClifford identity() { return {}; }
    static LocalClifford h();
    static LocalClifford s();
    static LocalClifford pauli(PauliBasis b);
    /// exp(i sign pi/4 P) = (I + sign i P) / sqrt(2), written sqrt(+iP) / sqrt(-iP).
    static LocalClifford sqrt_pauli(PauliBasis b, int sign);

    const Eigen::Matrix2cd& matrix() const { return m_; }
    LocalClifford operator*(const LocalClifford& other) const { return LocalClifford(m_ * other.m_); }
    LocalClifford adjoint() const { return LocalClifford(m_.adjoint()); }

    bool equivalent(const LocalClifford& other) const;
    bool is_identity() const { return equivalent(identity()); }

    /// L^dagger P L = sign * Q.
    std::pair<int, PauliBasis> conjugate(PauliBasis p) const;

    /// Gates from {H, S}, in application order, that realise this element.
    std::string gate_word() const;

   private:
    Eigen::Matrix2cd m_;
};

Eigen::Matrix2cd pauli_matrix(PauliBasis b);

/// Applies a gate word ("HSS...") to one tableau qubit.
void apply_gate_word(StabilizerTableau& t, int q, const std::string& word);

}  // namespace blockade

#endif
