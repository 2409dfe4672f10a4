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

#include "blockade/local_clifford.h"

#include <cmath>
#include <complex>
#include <deque>
#include <vector>

#include "blockade/errors.h"

namespace blockade {

namespace {

using C = std::complex<double>;

struct Element {
    Eigen::Matrix2cd m;
    std::string word;
};

bool same_up_to_phase(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    const C overlap = (a.adjoint() * b).trace() / 2.0;
    return std::abs(std::abs(overlap) - 1.0) < 1e-9;
}

const std::vector<Element>& clifford_group() {
    static const std::vector<Element> group = [] {
        const Eigen::Matrix2cd h = LocalClifford::h().matrix();
        const Eigen::Matrix2cd s = LocalClifford::s().matrix();
        std::vector<Element> out{{Eigen::Matrix2cd::Identity(), ""}};
        std::deque<std::size_t> queue{0};
        while (!queue.empty()) {
            const Element cur = out[queue.front()];
            queue.pop_front();
            for (const auto& [gate, name] : {std::pair{h, 'H'}, std::pair{s, 'S'}}) {
                const Eigen::Matrix2cd next = gate * cur.m;
                bool seen = false;
                for (const auto& e : out) {
                    if (same_up_to_phase(e.m, next)) {
                        seen = true;
                        break;
                    }
                }
                if (!seen) {
                    out.push_back({next, cur.word + name});
                    queue.push_back(out.size() - 1);
                }
            }
        }
        return out;
    }();
    return group;
}

}  // namespace

Eigen::Matrix2cd pauli_matrix(PauliBasis b) {
    Eigen::Matrix2cd m;
    switch (b) {
        case PauliBasis::X:
            m << 0, 1, 1, 0;
            break;
        case PauliBasis::Y:
            m << 0, C(0, -1), C(0, 1), 0;
            break;
        case PauliBasis::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

LocalClifford LocalClifford::h() {
    Eigen::Matrix2cd m;
    m << 1, 1, 1, -1;
    return LocalClifford(m / std::sqrt(2.0));
}

LocalClifford LocalClifford::s() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, C(0, 1);
    return LocalClifford(m);
}

LocalClifford LocalClifford::pauli(PauliBasis b) { return LocalClifford(pauli_matrix(b)); }

LocalClifford LocalClifford::sqrt_pauli(PauliBasis b, int sign) {
    const Eigen::Matrix2cd m =
        (Eigen::Matrix2cd::Identity() + C(0, sign >= 0 ? 1.0 : -1.0) * pauli_matrix(b)) /
        std::sqrt(2.0);
    return LocalClifford(m);
}

bool LocalClifford::equivalent(const LocalClifford& other) const {
    return same_up_to_phase(m_, other.m_);
}

std::pair<int, PauliBasis> LocalClifford::conjugate(PauliBasis p) const {
    const Eigen::Matrix2cd c = m_.adjoint() * pauli_matrix(p) * m_;
    for (PauliBasis q : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
        const C t = (pauli_matrix(q) * c).trace() / 2.0;
        if (std::abs(t - 1.0) < 1e-9) return {1, q};
        if (std::abs(t + 1.0) < 1e-9) return {-1, q};
    }
    throw StateError("local operator is not a Clifford element");
}

std::string LocalClifford::gate_word() const {
    for (const auto& e : clifford_group()) {
        if (same_up_to_phase(e.m, m_)) return e.word;
    }
    throw StateError("local operator is not a Clifford element");
}

void apply_gate_word(StabilizerTableau& t, int q, const std::string& word) {
    for (char c : word) {
        if (c == 'H') {
            t.h(q);
        } else if (c == 'S') {
            t.s(q);
        } else {
            throw UsageError("unknown gate '" + std::string(1, c) + "' in gate word");
        }
    }
}

}  // namespace blockade
