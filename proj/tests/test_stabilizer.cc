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

#include <cmath>
#include <complex>
#include <set>

#include <gtest/gtest.h>

#include "blockade/dense_qubits.h"
#include "blockade/errors.h"
#include "blockade/graph.h"
#include "blockade/local_clifford.h"
#include "blockade/rng.h"
#include "blockade/stabilizer_tableau.h"

namespace blockade {
namespace {

using namespace std::complex_literals;

Graph random_graph(int n, double p, Rng& rng) {
    Graph g(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.bernoulli(p)) g.add_edge(a, b);
    return g;
}

StabilizerTableau random_clifford_state(int n, Rng& rng, int depth = 40) {
    StabilizerTableau t(n);
    for (int i = 0; i < depth; ++i) {
        const int q = static_cast<int>(rng.next() % static_cast<std::uint64_t>(n));
        switch (rng.next() % 3) {
            case 0: t.h(q); break;
            case 1: t.s(q); break;
            default: {
                const int r = static_cast<int>(rng.next() % static_cast<std::uint64_t>(n));
                if (r != q) t.cx(q, r);
            }
        }
    }
    return t;
}

std::vector<std::string> rows(const StabilizerTableau& t) {
    std::vector<std::string> out;
    for (const auto& p : t.stabilizers()) out.push_back(p.str());
    return out;
}

TEST(PauliString, ParseAndMultiply) {
    const PauliString x = PauliString::parse("+XI");
    const PauliString z = PauliString::parse("ZI");
    EXPECT_FALSE(x.commutes(z));
    EXPECT_TRUE(x.commutes(PauliString::parse("IZ")));
    // XZ = -iY; the product of two Hermitian anticommuting strings is not
    // Hermitian, so check a commuting case for the sign
    EXPECT_EQ((PauliString::parse("XX") * PauliString::parse("ZZ")).str(), "-YY");
    EXPECT_EQ(PauliString::parse("-XYZ").weight(), 3);
    EXPECT_THROW(PauliString::parse("XQ"), UsageError);
}

TEST(Tableau, InitialStateAndInvariants) {
    StabilizerTableau t(3);
    EXPECT_EQ(rows(t), (std::vector<std::string>{"+ZII", "+IZI", "+IIZ"}));
    EXPECT_EQ(t.check_invariants(), "");
    EXPECT_THROW(StabilizerTableau(0), UsageError);
}

TEST(Tableau, HadamardTwiceIsIdentity) {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        StabilizerTableau t = random_clifford_state(5, rng);
        const auto before = rows(t);
        const int q = rep % 5;
        t.h(q);
        t.h(q);
        EXPECT_EQ(rows(t), before);
    }
}

TEST(Tableau, CzCommutesWithZ) {
    Rng rng(9);
    for (int rep = 0; rep < 20; ++rep) {
        StabilizerTableau a = random_clifford_state(4, rng);
        StabilizerTableau b = a;
        a.cz(0, 1);
        a.z(rep % 2);
        b.z(rep % 2);
        b.cz(0, 1);
        EXPECT_EQ(rows(a), rows(b));
    }
}

TEST(Tableau, CzOnPlusPlusGivesTwoCluster) {
    StabilizerTableau t(2);
    t.h(0);
    t.h(1);
    t.cz(0, 1);
    EXPECT_EQ(rows(t), (std::vector<std::string>{"+XZ", "+ZX"}));
    HybridState psi = HybridState::qubits(2);
    dense_h(psi, 0);
    dense_h(psi, 1);
    dense_cz(psi, 0, 1);
    EXPECT_NEAR(pauli_expectation(psi, PauliString::parse("XZ")), 1.0, 1e-12);
    EXPECT_NEAR(pauli_expectation(psi, PauliString::parse("ZX")), 1.0, 1e-12);
}

TEST(Tableau, GatesMatchDense) {
    Rng rng(21);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 4;
        StabilizerTableau t(n);
        HybridState psi = HybridState::qubits(n);
        for (int i = 0; i < 30; ++i) {
            const int q = static_cast<int>(rng.next() % n);
            const int r = (q + 1 + static_cast<int>(rng.next() % (n - 1))) % n;
            switch (rng.next() % 6) {
                case 0: t.h(q); dense_h(psi, q); break;
                case 1: t.s(q); dense_s(psi, q); break;
                case 2: t.cz(q, r); dense_cz(psi, q, r); break;
                case 3: t.x(q); dense_apply(psi, q, pauli_matrix(PauliBasis::X)); break;
                case 4: t.y(q); dense_apply(psi, q, pauli_matrix(PauliBasis::Y)); break;
                default: t.s_dag(q); dense_apply(psi, q, LocalClifford::s().adjoint().matrix());
            }
        }
        for (const auto& g : t.stabilizers()) EXPECT_NEAR(pauli_expectation(psi, g), 1.0, 1e-10);
        EXPECT_NEAR(fidelity(tableau_to_dense(t), psi), 1.0, 1e-10);
    }
}

TEST(Tableau, ZOnPlusIsUniform) {
    const int trials = 20000;
    int plus = 0;
    for (int i = 0; i < trials; ++i) {
        StabilizerTableau t(1);
        t.h(0);
        Rng rng(static_cast<std::uint64_t>(i));
        const auto r = t.measure_z(0, &rng);
        EXPECT_FALSE(r.deterministic);
        plus += r.outcome == 1;
    }
    const double sigma = std::sqrt(trials * 0.25);
    EXPECT_LT(std::abs(plus - trials / 2.0), 3.0 * sigma);
}

TEST(Tableau, DeterministicAndForcedOutcomes) {
    StabilizerTableau t(2);
    t.x(1);
    Rng rng(1);
    auto r = t.measure_z(1, &rng);
    EXPECT_TRUE(r.deterministic);
    EXPECT_EQ(r.outcome, -1);
    t.h(0);
    r = t.measure_z(0, nullptr, -1);
    EXPECT_EQ(r.outcome, -1);
    EXPECT_EQ(t.expectation(PauliString::parse("ZI")), -1);
    EXPECT_THROW(t.measure_z(0, nullptr, 1), StateError);
}

TEST(Tableau, MeasurePauliMarksQubit) {
    StabilizerTableau t = build_cluster(Graph::line(3));
    Rng rng(4);
    t.measure_pauli(1, PauliBasis::Z, rng);
    EXPECT_TRUE(t.is_measured(1));
    EXPECT_THROW(t.measure_pauli(1, PauliBasis::X, rng), UsageError);
}

TEST(Tableau, ExpectationOutsideGroupIsZero) {
    StabilizerTableau t(2);
    t.h(0);
    EXPECT_EQ(t.expectation(PauliString::parse("ZI")), 0);
    EXPECT_EQ(t.expectation(PauliString::parse("XZ")), 1);
    EXPECT_EQ(t.expectation(PauliString::parse("-XZ")), -1);
}

TEST(Graph, EdgeListRoundTrip) {
    const Graph g = Graph::parse_edge_list("# comment\nnodes 4\n0 1\n1 2 # inline\n\n2 3\n");
    EXPECT_EQ(g.size(), 4);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_EQ(Graph::parse_edge_list(g.to_edge_list()), g);
    EXPECT_EQ(Graph::parse_edge_list("0 2\n").size(), 3);
}

TEST(Graph, EdgeListErrorsCarryLine) {
    try {
        Graph::parse_edge_list("0 1\n1 1\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    EXPECT_THROW(Graph::parse_edge_list("0 x\n"), ConfigError);
    EXPECT_THROW(Graph::parse_edge_list("nodes 2\n0 5\n"), ConfigError);
}

TEST(Graph, LocalComplement) {
    Graph g = Graph::star(4);
    g.local_complement(0);
    EXPECT_EQ(g.edge_count(), 6u);  // complete graph
    g.local_complement(0);
    EXPECT_EQ(g, Graph::star(4));
}

TEST(BuildCluster, SmallCases) {
    EXPECT_EQ(rows(build_cluster(Graph(1))), (std::vector<std::string>{"+X"}));
    Graph e(2);
    e.add_edge(0, 1);
    EXPECT_EQ(rows(build_cluster(e)), (std::vector<std::string>{"+XZ", "+ZX"}));
    EXPECT_EQ(build_cluster(Graph::star(5)).stabilizer(0).str(), "+XZZZZ");
}

TEST(BuildCluster, GeneratorsMatchGraphOnRandomGraphs) {
    Rng rng(2024);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 1 + static_cast<int>(rng.next() % 10);
        const Graph g = random_graph(n, 0.4, rng);
        const StabilizerTableau t = build_cluster(g);
        for (int j = 0; j < n; ++j) {
            EXPECT_EQ(t.stabilizer(j), cluster_generator(g, j));
            EXPECT_EQ(t.expectation(cluster_generator(g, j)), 1);
        }
        EXPECT_TRUE(verify_stabilizers(t, g).ok);
        EXPECT_EQ(t.check_invariants(), "");
    }
}

TEST(Verify, SingleZFlipsTouchingGenerators) {
    const Graph g = Graph::line(5);
    StabilizerTableau t = build_cluster(g);
    t.z(2);
    const VerifyResult v = verify_stabilizers(t, g);
    EXPECT_FALSE(v.ok);
    EXPECT_EQ(v.violated, std::vector<int>{2});
    HybridState psi = build_cluster_dense(g);
    dense_apply(psi, 2, pauli_matrix(PauliBasis::X));
    EXPECT_EQ(verify_stabilizers(psi, g).violated, (std::vector<int>{1, 3}));
}

TEST(GhzStar, LeafHadamardsMapGhzToStar) {
    for (int n : {3, 4, 6}) {
        HybridState psi = ghz_dense(n);
        for (int q = 1; q < n; ++q) dense_h(psi, q);
        EXPECT_TRUE(verify_stabilizers(psi, Graph::star(n)).ok);
        HybridState mapped = ghz_dense(n);
        ghz_to_star(mapped, n - 1);
        EXPECT_TRUE(verify_stabilizers(mapped, Graph::star(n, n - 1)).ok);
        EXPECT_FALSE(verify_stabilizers(ghz_dense(n), Graph::star(n)).ok);
    }
}

TEST(TableauToDense, Basics) {
    StabilizerTableau t(1);
    t.h(0);
    HybridState plus = HybridState::qubits(1);
    dense_h(plus, 0);
    EXPECT_NEAR(fidelity(tableau_to_dense(t), plus), 1.0, 1e-12);

    Graph e(2);
    e.add_edge(0, 1);
    HybridState want = HybridState::qubits(2);
    const double h = 0.5;
    want.set_amplitude({0, 0}, h);
    want.set_amplitude({0, 1}, h);
    want.set_amplitude({1, 0}, h);
    want.set_amplitude({1, 1}, -h);
    EXPECT_NEAR(fidelity(tableau_to_dense(build_cluster(e)), want), 1.0, 1e-12);
}

TEST(TableauToDense, RoundTripRandomGraphs) {
    Rng rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 1 + static_cast<int>(rng.next() % 10);
        const Graph g = random_graph(n, 0.5, rng);
        EXPECT_TRUE(verify_stabilizers(tableau_to_dense(build_cluster(g)), g).ok);
        EXPECT_NEAR(fidelity(tableau_to_dense(build_cluster(g)), build_cluster_dense(g)), 1.0, 1e-10);
    }
}

TEST(DenseMeasure, RotatedBasics) {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        HybridState plus = HybridState::qubits(1);
        dense_h(plus, 0);
        const auto r = measure_rotated(plus, 0, 0.0, rng);
        EXPECT_EQ(r.outcome, 1);
        EXPECT_TRUE(r.deterministic);
    }
    // periodicity: alpha and alpha + 2 pi draw identically
    for (std::uint64_t s = 0; s < 200; ++s) {
        HybridState a = build_cluster_dense(Graph::line(3));
        HybridState b = a;
        Rng ra(s), rb(s);
        EXPECT_EQ(measure_rotated(a, 1, 0.4, ra).outcome, measure_rotated(b, 1, 0.4 + 2 * M_PI, rb).outcome);
    }
}

TEST(DenseMeasure, RotatedAsPauli) {
    EXPECT_EQ(rotated_as_pauli(0.0), std::make_pair(1, PauliBasis::X));
    EXPECT_EQ(rotated_as_pauli(M_PI / 2), std::make_pair(-1, PauliBasis::Y));
    EXPECT_EQ(rotated_as_pauli(M_PI), std::make_pair(-1, PauliBasis::X));
    EXPECT_EQ(rotated_as_pauli(-M_PI / 2), std::make_pair(1, PauliBasis::Y));
    EXPECT_THROW(rotated_as_pauli(0.3), CapabilityError);
    EXPECT_LT((rotated_observable(M_PI / 2) + pauli_matrix(PauliBasis::Y)).norm(), 1e-12);
}

// Rotated pi/2 on the dense side against tableau Y on random 4-qubit
// clusters, sampled independently.
TEST(CrossBackend, RotatedHalfPiMatchesTableauY) {
    Rng gr(99);
    for (int rep = 0; rep < 5; ++rep) {
        const Graph g = random_graph(4, 0.6, gr);
        const int q = rep % 4;
        const int trials = 4000;
        int tab_plus = 0, dense_minus = 0;
        for (int i = 0; i < trials; ++i) {
            StabilizerTableau t = build_cluster(g);
            Rng r1(static_cast<std::uint64_t>(i));
            tab_plus += t.measure(q, PauliBasis::Y, &r1).outcome == 1;
            HybridState psi = build_cluster_dense(g);
            Rng r2(static_cast<std::uint64_t>(i) + 1000003);
            dense_minus += measure_rotated(psi, q, M_PI / 2, r2).outcome == -1;
        }
        const double p1 = double(tab_plus) / trials, p2 = double(dense_minus) / trials;
        const double pool = 0.5 * (p1 + p2);
        const double se = std::sqrt(std::max(pool * (1 - pool), 1e-12) * 2.0 / trials);
        EXPECT_LT(std::abs(p1 - p2), 4.0 * se + 1e-12);
    }
}

TEST(LocalClifford, GroupWordsMatchMatrices) {
    // close {H, S} under multiplication
    std::vector<LocalClifford> group{LocalClifford::identity()};
    for (std::size_t i = 0; i < group.size(); ++i) {
        for (const auto& g : {LocalClifford::h(), LocalClifford::s()}) {
            const LocalClifford c = g * group[i];
            bool seen = false;
            for (const auto& e : group) seen = seen || e.equivalent(c);
            if (!seen) group.push_back(c);
        }
    }
    ASSERT_EQ(group.size(), 24u);
    const Graph g = Graph::line(3);
    for (const auto& c : group) {
        StabilizerTableau t = build_cluster(g);
        apply_gate_word(t, 1, c.gate_word());
        HybridState psi = build_cluster_dense(g);
        dense_apply(psi, 1, c.matrix());
        EXPECT_NEAR(fidelity(tableau_to_dense(t), psi), 1.0, 1e-10) << c.gate_word();
        for (PauliBasis p : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
            const auto [sign, q] = c.conjugate(p);
            const Eigen::Matrix2cd lhs = c.matrix().adjoint() * pauli_matrix(p) * c.matrix();
            EXPECT_LT((lhs - double(sign) * pauli_matrix(q)).norm(), 1e-12);
        }
    }
}

TEST(LocalClifford, SqrtPauli) {
    for (PauliBasis b : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
        for (int sign : {1, -1}) {
            const Eigen::Matrix2cd want =
                (Eigen::Matrix2cd::Identity() + double(sign) * 1i * pauli_matrix(b)) / std::sqrt(2.0);
            EXPECT_LT((LocalClifford::sqrt_pauli(b, sign).matrix() - want).norm(), 1e-12);
        }
    }
    StabilizerTableau one(1);
    EXPECT_THROW(apply_gate_word(one, 0, "HT"), UsageError);
}

}  // namespace
}  // namespace blockade
