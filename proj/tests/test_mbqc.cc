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
#include <numbers>

#include <gtest/gtest.h>

#include "blockade/dense_qubits.h"
#include "blockade/errors.h"
#include "blockade/graph.h"
#include "blockade/mbqc.h"
#include "blockade/rng.h"

namespace blockade {
namespace {

constexpr double kPi = std::numbers::pi;

Graph random_connected(int n, Rng& rng) {
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(v, static_cast<int>(rng.next() % static_cast<std::uint64_t>(v)));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!g.has_edge(a, b) && rng.bernoulli(0.25)) g.add_edge(a, b);
    return g;
}

MeasurementPattern random_pauli_pattern(int n, int count, Rng& rng) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)], order[rng.next() % static_cast<std::uint64_t>(i + 1)]);
    MeasurementPattern p;
    for (int k = 0; k < count; ++k) {
        const auto b = static_cast<MeasureBasis>(rng.next() % 3);
        p.steps.push_back({order[static_cast<std::size_t>(k)], b, 0.0, {}, {}});
    }
    return p;
}

TEST(Pattern, ParseFormats) {
    const auto p = MeasurementPattern::parse("# demo\nX 0\nB 1 -3*pi/2 sx=0\nY 2 sx=0 sz=0,1\nZ 3\n");
    ASSERT_EQ(p.steps.size(), 4u);
    EXPECT_EQ(p.steps[1].basis, MeasureBasis::Rotated);
    EXPECT_NEAR(p.steps[1].alpha, -1.5 * kPi, 1e-15);
    EXPECT_EQ(p.steps[2].sz, (std::vector<int>{0, 1}));
    EXPECT_NEAR(parse_angle("pi/4"), kPi / 4, 1e-15);
    EXPECT_NEAR(parse_angle("0.25"), 0.25, 1e-15);
}

TEST(Pattern, ParseErrorsNameTheLine) {
    try {
        MeasurementPattern::parse("X 0\n\nQ 1\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("pattern line 3"), std::string::npos);
    }
    EXPECT_THROW(MeasurementPattern::parse("B 0\n"), ConfigError);
    EXPECT_THROW(MeasurementPattern::parse("X 0 sx=a\n"), ConfigError);
    EXPECT_THROW(MeasurementPattern::parse("X 0\nX 0\n").validate(2), UsageError);
    EXPECT_THROW(MeasurementPattern::parse("X 0 sx=1\nX 1\n").validate(2), UsageError);
    EXPECT_THROW(parse_backend("gpu"), ConfigError);
}

TEST(RunPattern, AllZEmptiesTheCluster) {
    const Graph g = Graph::ring(6);
    for (Backend b : {Backend::Tableau, Backend::Dense}) {
        const Transcript t = run_pattern(g, MeasurementPattern::all(6, MeasureBasis::Z), b, 3);
        EXPECT_EQ(t.steps.size(), 6u);
        ASSERT_TRUE(t.final_graph);
        EXPECT_EQ(t.final_graph->edge_count(), 0u);
        EXPECT_TRUE(t.remaining.empty());
        EXPECT_EQ(t.bits().size(), 6u);
    }
}

TEST(RunPattern, ZOnMiddleOfLineLeavesPlusStates) {
    const auto pat = MeasurementPattern::parse("Z 1\n");
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        const Transcript t = run_pattern(Graph::line(3), pat, Backend::Dense, seed);
        HybridState plus = HybridState::qubits(3);
        dense_h(plus, 0);
        dense_h(plus, 2);
        if (t.steps[0].outcome == -1) dense_apply(plus, 1, pauli_matrix(PauliBasis::X));
        EXPECT_NEAR(fidelity(*t.dense, plus), 1.0, 1e-12) << seed;
    }
}

// Corrections from the graph rules, checked on the dense simulator: after
// flushing the frame the unmeasured qubits carry the reduced graph state.
TEST(GraphRules, MatchDenseOracleOnRandomGraphs) {
    Rng rng(31337);
    for (int rep = 0; rep < 60; ++rep) {
        const int n = 3 + static_cast<int>(rng.next() % 6);
        const Graph g = random_connected(n, rng);
        const auto pat = random_pauli_pattern(n, 1 + static_cast<int>(rng.next() % (n - 1)), rng);
        for (Backend b : {Backend::Dense, Backend::Tableau}) {
            const Transcript t = run_pattern(g, pat, b, rng.next());
            ASSERT_TRUE(t.final_graph);
            const VerifyResult v = t.dense ? verify_stabilizers(*t.dense, *t.final_graph, t.remaining)
                                           : verify_stabilizers(*t.tableau, *t.final_graph, t.remaining);
            EXPECT_TRUE(v.ok) << "rep " << rep << " backend " << to_string(b);
            for (const auto& s : t.steps) {
                EXPECT_TRUE(t.final_graph->neighbours(s.qubit).empty());
            }
        }
    }
}

TEST(GraphRules, BothOutcomeBranchesForEachBasis) {
    // force every branch by scanning seeds until both outcomes occur
    for (const char* basis : {"X", "Y", "Z"}) {
        bool seen[2] = {false, false};
        for (std::uint64_t seed = 0; seed < 64 && !(seen[0] && seen[1]); ++seed) {
            const auto pat = MeasurementPattern::parse(std::string(basis) + " 2\n");
            const Transcript t = run_pattern(Graph::ring(5), pat, Backend::Dense, seed);
            seen[t.steps[0].outcome == 1] = true;
            EXPECT_TRUE(verify_stabilizers(*t.dense, *t.final_graph, t.remaining).ok) << basis;
        }
        EXPECT_TRUE(seen[0] && seen[1]) << basis;
    }
}

TEST(RunPattern, BackendsAgreeOnPauliPatterns) {
    Rng rng(8);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 3 + static_cast<int>(rng.next() % 5);
        const Graph g = random_connected(n, rng);
        const auto pat = random_pauli_pattern(n, n - 1, rng);
        const std::uint64_t seed = rng.next();
        const Transcript a = run_pattern(g, pat, Backend::Tableau, seed);
        const Transcript b = run_pattern(g, pat, Backend::Dense, seed);
        EXPECT_EQ(a.bits(), b.bits());
        EXPECT_EQ(*a.final_graph, *b.final_graph);
        EXPECT_NEAR(fidelity(tableau_to_dense(*a.tableau), *b.dense), 1.0, 1e-10);
    }
}

TEST(RunPattern, XXContractionGivesThreeLine) {
    const auto pat = MeasurementPattern::parse("X 1\nX 2\n");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (Backend b : {Backend::Tableau, Backend::Dense}) {
            const Transcript t = run_pattern(Graph::line(5), pat, b, seed);
            EXPECT_EQ(t.remaining, (std::vector<int>{0, 3, 4}));
            Graph want(5);
            want.add_edge(0, 3);
            want.add_edge(3, 4);
            EXPECT_EQ(*t.final_graph, want);
            HybridState psi = t.dense ? *t.dense : tableau_to_dense(*t.tableau);
            EXPECT_TRUE(verify_stabilizers(psi, want, t.remaining).ok);
        }
    }
}

TEST(RunPattern, AdaptationSigns) {
    // the X step inherits (-1)^{s_z}; the recorded outcome is for the
    // adapted observable, so raw = sign * outcome
    const auto pat = MeasurementPattern::parse("Z 0\nX 1 sz=0\nY 2 sx=0 sz=1\n");
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        const Transcript t = run_pattern(Graph::line(4), pat, Backend::Tableau, seed);
        const int b0 = t.steps[0].outcome == 1 ? 0 : 1;
        const int b1 = t.steps[1].outcome == 1 ? 0 : 1;
        EXPECT_EQ(t.steps[1].sign, b0 ? -1 : 1);
        EXPECT_EQ(t.steps[2].sign, (b0 ^ b1) ? -1 : 1);
    }
}

TEST(RunPattern, RotatedAngleAdaptation) {
    const auto pat = MeasurementPattern::parse("Z 0\nB 1 pi/3 sx=0 sz=0\n");
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        const Transcript t = run_pattern(Graph::line(3), pat, Backend::Dense, seed);
        const bool flip = t.steps[0].outcome == -1;
        EXPECT_NEAR(t.steps[1].angle, flip ? -kPi / 3 + kPi : kPi / 3, 1e-12);
        EXPECT_FALSE(t.final_graph.has_value());
    }
}

TEST(RunPattern, RotatedStatisticsOnPlus) {
    const double alpha = 1.0;
    const auto pat = MeasurementPattern::parse("B 0 1.0\n");
    const int trials = 4000;
    int plus = 0;
    for (int i = 0; i < trials; ++i) {
        plus += run_pattern(Graph(1), pat, Backend::Dense, static_cast<std::uint64_t>(i)).steps[0].outcome == 1;
    }
    const double p = 0.5 * (1 + std::cos(alpha));
    EXPECT_LT(std::abs(plus - trials * p), 4 * std::sqrt(trials * p * (1 - p)));
}

TEST(RunPattern, CapabilityErrors) {
    const auto generic = MeasurementPattern::parse("B 0 pi/5\n");
    EXPECT_THROW(run_pattern(Graph::line(2), generic, Backend::Tableau, 1), CapabilityError);
    EXPECT_THROW(run_pattern(Graph::line(15), MeasurementPattern{}, Backend::Dense, 1), CapabilityError);
    // quarter-turn angles stay on the tableau
    EXPECT_NO_THROW(run_pattern(Graph::line(2), MeasurementPattern::parse("B 0 pi/2\n"), Backend::Tableau, 1));
}

TEST(RunPattern, QuarterTurnMatchesPauli) {
    const auto b = MeasurementPattern::parse("B 1 pi/2\n");
    const auto y = MeasurementPattern::parse("Y 1\n");
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        const Transcript tb = run_pattern(Graph::line(3), b, Backend::Tableau, seed);
        const Transcript ty = run_pattern(Graph::line(3), y, Backend::Tableau, seed);
        EXPECT_EQ(tb.steps[0].outcome, -ty.steps[0].outcome);
    }
}

TEST(Transcript, JsonShape) {
    const Transcript t = run_pattern(Graph::star(4), MeasurementPattern::parse("X 1\nZ 2\n"), Backend::Tableau, 9);
    const Json j = t.to_json();
    EXPECT_EQ(j["outcomes"].size(), 2u);
    EXPECT_EQ(j["bits"].get<std::string>().size(), 2u);
    EXPECT_TRUE(j.contains("corrections"));
    EXPECT_TRUE(j.contains("final_generators"));
    EXPECT_EQ(dump(j), dump(run_pattern(Graph::star(4), MeasurementPattern::parse("X 1\nZ 2\n"),
                                        Backend::Tableau, 9).to_json()));
}

}  // namespace
}  // namespace blockade
