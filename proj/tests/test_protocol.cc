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

#include <gtest/gtest.h>

#include "blockade/errors.h"
#include "blockade/graph.h"
#include "blockade/protocol.h"

namespace blockade {
namespace {

ProtocolParams ideal() { return ProtocolParams{}; }

ProtocolParams with_eta(double eta) {
    ProtocolParams p;
    p.eta = eta;
    return p;
}

void expect_rate(const RunSummary& s, double p, double nsigma = 3.0) {
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(s.counts.trials));
    EXPECT_LT(std::abs(s.counts.rate - p), nsigma * sigma)
        << "rate " << s.counts.rate << " expected " << p;
}

TEST(EntanglePair, IdealAlwaysHeraldsBellState) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const TrialOutcome r = entangle_pair(ideal(), seed);
        ASSERT_TRUE(r.success);
        EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
        EXPECT_TRUE(r.target == "psi+" || r.target == "psi-");
        ASSERT_TRUE(r.post_state);
    }
}

TEST(EntanglePair, BothHeraldsOccur) {
    int plus = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) plus += entangle_pair(ideal(), seed).target == "psi+";
    EXPECT_GT(plus, 150);
    EXPECT_LT(plus, 250);
}

TEST(EntanglePair, RateEqualsEta) {
    expect_rate(run_trials(Scheme::pair(), with_eta(0.3), 20000, 11, 2), 0.3);
}

TEST(EntanglePair, NoAbsorptionAlwaysFails) {
    ProtocolParams p;
    p.p_abs = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const TrialOutcome r = entangle_pair(p, seed);
        EXPECT_FALSE(r.success);
        EXPECT_EQ(r.failure_cause, FailureCause::AbsorptionFailure);
    }
}

TEST(EntanglePair, FailureCauses) {
    ProtocolParams p;
    p.p_double = 1.0;
    // both photons reach one ensemble half the time
    const RunSummary s = run_trials(Scheme::pair(), p, 2000, 3, 1);
    EXPECT_GT(s.causes.at("double_excitation"), 0u);

    ProtocolParams c;
    c.coincidence_error = 1.0;
    EXPECT_EQ(entangle_pair(c, 1).failure_cause, FailureCause::HomCoincidence);

    ProtocolParams d;
    d.eta = 0.0;
    d.dark_rate = 1e9;
    d.protocol_time = 1e-6;
    const RunSummary ds = run_trials(Scheme::pair(), d, 500, 5, 1);
    EXPECT_EQ(ds.counts.successes, 0u);
    EXPECT_GT(ds.causes.at("double_click"), 0u);

    ProtocolParams z;
    z.eta = 0.0;
    EXPECT_EQ(entangle_pair(z, 1).failure_cause, FailureCause::NoClick);
}

// A dark click looks like a herald: it counts as a success and is tagged,
// and the ensembles never left |ee>.
TEST(EntanglePair, DarkCountsMakeFalseHeralds) {
    ProtocolParams p;
    p.eta = 0.0;
    p.dark_rate = 2e5;
    p.protocol_time = 1e-6;  // ~0.18 per detector
    const RunSummary s = run_trials(Scheme::pair(), p, 4000, 5, 1);
    EXPECT_GT(s.counts.successes, 0u);
    EXPECT_EQ(s.causes.at("dark_false_herald"), s.counts.successes);
    EXPECT_NEAR(s.mean_fidelity, 0.0, 1e-12);
}

TEST(EntanglePair, LossOnlyKeepsUnitFidelity) {
    ProtocolParams p;
    p.eta = 0.4;
    p.eta_detector = 0.5;
    const RunSummary s = run_trials(Scheme::pair(), p, 4000, 9, 2);
    EXPECT_NEAR(s.mean_fidelity, 1.0, 1e-10);
}

TEST(EntanglePair, AbsorptionErrorLowersFidelity) {
    ProtocolParams p;
    p.p_abs = 0.9;
    const RunSummary s = run_trials(Scheme::pair(), p, 4000, 9, 2);
    EXPECT_GT(s.causes.at("absorption_failure"), 0u);
    EXPECT_LT(s.mean_fidelity, 0.99);
    EXPECT_GT(s.mean_fidelity, 0.7);
}

TEST(Ghz, IdealFourIsGhzAfterCorrections) {
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 400 && ok < 40; ++seed) {
        const TrialOutcome r = ghz_generate(4, ideal(), seed);
        if (!r.success) continue;
        ++ok;
        EXPECT_EQ(r.target, "ghz");
        EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
    }
    EXPECT_EQ(ok, 40);
}

TEST(Ghz, IdealSixFidelity) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const TrialOutcome r = ghz_generate(6, ideal(), seed);
        if (r.success) {
            EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
        }
    }
}

TEST(Ghz, Rates) {
    expect_rate(run_trials(Scheme::ghz(4), with_eta(0.3), 40000, 21, 4), 0.045);
    expect_rate(run_trials(Scheme::ghz(6), with_eta(0.3), 60000, 22, 4), 0.3 * 0.3 * 0.3 / 4);
}

TEST(Ghz, EightQubitWiringRate) {
    const RunSummary s = run_trials(Scheme::ghz(8), with_eta(1.0), 4000, 23, 4);
    expect_rate(s, ghz_wiring_success_prob(8, 1.0));
    EXPECT_NEAR(s.mean_fidelity, 1.0, 1e-9);
}

TEST(Ghz, RejectsBadQubitCounts) {
    EXPECT_THROW(Scheme::ghz(5), DomainError);
    EXPECT_THROW(Scheme::ghz(2), DomainError);
    EXPECT_THROW(ProtocolSimulator(Scheme::ghz(10), ideal()), CapabilityError);
}

TEST(Analytic, Values) {
    EXPECT_NEAR(success_prob_analytic(4, 0.3), 0.045, 1e-15);
    EXPECT_EQ(success_prob_analytic(4, 0.0), 0.0);
    EXPECT_NEAR(success_prob_analytic(6, 1.0), 0.25, 1e-15);
    EXPECT_THROW(success_prob_analytic(3, 0.3), DomainError);
    EXPECT_LE(success_prob_analytic(6, 0.2), success_prob_analytic(6, 0.3));
    EXPECT_NEAR(ghz_wiring_success_prob(6, 0.3), success_prob_analytic(6, 0.3), 1e-15);
}

TEST(RunTrials, DeterministicAcrossWorkers) {
    std::string a, b;
    const auto p = with_eta(0.5);
    const RunSummary s1 = run_trials(Scheme::ghz(4), p, 3000, 77, 1,
                                     [&](std::uint64_t i, const TrialOutcome& r) { a += dump_line(r.to_json(i)); });
    const RunSummary s4 = run_trials(Scheme::ghz(4), p, 3000, 77, 4,
                                     [&](std::uint64_t i, const TrialOutcome& r) { b += dump_line(r.to_json(i)); });
    EXPECT_EQ(a, b);
    EXPECT_EQ(dump(s1.to_json()), dump(s4.to_json()));
    EXPECT_THROW(run_trials(Scheme::pair(), p, 0, 1, 1), DomainError);
}

TEST(Binomial, WilsonInterval) {
    const BinomialSummary s = summarize_binomial(1000, 300, 0.3);
    EXPECT_NEAR(s.rate, 0.3, 1e-15);
    EXPECT_LT(s.ci_low, 0.3);
    EXPECT_GT(s.ci_high, 0.3);
    EXPECT_NEAR(s.z_score, 0.0, 1e-12);
    const BinomialSummary zero = summarize_binomial(100, 0, 0.0);
    EXPECT_EQ(zero.ci_low, 0.0);
    EXPECT_GT(zero.ci_high, 0.0);
}

TEST(Params, Validation) {
    ProtocolParams p;
    p.eta = 1.2;
    EXPECT_THROW(p.validate(), DomainError);
    p.eta = 0.5;
    p.eta_detector = 0.4;
    EXPECT_THROW(p.validate(), DomainError);
    p.eta_detector = 0.5;
    p.dark_rate = -1;
    EXPECT_THROW(p.validate(), DomainError);
}

TEST(Fusion, SuccessMergesClusters) {
    Rng rng(1);
    const FusionResult r = apply_fusion(Graph::star(4), Graph::star(4), 1, 2, true, rng);
    EXPECT_EQ(r.graph.size(), 8);
    EXPECT_TRUE(r.graph.has_edge(1, 6));
    EXPECT_EQ(r.graph.edge_count(), 7u);
    EXPECT_TRUE(verify_stabilizers(r.tableau, r.graph).ok);
}

TEST(Fusion, FailureRecyclesBothSides) {
    for (std::uint64_t seed = 0; seed < 32; ++seed) {
        Rng rng(seed);
        const FusionResult r = apply_fusion(Graph::star(4), Graph::star(4), 1, 6 - 4, false, rng);
        EXPECT_EQ(r.removed, (std::vector<int>{1, 6}));
        std::vector<int> keep;
        for (int q = 0; q < 8; ++q)
            if (q != 1 && q != 6) keep.push_back(q);
        EXPECT_TRUE(verify_stabilizers(r.tableau, r.graph, keep).ok) << seed;
        EXPECT_EQ(r.graph.edge_count(), 4u);  // two 3-qubit stars
    }
}

TEST(Fusion, RatesAndLimits) {
    const FusionSummary never = run_fusion_trials(Graph::line(3), Graph::line(3), 2, 0, 0.0, 200, 1);
    EXPECT_EQ(never.counts.successes, 0u);
    const FusionSummary s = run_fusion_trials(Graph::line(3), Graph::line(3), 2, 0, 0.8, 20000, 2);
    const double p = 0.1;
    EXPECT_LT(std::abs(s.counts.rate - p), 3 * std::sqrt(p * (1 - p) / 20000));
    EXPECT_THROW(fuse_clusters(Graph::line(2), Graph::line(2), 5, 0, 0.5, 1), UsageError);
}

}  // namespace
}  // namespace blockade
