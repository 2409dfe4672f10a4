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
#include <limits>
#include <numeric>

#include <gtest/gtest.h>

#include "blockade/ensemble_dynamics.h"
#include "blockade/errors.h"
#include "blockade/units.h"

namespace blockade {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kPiTime = 14.6e-6;

double reference_rabi() { return EnsembleConfig::rabi_from_pi_time(300, kPiTime); }

TEST(SamplePositions, VarianceAndDeterminism) {
    EnsembleConfig cfg;
    cfg.atom_count = 300;
    cfg.sigma = 3.0e-6;
    const AtomPositions a = sample_positions(cfg, 0);
    ASSERT_EQ(a.z.size(), 300u);
    const double mean = std::accumulate(a.z.begin(), a.z.end(), 0.0) / 300.0;
    double var = 0.0;
    for (double z : a.z) var += (z - mean) * (z - mean);
    var /= 299.0;
    EXPECT_NEAR(var / 9.0e-12, 1.0, 0.15);
    EXPECT_EQ(sample_positions(cfg, 0).z, a.z);
    cfg.atom_count = 2;
    EXPECT_EQ(sample_positions(cfg, 5).z.size(), 2u);
    cfg.sigma = 0.0;
    EXPECT_THROW(sample_positions(cfg, 0), DomainError);
}

TEST(PairShifts, SixthPowerAndCount) {
    const double c6 = units::c6_from_mhz_um6(1.0);
    AtomPositions two{{0.0, 1e-6}};
    auto s = pair_shifts(two, c6);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(units::angular_to_mhz(s[0]), 1.0, 1e-12);

    AtomPositions three{{0.0, 1e-6, 2e-6}};
    s = pair_shifts(three, c6);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_NEAR(s[pair_index(3, 0, 2)] / s[pair_index(3, 0, 1)], 1.0 / 64.0, 1e-12);
    EXPECT_NEAR(s[pair_index(3, 1, 2)] / s[pair_index(3, 0, 1)], 1.0, 1e-12);

    EnsembleConfig cfg;
    EXPECT_EQ(pair_shifts(sample_positions(cfg, 3), c6).size(), 44850u);
}

TEST(BlockadeSummary, PerfectBlockade) {
    const std::vector<double> shifts(6, kInf);
    const BlockadeSummary s = blockade_summary(shifts, 4, 1e5);
    EXPECT_EQ(s.saturation, 1.0);
    EXPECT_EQ(s.p_single, 1.0);
    EXPECT_EQ(s.p_double, 0.0);
    EXPECT_EQ(s.freq_shift, 0.0);
}

TEST(BlockadeSummary, MeanShiftValues) {
    const double rabi = reference_rabi();
    const auto b58 = blockade_summary_mean_shift(units::mhz_to_angular(2.9), 300, rabi);
    EXPECT_NEAR(b58.p_double / 1.7e-5, 1.0, 0.05);
    const auto b43 = blockade_summary_mean_shift(units::mhz_to_angular(0.25), 300, rabi);
    EXPECT_NEAR(b43.p_double / 2.3e-3, 1.0, 0.05);
    EXPECT_NEAR(b58.pi_time / kPiTime, 1.0, 1e-3);
}

TEST(BlockadeSummary, UniformShiftsMatchMeanShiftForm) {
    const int n = 6;
    const double b = units::mhz_to_angular(3.0);
    const std::vector<double> shifts(n * (n - 1) / 2, b);
    const double rabi = 2e5;
    const auto a = blockade_summary(shifts, n, rabi);
    const auto m = blockade_summary_mean_shift(b, n, rabi);
    EXPECT_NEAR(a.p_double / m.p_double, 1.0, 1e-12);
}

TEST(RabiPopulation, Basics) {
    EXPECT_EQ(rabi_population(0.0, 300, 1e4, 1.0), 0.0);
    const double l = 1.3, rabi = 1e4;
    const int n = 50;
    const double t = units::kPi / (2.0 * std::sqrt(n * l) * rabi);
    EXPECT_NEAR(rabi_population(t, n, rabi, l), 1.0 / l, 1e-12);
    EXPECT_NEAR(rabi_population(kPiTime, 300, reference_rabi(), 1.0), 1.0, 1e-12);
}

TEST(SingleQubitFidelity, Values) {
    EXPECT_EQ(single_qubit_fidelity(0.0), 1.0);
    EXPECT_GE(single_qubit_fidelity(1.7e-5), 0.999);
    EXPECT_NEAR(single_qubit_fidelity(0.5), std::exp(-1.0), 1e-15);
    EXPECT_THROW(single_qubit_fidelity(1.5), DomainError);
}

TEST(Integrate, BlockadeLimitOscillation) {
    const int n = 4;
    const double rabi = 1e5;
    const std::vector<double> shifts(6, kInf);
    const double period = units::kPi / (std::sqrt(n) * rabi);
    const auto tr = integrate_amplitudes(shifts, n, rabi, period, period / 200);
    double peak = 0.0;
    for (const auto& s : tr.samples) {
        const double x = std::sin(std::sqrt(n) * rabi * s.t);
        EXPECT_NEAR(s.single_population, x * x, 1e-6);
        peak = std::max(peak, s.single_population);
    }
    EXPECT_GE(peak, 0.999);
    EXPECT_LT(tr.max_norm_drift, 1e-8);
}

TEST(Integrate, FiniteShiftDoublePopulationNearClosedForm) {
    const int n = 2;
    const double rabi = 1e5;
    const double delta = 40.0 * rabi;
    const std::vector<double> shifts{delta};
    const auto sum = blockade_summary(shifts, n, rabi);
    const auto tr = integrate_amplitudes(shifts, n, rabi, sum.pi_time, sum.pi_time / 400);
    double peak = 0.0;
    for (const auto& s : tr.samples) peak = std::max(peak, s.pair_population);
    EXPECT_NEAR(peak / sum.p_double, 1.0, 0.2);
}

TEST(Integrate, SpectralPathMatchesRk4) {
    const int n = 4;
    const double rabi = 1e5;
    const std::vector<double> shifts{3 * rabi, kInf, -7 * rabi, 20 * rabi, 0.5 * rabi, kInf};
    const double t = 3e-5;
    const auto rk = integrate_amplitudes(shifts, n, rabi, t, t / 60);
    IntegratorOptions o;
    o.max_rk_substeps = 0;
    const auto sp = integrate_amplitudes(shifts, n, rabi, t, t / 60, o);
    EXPECT_EQ(rk.method, "rk4");
    EXPECT_EQ(sp.method, "spectral");
    ASSERT_EQ(rk.samples.size(), sp.samples.size());
    for (std::size_t i = 0; i < rk.samples.size(); ++i) {
        EXPECT_NEAR(rk.samples[i].single_population, sp.samples[i].single_population, 1e-6);
        EXPECT_NEAR(rk.samples[i].pair_population, sp.samples[i].pair_population, 1e-6);
    }
    for (std::size_t k = 0; k < rk.final_state.pair.size(); ++k) {
        EXPECT_LT(std::abs(rk.final_state.pair[k] - sp.final_state.pair[k]), 1e-5);
    }
    EXPECT_LT(sp.max_norm_drift, 1e-12);
}

TEST(Integrate, CloseAtomsStayTractable) {
    // sampled clouds can put two atoms a fraction of a nm apart
    const int n = 4;
    const double rabi = 6e4;
    const std::vector<double> shifts{1e30, 2e8, 5e9, 1e35, 3e8, 7e7};
    const auto tr = integrate_amplitudes(shifts, n, rabi, 2e-5, 1e-6);
    EXPECT_EQ(tr.method, "spectral");
    EXPECT_LT(tr.max_norm_drift, 1e-10);
    const double x = std::sin(std::sqrt(n) * rabi * 2e-5);
    EXPECT_NEAR(tr.samples.back().single_population, x * x, 1e-3);
}

TEST(Integrate, ZeroRabiIsStatic) {
    const std::vector<double> shifts{1e6};
    const auto tr = integrate_amplitudes(shifts, 2, 0.0, 1e-6, 1e-8);
    for (const auto& s : tr.samples) {
        EXPECT_EQ(s.ground_population, 1.0);
        EXPECT_EQ(s.single_population, 0.0);
    }
}

TEST(Integrate, Guards) {
    const std::vector<double> shifts(66, kInf);
    EXPECT_THROW(integrate_amplitudes(shifts, 12, 1e5, 1e-6, 1e-8), CapabilityError);
    const std::vector<double> wrong(3, kInf);
    EXPECT_THROW(integrate_amplitudes(wrong, 4, 1e5, 1e-6, 1e-8), UsageError);
    const std::vector<double> one{kInf};
    EXPECT_THROW(integrate_amplitudes(one, 2, 1e5, 1e-6, 0.0), DomainError);
}

TEST(Integrate, CsvHeaderAndRows) {
    const std::vector<double> shifts{kInf};
    const auto tr = integrate_amplitudes(shifts, 2, 1e5, 1e-6, 1e-7);
    const std::string csv = trajectory_csv(tr);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + static_cast<long>(tr.samples.size()));
}

}  // namespace
}  // namespace blockade
