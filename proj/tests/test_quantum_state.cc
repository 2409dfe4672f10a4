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

#include <gtest/gtest.h>

#include "blockade/errors.h"
#include "blockade/gate_sequence.h"
#include "blockade/hybrid_state.h"
#include "blockade/rng.h"
#include "blockade/units.h"

namespace blockade {
namespace {

using namespace std::complex_literals;
const double kS2 = 1.0 / std::sqrt(2.0);
constexpr double kPi = units::kPi;

HybridState two_modes(int n0, int n1, int dim = 3) {
    const int d[] = {n0, n1};
    return HybridState::basis({Subsystem::mode(dim), Subsystem::mode(dim)}, d);
}

// psi+- over (e, r) ensembles: (|r e> +- i |e r>)/sqrt2
HybridState psi_er(int sign) {
    HybridState s({Subsystem::ensemble_er(), Subsystem::ensemble_er()});
    s.set_amplitude({0, 0}, 0.0);
    s.set_amplitude({1, 0}, kS2);
    s.set_amplitude({0, 1}, double(sign) * 1i * kS2);
    return s;
}

TEST(BeamSplitter, HongOuMandel) {
    HybridState s = two_modes(1, 1);
    beam_splitter(s, 0, 1);
    EXPECT_NEAR(std::abs(s.amplitude({0, 2}) - 1i * kS2), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitude({2, 0}) - 1i * kS2), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitude({1, 1})), 0.0, 1e-12);
}

TEST(BeamSplitter, VacuumInvariant) {
    HybridState s = two_modes(0, 0);
    beam_splitter(s, 0, 1);
    EXPECT_NEAR(std::abs(s.amplitude({0, 0}) - 1.0), 0.0, 1e-15);
}

TEST(BeamSplitter, TwiceIsPhasedSwapAndUnitary) {
    // columns of the full map on the <=2 photon sector
    const int dim = 3;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(9, 9);
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            if (a + b > 2) continue;
            HybridState s = two_modes(a, b);
            beam_splitter(s, 0, 1);
            for (std::size_t k = 0; k < 9; ++k) u(static_cast<Eigen::Index>(k), a * dim + b) = s.amplitudes()[k];
            beam_splitter(s, 0, 1);
            // two passes: |a,b> -> i^(a+b) |b,a>
            const std::complex<double> ph = std::pow(1i, a + b);
            EXPECT_NEAR(std::abs(s.amplitude({b, a}) - ph), 0.0, 1e-12);
        }
    }
    Eigen::MatrixXcd block(6, 6);
    const int idx[] = {0, 1, 2, 3, 4, 6};  // |00>,|01>,|02>,|10>,|11>,|20>
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) block(i, j) = u(idx[i], idx[j]);
    EXPECT_LT((block.adjoint() * block - Eigen::MatrixXcd::Identity(6, 6)).norm(), 1e-12);
}

TEST(BeamSplitter, CutoffOverflowThrows) {
    HybridState s = two_modes(1, 1, 2);
    EXPECT_THROW(beam_splitter(s, 0, 1), CutoffError);
}

TEST(PhaseShift, NumberPhase) {
    HybridState s = two_modes(2, 0);
    phase_shift(s, 0, 0.3);
    EXPECT_NEAR(std::arg(s.amplitude({2, 0})), 0.6, 1e-12);
}

HybridState hom_after_absorption() {
    // modes a, b then ensembles A, B (e/r)
    const int d[] = {1, 1, 0, 0};
    HybridState s = HybridState::basis(
        {Subsystem::mode(), Subsystem::mode(), Subsystem::ensemble_er(), Subsystem::ensemble_er()}, d);
    beam_splitter(s, 0, 1);
    blockaded_absorption(s, 0, 2);
    blockaded_absorption(s, 1, 3);
    return s;
}

TEST(Absorption, BlockadeStoresOnePhotonPerEnsemble) {
    const HybridState s = hom_after_absorption();
    EXPECT_NEAR(std::abs(s.amplitude({0, 1, 0, 1}) - 1i * kS2), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitude({1, 0, 1, 0}) - 1i * kS2), 0.0, 1e-12);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(Absorption, VacuumAndFailure) {
    const int d[] = {0, 0};
    HybridState s = HybridState::basis({Subsystem::mode(), Subsystem::ensemble_er()}, d);
    const HybridState before = s;
    blockaded_absorption(s, 0, 1);
    EXPECT_EQ(fidelity(s, before), 1.0);

    const int d1[] = {1, 0};
    HybridState one = HybridState::basis({Subsystem::mode(), Subsystem::ensemble_er()}, d1);
    const HybridState keep = one;
    Rng rng(3);
    const AbsorptionModel never{0.0, 0.0};
    const AbsorptionEvent ev = blockaded_absorption(one, 0, 1, never, rng);
    EXPECT_FALSE(ev.absorbed);
    EXPECT_EQ(fidelity(one, keep), 1.0);
}

TEST(Absorption, RejectsLevelOutsideManifold) {
    const int d[] = {1, int(Level::G)};
    HybridState s = HybridState::basis({Subsystem::mode(), Subsystem::ensemble()}, d);
    EXPECT_THROW(blockaded_absorption(s, 0, 1), StateError);
}

// The full interferometer: HOM, absorption, pi on arm b, BS2, -pi/2 on
// output b. Output amplitude is (i/sqrt2)(psi+|01> + psi-|10>).
TEST(Interferometer, OutputStateAmplitudes) {
    HybridState s = hom_after_absorption();
    phase_shift(s, 1, kPi);
    beam_splitter(s, 0, 1);
    phase_shift(s, 1, -kPi / 2);
    const HybridState plus = psi_er(+1), minus = psi_er(-1);
    for (int e0 = 0; e0 < 2; ++e0) {
        for (int e1 = 0; e1 < 2; ++e1) {
            const std::complex<double> want01 = 1i * kS2 * plus.amplitude({e0, e1});
            const std::complex<double> want10 = 1i * kS2 * minus.amplitude({e0, e1});
            EXPECT_NEAR(std::abs(s.amplitude({0, 1, e0, e1}) - want01), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(s.amplitude({1, 0, e0, e1}) - want10), 0.0, 1e-12);
        }
    }
}

TEST(Photodetect, ClickHeraldsPsiPlus) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        HybridState s = hom_after_absorption();
        phase_shift(s, 1, kPi);
        beam_splitter(s, 0, 1);
        phase_shift(s, 1, -kPi / 2);
        Rng rng(seed);
        const DetectionRecord r = photodetect(s, 1, {1.0, 0.0, false}, rng);
        const int keep[] = {2, 3};
        const HybridState ens = pure_factor(s, keep);
        if (r.clicked) {
            EXPECT_NEAR(fidelity(ens, psi_er(+1)), 1.0, 1e-12);
        } else {
            EXPECT_NEAR(fidelity(ens, psi_er(-1)), 1.0, 1e-12);
        }
    }
}

TEST(Photodetect, ZeroEfficiencyNeverClicks) {
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        HybridState s = two_modes(1, 0);
        EXPECT_FALSE(photodetect(s, 0, {0.0, 0.0, false}, rng).clicked);
    }
}

TEST(Photodetect, DarkClickOnVacuum) {
    Rng rng(1);
    HybridState s = two_modes(0, 0);
    const HybridState before = s;
    const DetectionRecord r = photodetect(s, 0, {1.0, 1.0, false}, rng);
    EXPECT_TRUE(r.clicked);
    EXPECT_TRUE(r.dark);
    EXPECT_EQ(fidelity(s, before), 1.0);
}

TEST(Fidelity, PureStates) {
    EXPECT_NEAR(fidelity(psi_er(1), psi_er(1)), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(psi_er(1), psi_er(-1)), 0.0, 1e-15);
}

TEST(Fidelity, MixedWithOrthogonalNoise) {
    const double eps = 0.011;
    const HybridState p = psi_er(1), m = psi_er(-1);
    Eigen::VectorXcd vp(4), vm(4);
    for (int i = 0; i < 4; ++i) {
        vp(i) = p.amplitudes()[static_cast<std::size_t>(i)];
        vm(i) = m.amplitudes()[static_cast<std::size_t>(i)];
    }
    const Eigen::MatrixXcd rho = (1 - 2 * eps) * vp * vp.adjoint() + 2 * eps * vm * vm.adjoint();
    EXPECT_NEAR(fidelity(rho, p), 0.978, 1e-12);
}

TEST(ApplyLocal, IdentityAndPauli) {
    HybridState s = psi_er(1);
    const HybridState before = s;
    apply_local(s, 0, Eigen::Matrix2cd::Identity());
    EXPECT_NEAR(fidelity(s, before), 1.0, 1e-15);
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    apply_local(s, 1, x);
    apply_local(s, 1, x);
    EXPECT_NEAR(fidelity(s, before), 1.0, 1e-15);
    Eigen::Matrix2cd bad;
    bad << 1, 1, 0, 1;
    EXPECT_THROW(apply_local(s, 0, bad), UsageError);
}

TEST(ApplyLocal, TransferToStorage) {
    // lift (e, r) to the four-level ensemble and map e->g, r->s
    for (int sign : {+1, -1}) {
        HybridState er({Subsystem::ensemble(), Subsystem::ensemble()});
        er.set_amplitude({0, 0}, 0.0);
        er.set_amplitude({int(Level::R), int(Level::E)}, kS2);
        er.set_amplitude({int(Level::E), int(Level::R)}, double(sign) * 1i * kS2);
        apply_local(er, 0, transfer_to_storage());
        apply_local(er, 1, transfer_to_storage());
        HybridState gs({Subsystem::ensemble(), Subsystem::ensemble()});
        gs.set_amplitude({0, 0}, 0.0);
        gs.set_amplitude({int(Level::S), int(Level::G)}, kS2);
        gs.set_amplitude({int(Level::G), int(Level::S)}, double(sign) * 1i * kS2);
        EXPECT_NEAR(fidelity(er, gs), 1.0, 1e-14);
    }
}

TEST(ReducedDensity, TraceAndPurity) {
    const HybridState s = hom_after_absorption();
    const int keep[] = {2, 3};
    const Eigen::MatrixXcd rho = reduced_density(s, keep);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    // ensembles stay entangled with the modes before detection
    EXPECT_LT((rho * rho).trace().real(), 1.0 - 1e-3);
    EXPECT_THROW(pure_factor(s, keep), StateError);
}

PulseTimings reference_timings() {
    PulseTimings t;
    t.rabi_ground = units::mhz_to_angular(1.0);
    t.rabi_storage = units::mhz_to_angular(1.0);
    t.collective_pi_time = 14.6e-6;
    t.light_shift_rate = units::mhz_to_angular(1.0);
    return t;
}

bool equal_up_to_phase(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b, double tol) {
    std::complex<double> ph = 0;
    for (int i = 0; i < 4; ++i) {
        if (std::abs(b(i)) > 0.1) {
            ph = a(i) / b(i);
            break;
        }
    }
    return std::abs(std::abs(ph) - 1.0) < tol && (a - ph * b).norm() < tol;
}

TEST(GateSequence, PhaseZeroIsEmpty) {
    EXPECT_TRUE(gate_pulse_sequence(Gate::phase(0.0), reference_timings()).empty());
}

TEST(GateSequence, XTimingAndAction) {
    const auto seq = gate_pulse_sequence(Gate::x(), reference_timings());
    double central = 0.0;
    for (const auto& p : seq) {
        if (p.transition == Transition::CollectiveRydberg) central = p.duration;
    }
    EXPECT_NEAR(central, 14.6e-6, 1e-15);
    EXPECT_LT(total_duration(seq), 2.0 * central);
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    EXPECT_TRUE(equal_up_to_phase(logical_block(sequence_unitary(seq)), x, 1e-10));
}

TEST(GateSequence, HadamardSquaredIsIdentity) {
    const auto seq = gate_pulse_sequence(Gate::h(), reference_timings());
    const Eigen::Matrix2cd h = logical_block(sequence_unitary(seq));
    EXPECT_TRUE(equal_up_to_phase(h * h, Eigen::Matrix2cd::Identity(), 1e-10));
    Eigen::Matrix2cd had;
    had << kS2, kS2, kS2, -kS2;
    EXPECT_TRUE(equal_up_to_phase(h, had, 1e-10));
}

TEST(GateSequence, PhaseGate) {
    const double phi = 0.7;
    const auto seq = gate_pulse_sequence(Gate::phase(phi), reference_timings());
    const Eigen::Matrix2cd u = logical_block(sequence_unitary(seq));
    Eigen::Matrix2cd want = Eigen::Matrix2cd::Zero();
    want(0, 0) = std::exp(-0.5i * phi);
    want(1, 1) = std::exp(0.5i * phi);
    EXPECT_TRUE(equal_up_to_phase(u, want, 1e-12));
    EXPECT_THROW(parse_gate("T"), UsageError);
}

}  // namespace
}  // namespace blockade
