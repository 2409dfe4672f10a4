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

#ifndef BLOCKADE_ENSEMBLE_DYNAMICS_H
#define BLOCKADE_ENSEMBLE_DYNAMICS_H

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blockade {

/// One atomic ensemble driven on the e <-> r transition.
///
/// Frequencies are angular (rad/s); `c6` is in rad/s * m^6; `sigma` in m.
struct EnsembleConfig {
    int atom_count = 300;
    double sigma = 3.0e-6;
    std::optional<double> c6;
    std::optional<double> mean_blockade_shift;
    double rabi_single = 0.0;
    std::string level_label;

    void validate() const;

    /// Per-atom Rabi frequency that makes the collective pi-pulse last
    /// `pi_time` in the blockade limit: Omega = pi / (2 sqrt(N) t).
    static double rabi_from_pi_time(int atom_count, double pi_time);
};

/// Atom coordinates along the cloud axis (m).
struct AtomPositions {
    std::vector<double> z;
};

/// Pairwise separation below which two sampled atoms count as coincident.
/// Atomic scale, so the exclusion barely distorts the Gaussian profile.
inline constexpr double kCoincidenceDistance = 1e-10;

/// Draws N positions from Normal(0, sigma^2). If any pair lies closer than
/// kCoincidenceDistance of an earlier atom, that atom is redrawn.
AtomPositions sample_positions(const EnsembleConfig& config, std::uint64_t seed);

/// Delta_jk = C6 / |z_j - z_k|^6 for j < k, in lexicographic (j, k) order.
/// Throws DomainError on coincident atoms.
std::vector<double> pair_shifts(const AtomPositions& positions, double c6);

/// Index of pair (j, k), j < k, in the lexicographic order used by
/// pair_shifts and CollectiveAmplitudes::pair.
std::size_t pair_index(int atom_count, int j, int k);

struct BlockadeSummary {
    double mean_shift = 0.0;     // sum 1/Delta_jk        (s)
    double mean_shift_sq = 0.0;  // sum 1/Delta_jk^2      (s^2)
    double saturation = 1.0;     // l
    double p_single = 1.0;       // P1 = 1/l
    double p_double = 0.0;       // P2
    double freq_shift = 0.0;     // delta omega (rad/s)
    double pi_time = 0.0;        // s
};

/// Position mode: explicit pair shifts (infinite entries model perfect
/// blockade for that pair).
BlockadeSummary blockade_summary(std::span<const double> shifts, int atom_count, double rabi);

/// Mean-blockade-shift mode: P2 = Omega_N^2 (N - 1) / (2 N B^2), with the
/// remaining quantities evaluated for uniform pair shifts Delta_jk = B.
BlockadeSummary blockade_summary_mean_shift(double mean_blockade_shift, int atom_count,
                                            double rabi);

/// |c_r(t)|^2 = sin^2(sqrt(N l) Omega t) / l.
double rabi_population(double t, int atom_count, double rabi, double saturation);

/// exp(-2 P2).
double single_qubit_fidelity(double p_double);

struct CollectiveAmplitudes {
    std::complex<double> ground;
    std::vector<std::complex<double>> single;
    std::vector<std::complex<double>> pair;

    double ground_population() const;
    double single_population() const;
    double pair_population() const;
    double norm_squared() const;
};

struct TrajectorySample {
    double t = 0.0;
    double ground_population = 0.0;
    double single_population = 0.0;
    double pair_population = 0.0;
    double norm = 1.0;
};

struct AmplitudeTrajectory {
    std::vector<TrajectorySample> samples;
    CollectiveAmplitudes final_state;
    double substep = 0.0;
    double max_norm_drift = 0.0;
    std::string method = "rk4";  // "rk4" or "spectral"
};

struct IntegratorOptions {
    int max_atoms = 10;
    double tolerance = 1e-8;
    /// Step-doubling error check every this many output intervals.
    int check_stride = 8;
    /// Above this many RK4 substeps the constant generator is diagonalised
    /// instead and the samples are exact up to rounding.
    double max_rk_substeps = 2e7;
    /// In the spectral path, shifts above this multiple of Omega are treated
    /// as a perfect blockade (their light shift is ~Omega / cutoff).
    double blockade_cutoff = 1e8;
};

/// Integrates the ground / single / double excitation amplitudes without
/// adiabatic elimination, starting from c_g = 1:
///
///   dc_g/dt  =  Omega sum_j c_j
///   dc_j/dt  = -Omega c_g + Omega sum_{k>j} c_jk
///   dc_jk/dt = -Omega c_j - i Delta_jk c_jk
///
/// Pairs with infinite shift are blockaded exactly and never populated.
/// Stiff cases (huge shifts from close pairs) take the spectral path.
/// Samples are written every `dt` over [0, duration].
AmplitudeTrajectory integrate_amplitudes(std::span<const double> shifts, int atom_count,
                                         double rabi, double duration, double dt,
                                         const IntegratorOptions& options = {});

/// CSV with header `t,ground,single,double,norm`.
std::string trajectory_csv(const AmplitudeTrajectory& trajectory);

}  // namespace blockade

#endif
