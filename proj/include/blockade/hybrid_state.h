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

#ifndef BLOCKADE_HYBRID_STATE_H
#define BLOCKADE_HYBRID_STATE_H

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blockade/rng.h"

namespace blockade {

using Complex = std::complex<double>;

enum class SubsystemKind { Mode, Ensemble, Qubit };

/// One tensor factor. Modes hold Fock occupations 0..dim-1. Ensembles are
/// either the full (g, s, e, r) site (dim 4) or restricted to the (e, r)
/// interaction manifold (dim 2). Qubits are plain two-level sites.
struct Subsystem {
    SubsystemKind kind = SubsystemKind::Mode;
    int dim = 3;

    static Subsystem mode(int cutoff_dim = 3) { return {SubsystemKind::Mode, cutoff_dim}; }
    static Subsystem ensemble() { return {SubsystemKind::Ensemble, 4}; }
    static Subsystem ensemble_er() { return {SubsystemKind::Ensemble, 2}; }
    static Subsystem qubit() { return {SubsystemKind::Qubit, 2}; }
};

/// Ensemble level indices for a dim-4 site.
enum class Level : int { G = 0, S = 1, E = 2, R = 3 };

/// Index of level e / r in an ensemble subsystem of the given dimension.
int level_e(int dim);
int level_r(int dim);

/// Dense amplitude vector over a tensor product of subsystems. The first
/// subsystem is the most significant digit of the flat index, so basis
/// labels read left to right in subsystem order.
class HybridState {
   public:
    /// All-zero basis state (vacuum modes, ensembles in level 0).
    explicit HybridState(std::vector<Subsystem> subsystems);

    /// Basis state with the given digit per subsystem.
    static HybridState basis(std::vector<Subsystem> subsystems, std::span<const int> digits);
    /// n qubits in |0...0>.
    static HybridState qubits(int n);

    const std::vector<Subsystem>& subsystems() const { return subsystems_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    int count() const { return static_cast<int>(subsystems_.size()); }

    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::vector<Complex>& mutable_amplitudes() { return amplitudes_; }

    std::size_t index_of(std::span<const int> digits) const;
    std::vector<int> digits_of(std::size_t index) const;
    /// Digit of subsystem `which` within flat index `index`.
    int digit(std::size_t index, int which) const;
    std::size_t stride(int which) const { return strides_[static_cast<std::size_t>(which)]; }

    Complex amplitude(std::span<const int> digits) const;
    Complex amplitude(std::initializer_list<int> digits) const;
    void set_amplitude(std::span<const int> digits, Complex value);
    void set_amplitude(std::initializer_list<int> digits, Complex value);

    double norm_squared() const;
    /// Rescales to unit norm; throws StateError on a zero vector.
    void normalize();

    /// Applies `op` (dim x dim) to one subsystem.
    void apply_local_operator(int which, const Eigen::MatrixXcd& op);

    /// Label like "|0,1;e,r>" (modes then sites, in subsystem order).
    std::string basis_label(std::size_t index) const;

   private:
    std::vector<Subsystem> subsystems_;
    std::vector<std::size_t> strides_;
    std::vector<Complex> amplitudes_;
};

/// Photon occupation above the cutoff of a mode.
struct CutoffError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// 50:50 beam splitter a -> (a + i b)/sqrt2, b -> (i a + b)/sqrt2 on the
/// creation operators of modes `mode_a` and `mode_b`. Throws CutoffError if
/// any populated output occupation exceeds its mode's cutoff.
void beam_splitter(HybridState& state, int mode_a, int mode_b);

/// |n> -> e^{i n phi} |n> on one mode.
void phase_shift(HybridState& state, int mode, double phi);

struct AbsorptionModel {
    double p_abs = 1.0;     // 1 - epsilon
    double p_double = 0.0;  // P2, conditional on two photons reaching the ensemble
};

struct AbsorptionEvent {
    bool absorbed = true;            // false: absorption failed, state untouched
    bool double_excitation = false;  // both photons absorbed: ensemble left the qubit manifold
};

/// Blockaded absorption in one arm: |n>|e> -> |n-1>|r> for n >= 1, so only
/// one photon of a pair is absorbed. Components with the ensemble in r are
/// untouched. Throws StateError if the ensemble has population outside
/// {e, r}, or if two components would map onto the same basis state.
void blockaded_absorption(HybridState& state, int mode, int ensemble);

/// Stochastic version: with probability 1 - p_abs the absorption fails and
/// the state is unchanged. Otherwise, with probability p_double times the
/// weight of the two-photon component, a double excitation happens: the
/// state collapses onto that component, both photons disappear, and the
/// event flag is set (the ensemble state is then outside the model and must
/// not be used). One uniform draw per decision, in that order.
/// Draws absorption failure (probability 1 - p_abs), then the double
/// excitation Kraus branch (probability p_double times the weight of the
/// |2>|e> component), then absorbs.
AbsorptionEvent blockaded_absorption(HybridState& state, int mode, int ensemble,
                                     const AbsorptionModel& model, Rng& rng);

/// Weight of the |2>_mode |e>_ensemble component.
double two_photon_weight(const HybridState& state, int mode, int ensemble);
/// Double-excitation branch: keeps the |2>|e> component, removes both
/// photons, puts the ensemble in r and renormalizes.
void project_double_excitation(HybridState& state, int mode, int ensemble);
/// Complementary branch: scales |2>|e> by sqrt(1 - p_double) and renormalizes.
void suppress_double_excitation(HybridState& state, int mode, int ensemble, double p_double);

struct DetectorModel {
    double efficiency = 1.0;   // per-photon detection probability
    double dark_prob = 0.0;    // probability of a dark click in the window
    bool number_resolving = false;
};

struct DetectionRecord {
    int mode_index = 0;
    bool clicked = false;
    int true_photons = 0;
    int detected_photons = 0;
    bool dark = false;  // the click came from a dark count only
};

/// Photon-number measurement on one mode followed by lossy, non-resolving
/// detection. The state is projected onto the sampled true photon number
/// and renormalized. Draws: photon number, one draw per photon for loss,
/// one for the dark count.
DetectionRecord photodetect(HybridState& state, int mode, const DetectorModel& detector, Rng& rng);

/// |<target|psi>|^2. Throws UsageError on dimension mismatch.
double fidelity(const HybridState& state, const HybridState& target);
/// <target|rho|target>.
double fidelity(const Eigen::MatrixXcd& rho, const HybridState& target);

/// Applies a unitary to one subsystem; throws UsageError if `op` is not
/// unitary to 1e-12 or has the wrong size.
void apply_local(HybridState& state, int which, const Eigen::MatrixXcd& op);

/// Density matrix of the kept subsystems (in their original order).
Eigen::MatrixXcd reduced_density(const HybridState& state, std::span<const int> keep);

/// Pure state of the kept subsystems, valid when the discarded subsystems
/// are in a product basis state. Throws StateError otherwise.
HybridState pure_factor(const HybridState& state, std::span<const int> keep);

/// Ensemble transfer e -> g, r -> s (the Omega_g / Omega_s pulses after
/// heralding) as a 4x4 unitary on (g, s, e, r).
Eigen::Matrix4cd transfer_to_storage();

}  // namespace blockade

#endif
