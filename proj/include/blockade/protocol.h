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

#ifndef BLOCKADE_PROTOCOL_H
#define BLOCKADE_PROTOCOL_H

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "blockade/graph.h"
#include "blockade/hybrid_state.h"
#include "blockade/json_io.h"
#include "blockade/stabilizer_tableau.h"

namespace blockade {

struct ProtocolParams {
    double eta = 1.0;            // combined source and detection efficiency
    double eta_detector = 1.0;   // detector share; the source share is eta / eta_detector
    double p_abs = 1.0;
    double p_double = 0.0;
    double dark_rate = 0.0;      // Hz
    double coincidence_error = 0.0;
    double g_n = 0.0;            // collective coupling, rad/s
    double omega_s = 0.0;        // rad/s
    double protocol_time = 0.0;  // s; 0 derives it from g_n and omega_s when both are set
    double phase_offset = 0.0;   // static interferometer phase, pair scheme only

    void validate() const;
    double source_efficiency() const { return eta_detector > 0.0 ? eta / eta_detector : 0.0; }
    /// Detection window used for dark counts.
    double window() const;
    /// 1 - exp(-dark_rate * window) per detector.
    double dark_probability() const;
};

enum class FailureCause {
    None,
    NoClick,
    DoubleClick,
    DarkFalseHerald,
    AbsorptionFailure,
    DoubleExcitation,
    HomCoincidence,
};

std::string to_string(FailureCause c);

struct TrialOutcome {
    bool success = false;
    std::vector<DetectionRecord> herald;  // one record per detector
    FailureCause failure_cause = FailureCause::None;
    double fidelity = 0.0;                // conditional fidelity; NaN unless success
    std::string target;                   // "psi+", "psi-", "ghz"
    double correction_phase = 0.0;        // Phase(phi) applied on ensemble 0 (GHZ)
    std::optional<HybridState> post_state;

    Json to_json(std::uint64_t trial) const;
};

/// Which interferometer to run: the two-ensemble entangling operation
/// (`qubits` = 2) or the one-step GHZ scheme on `qubits` ensembles.
struct Scheme {
    enum class Kind { Pair, Ghz };
    Kind kind = Kind::Pair;
    int qubits = 2;

    static Scheme pair() { return {Kind::Pair, 2}; }
    static Scheme ghz(int q);
};

/// Largest GHZ register the dense interferometer simulation accepts.
inline constexpr int kMaxGhzQubits = 8;

/// Entangling operation: path-entangled pair, blockaded absorption in both
/// ensembles, second beam splitter, two detectors. A click on detector 1
/// heralds psi+ = (|sg> + i|gs>)/sqrt(2), on detector 0 psi-.
TrialOutcome entangle_pair(const ProtocolParams& params, std::uint64_t seed);

/// One-step GHZ scheme. Pair k feeds arms (2k, 2k+1); a beam splitter joins
/// arm 2k+1 with arm 2k+2 (mod q); success needs exactly one click per
/// beam splitter. Corrections: logical X on the odd ensembles and Phase(phi)
/// on ensemble 0.
TrialOutcome ghz_generate(int q, const ProtocolParams& params, std::uint64_t seed);

/// eta^{Q/2} (Q - 2) / 2^{Q - 2}.
double success_prob_analytic(int q, double eta);
/// Herald probability of the implemented wiring, 2 eta^{Q/2} / 2^{Q/2}.
double ghz_wiring_success_prob(int q, double eta);

/// Reusable simulator with per-configuration caches; one per worker.
class ProtocolSimulator {
   public:
    ProtocolSimulator(Scheme scheme, ProtocolParams params);
    ~ProtocolSimulator();
    ProtocolSimulator(ProtocolSimulator&&) noexcept;
    ProtocolSimulator& operator=(ProtocolSimulator&&) noexcept;

    /// One trial drawing from `rng`; `keep_state` fills post_state.
    TrialOutcome trial(Rng& rng, bool keep_state = false);

    const Scheme& scheme() const;
    const ProtocolParams& params() const;

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct BinomialSummary {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double rate = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;   // Wilson 95%
    double ci_high = 0.0;
    double analytic = 0.0;
    double z_score = 0.0;  // (rate - analytic) / sqrt(analytic (1 - analytic) / trials)
};

BinomialSummary summarize_binomial(std::uint64_t trials, std::uint64_t successes, double analytic);

struct RunSummary {
    Scheme scheme;
    BinomialSummary counts;
    std::string analytic_formula;
    double wiring_rate = 0.0;    // GHZ: herald probability of the implemented wiring
    double mean_fidelity = 0.0;  // over successful trials; NaN when there are none
    std::map<std::string, std::uint64_t> causes;

    Json to_json() const;
};

/// Runs `trials` trials, trial i drawing from Rng::for_stream(master_seed, i).
/// Results do not depend on `workers`. `on_record` sees every outcome in
/// trial order.
RunSummary run_trials(Scheme scheme, const ProtocolParams& params, std::uint64_t trials,
                      std::uint64_t master_seed, int workers,
                      const std::function<void(std::uint64_t, const TrialOutcome&)>& on_record = {});

struct FusionResult {
    bool success = false;
    Graph graph;                  // merged graph, or the recycled pieces
    StabilizerTableau tableau{1};
    std::vector<int> removed;     // link qubits Z-measured on failure
    std::vector<int> outcomes;    // their outcomes
    std::vector<std::string> corrections;
};

/// Fusion of two graph-state clusters through `link_a` (in a) and `link_b`
/// (in b). The joint register lists a's qubits, then b's. Success joins the
/// link qubits with a CZ; failure Z-measures both and removes them.
FusionResult apply_fusion(const Graph& a, const Graph& b, int link_a, int link_b, bool success,
                          Rng& rng);

/// Success with probability eta_prime / 8.
FusionResult fuse_clusters(const Graph& a, const Graph& b, int link_a, int link_b,
                           double eta_prime, std::uint64_t seed);

struct FusionSummary {
    BinomialSummary counts;
    Json to_json() const;
};

FusionSummary run_fusion_trials(const Graph& a, const Graph& b, int link_a, int link_b,
                                double eta_prime, std::uint64_t trials, std::uint64_t master_seed,
                                const std::function<void(std::uint64_t, const FusionResult&)>& on_record = {});

}  // namespace blockade

#endif
