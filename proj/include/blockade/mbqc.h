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

#ifndef BLOCKADE_MBQC_H
#define BLOCKADE_MBQC_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blockade/graph.h"
#include "blockade/hybrid_state.h"
#include "blockade/json_io.h"
#include "blockade/local_clifford.h"
#include "blockade/stabilizer_tableau.h"

namespace blockade {

enum class MeasureBasis { X, Y, Z, Rotated };

/// One measurement. The measured observable is adapted from the outcomes of
/// earlier steps: with s_x, s_z the parities of the outcome bits listed in
/// `sx` and `sz`, B(alpha) becomes B((-1)^{s_x} alpha + s_z pi); the Pauli
/// bases pick up the equivalent sign ((-1)^{s_z} for X, (-1)^{s_x + s_z} for
/// Y, (-1)^{s_x} for Z).
struct PatternStep {
    int qubit = 0;
    MeasureBasis basis = MeasureBasis::Z;
    double alpha = 0.0;
    std::vector<int> sx;
    std::vector<int> sz;
};

struct MeasurementPattern {
    std::vector<PatternStep> steps;

    /// Text format, one step per line:
    ///   <X|Y|Z> <qubit> [sx=i,j] [sz=k]
    ///   B <qubit> <angle> [sx=...] [sz=...]
    /// Angles are radians or multiples of pi ("pi/4", "-3*pi/2"). '#'
    /// starts a comment. Errors carry the line number.
    static MeasurementPattern parse(const std::string& text);
    static MeasurementPattern load(const std::string& path);

    static MeasurementPattern all(int n, MeasureBasis basis);

    /// Throws UsageError for out-of-range or repeated qubits and for
    /// adaptive references to qubits not measured earlier.
    void validate(int qubits) const;
    /// True when some B(alpha) is not a multiple of pi/2.
    bool needs_dense() const;
};

double parse_angle(const std::string& text);

enum class Backend { Tableau, Dense };

Backend parse_backend(const std::string& name);
std::string to_string(Backend b);

/// Graph-state bookkeeping under Pauli measurements: the unmeasured qubits
/// are in L |G> with L a product of single-qubit Cliffords.
class GraphFrame {
   public:
    explicit GraphFrame(const Graph& g);

    const Graph& graph() const { return graph_; }
    const LocalClifford& local(int q) const { return frame_[static_cast<std::size_t>(q)]; }

    struct Applied {
        int qubit;
        std::string op;
    };

    /// Pauli P measured on the physical state with outcome `outcome`.
    /// Returns the corrections folded into the frame.
    std::vector<Applied> measured(int q, PauliBasis p, int outcome);

    /// Resets the frame, returning the (qubit, L^dagger) pairs to apply.
    std::vector<std::pair<int, LocalClifford>> flush();

   private:
    Graph graph_;
    std::vector<LocalClifford> frame_;
    void fold(int q, const LocalClifford& u, const char* name, std::vector<Applied>& out);
};

struct StepRecord {
    int qubit = 0;
    std::string basis;     // "X", "Y", "Z", "B"
    double angle = 0.0;    // adapted angle for B
    int sign = 1;          // adaptation sign for Pauli bases
    int outcome = 1;
    bool deterministic = false;
};

struct CorrectionRecord {
    int step = 0;  // -1 for the final flush
    int qubit = 0;
    std::string op;
};

struct Transcript {
    Backend backend = Backend::Tableau;
    std::uint64_t seed = 0;
    int qubits = 0;
    std::vector<StepRecord> steps;
    std::vector<CorrectionRecord> corrections;
    std::optional<Graph> final_graph;  // empty once a generic B(alpha) ran
    std::vector<int> remaining;
    std::optional<StabilizerTableau> tableau;
    std::optional<HybridState> dense;

    std::string bits() const;
    Json to_json() const;
};

/// Executes `pattern` on the cluster state of `initial`. Corrections are
/// tracked in a GraphFrame and flushed at the end so that the remaining
/// qubits hold the cluster state of `final_graph`.
Transcript run_pattern(const Graph& initial, const MeasurementPattern& pattern, Backend backend,
                       std::uint64_t seed);

}  // namespace blockade

#endif
