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

#ifndef BLOCKADE_GRAPH_H
#define BLOCKADE_GRAPH_H

#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blockade/stabilizer_tableau.h"

namespace blockade {

/// Simple undirected graph on vertices 0..n-1.
class Graph {
   public:
    explicit Graph(int n = 0);

    static Graph line(int n);
    static Graph star(int n, int center = 0);
    static Graph ring(int n);

    /// Edge-list text: one "u v" pair per line, 0-indexed. Blank lines and
    /// '#' comments are skipped; an optional "nodes N" line fixes the vertex
    /// count (otherwise max index + 1). Errors carry the line number.
    static Graph parse_edge_list(const std::string& text);
    static Graph load(const std::string& path);
    std::string to_edge_list() const;

    int size() const { return n_; }
    bool has_edge(int a, int b) const;
    void add_edge(int a, int b);
    void remove_edge(int a, int b);
    void toggle_edge(int a, int b);
    const std::set<int>& neighbours(int a) const;
    std::vector<std::pair<int, int>> edges() const;
    std::size_t edge_count() const;

    /// Complements the subgraph induced on the neighbourhood of `a`.
    void local_complement(int a);
    /// Removes every edge at `a`; the vertex index stays.
    void isolate(int a);

    bool operator==(const Graph& other) const = default;

   private:
    int n_;
    std::vector<std::set<int>> adj_;
    void check(int a) const;
};

/// S_j = X_j prod_{k in N(j)} Z_k on `n` qubits.
PauliString cluster_generator(const Graph& g, int j);

/// |+>^n followed by CZ on every edge.
StabilizerTableau build_cluster(const Graph& g);

struct VerifyResult {
    bool ok = true;
    std::vector<int> violated;
};

/// Checks S_j for every j in `vertices` (all vertices when empty): +1 group
/// membership on a tableau.
VerifyResult verify_stabilizers(const StabilizerTableau& t, const Graph& g,
                                std::span<const int> vertices = {});

}  // namespace blockade

#endif
