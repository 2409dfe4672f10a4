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

#include "blockade/graph.h"

#include <fstream>
#include <sstream>

#include "blockade/errors.h"

namespace blockade {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {
    if (n < 0) throw UsageError("negative vertex count");
}

Graph Graph::line(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph Graph::star(int n, int center) {
    Graph g(n);
    for (int i = 0; i < n; ++i) {
        if (i != center) g.add_edge(center, i);
    }
    return g;
}

Graph Graph::ring(int n) {
    Graph g = line(n);
    if (n > 2) g.add_edge(n - 1, 0);
    return g;
}

void Graph::check(int a) const {
    if (a < 0 || a >= n_) {
        throw UsageError("vertex " + std::to_string(a) + " out of range for " +
                         std::to_string(n_) + "-vertex graph");
    }
}

bool Graph::has_edge(int a, int b) const {
    check(a);
    check(b);
    return adj_[static_cast<std::size_t>(a)].contains(b);
}

void Graph::add_edge(int a, int b) {
    check(a);
    check(b);
    if (a == b) throw UsageError("self-loop at vertex " + std::to_string(a));
    adj_[static_cast<std::size_t>(a)].insert(b);
    adj_[static_cast<std::size_t>(b)].insert(a);
}

void Graph::remove_edge(int a, int b) {
    check(a);
    check(b);
    adj_[static_cast<std::size_t>(a)].erase(b);
    adj_[static_cast<std::size_t>(b)].erase(a);
}

void Graph::toggle_edge(int a, int b) {
    if (has_edge(a, b)) {
        remove_edge(a, b);
    } else {
        add_edge(a, b);
    }
}

const std::set<int>& Graph::neighbours(int a) const {
    check(a);
    return adj_[static_cast<std::size_t>(a)];
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a) {
        for (int b : adj_[static_cast<std::size_t>(a)]) {
            if (a < b) out.emplace_back(a, b);
        }
    }
    return out;
}

std::size_t Graph::edge_count() const { return edges().size(); }

void Graph::local_complement(int a) {
    const std::vector<int> nb(neighbours(a).begin(), neighbours(a).end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
        for (std::size_t j = i + 1; j < nb.size(); ++j) toggle_edge(nb[i], nb[j]);
    }
}

void Graph::isolate(int a) {
    const std::vector<int> nb(neighbours(a).begin(), neighbours(a).end());
    for (int b : nb) remove_edge(a, b);
}

Graph Graph::parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int declared = -1;
    int max_index = -1;
    std::vector<std::pair<int, int>> edges;
    auto fail = [&](const std::string& msg) {
        throw ConfigError("edge list line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "nodes") {
            int n;
            if (!(ls >> n) || n < 0) fail("expected a vertex count after 'nodes'");
            declared = n;
        } else {
            int u, v;
            std::istringstream fs(first);
            if (!(fs >> u) || !fs.eof() || !(ls >> v)) fail("expected two vertex indices");
            if (u < 0 || v < 0) fail("negative vertex index");
            if (u == v) fail("self-loop at vertex " + std::to_string(u));
            edges.emplace_back(u, v);
            max_index = std::max({max_index, u, v});
        }
        std::string extra;
        if (ls >> extra) fail("unexpected trailing token '" + extra + "'");
    }
    const int n = declared >= 0 ? declared : max_index + 1;
    if (max_index >= n) {
        throw ConfigError("edge list: vertex " + std::to_string(max_index) +
                          " exceeds declared count " + std::to_string(n));
    }
    Graph g(n);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

Graph Graph::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open graph file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_edge_list(ss.str());
}

std::string Graph::to_edge_list() const {
    std::ostringstream os;
    os << "nodes " << n_ << '\n';
    for (const auto& [a, b] : edges()) os << a << ' ' << b << '\n';
    return os.str();
}

PauliString cluster_generator(const Graph& g, int j) {
    PauliString p(g.size());
    p.set(j, true, false);
    for (int k : g.neighbours(j)) p.set(k, false, true);
    return p;
}

StabilizerTableau build_cluster(const Graph& g) {
    if (g.size() < 1) throw UsageError("cluster needs at least one vertex");
    StabilizerTableau t(g.size());
    for (int q = 0; q < g.size(); ++q) t.h(q);
    for (const auto& [a, b] : g.edges()) t.cz(a, b);
    return t;
}

VerifyResult verify_stabilizers(const StabilizerTableau& t, const Graph& g,
                                std::span<const int> vertices) {
    if (t.size() != g.size()) throw UsageError("tableau and graph sizes differ");
    std::vector<int> all;
    if (vertices.empty()) {
        for (int j = 0; j < g.size(); ++j) all.push_back(j);
        vertices = all;
    }
    VerifyResult res;
    for (int j : vertices) {
        if (t.expectation(cluster_generator(g, j)) != 1) {
            res.ok = false;
            res.violated.push_back(j);
        }
    }
    return res;
}

}  // namespace blockade
