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

#include "blockade/mbqc.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "blockade/dense_qubits.h"
#include "blockade/errors.h"

namespace blockade {

double parse_angle(const std::string& text) {
    const auto pos = text.find("pi");
    std::size_t used = 0;
    try {
        if (pos == std::string::npos) {
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        }
        std::string coef = text.substr(0, pos);
        if (!coef.empty() && coef.back() == '*') coef.pop_back();
        double c = 1.0;
        if (coef == "-") {
            c = -1.0;
        } else if (!coef.empty() && coef != "+") {
            c = std::stod(coef, &used);
            if (used != coef.size()) throw std::invalid_argument(text);
        }
        std::string rest = text.substr(pos + 2);
        double den = 1.0;
        if (!rest.empty()) {
            if (rest.front() != '/') throw std::invalid_argument(text);
            rest.erase(0, 1);
            den = std::stod(rest, &used);
            if (used != rest.size() || den == 0.0) throw std::invalid_argument(text);
        }
        return c * std::numbers::pi / den;
    } catch (const std::logic_error&) {
        throw ConfigError("bad angle '" + text + "'");
    }
}

namespace {

std::vector<int> parse_index_list(const std::string& list) {
    std::vector<int> out;
    std::istringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        out.push_back(v);
    }
    return out;
}

int parity(const std::vector<int>& qubits, const std::vector<int>& bit_of) {
    int p = 0;
    for (int q : qubits) p ^= bit_of[static_cast<std::size_t>(q)];
    return p;
}

}  // namespace

MeasurementPattern MeasurementPattern::parse(const std::string& text) {
    MeasurementPattern pat;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string basis;
        if (!(ls >> basis)) continue;
        auto fail = [&](const std::string& msg) {
            throw ConfigError("pattern line " + std::to_string(lineno) + ": " + msg);
        };
        PatternStep step;
        if (basis == "X") {
            step.basis = MeasureBasis::X;
        } else if (basis == "Y") {
            step.basis = MeasureBasis::Y;
        } else if (basis == "Z") {
            step.basis = MeasureBasis::Z;
        } else if (basis == "B") {
            step.basis = MeasureBasis::Rotated;
        } else {
            fail("unknown basis '" + basis + "'");
        }
        if (!(ls >> step.qubit) || step.qubit < 0) fail("expected a qubit index");
        std::string tok;
        bool have_angle = false;
        while (ls >> tok) {
            try {
                if (tok.rfind("sx=", 0) == 0) {
                    step.sx = parse_index_list(tok.substr(3));
                } else if (tok.rfind("sz=", 0) == 0) {
                    step.sz = parse_index_list(tok.substr(3));
                } else if (step.basis == MeasureBasis::Rotated && !have_angle) {
                    step.alpha = parse_angle(tok);
                    have_angle = true;
                } else {
                    fail("unexpected token '" + tok + "'");
                }
            } catch (const ConfigError& e) {
                if (std::string(e.what()).rfind("pattern line", 0) == 0) throw;
                fail(e.what());
            } catch (const std::logic_error&) {
                fail("bad index list in '" + tok + "'");
            }
        }
        if (step.basis == MeasureBasis::Rotated && !have_angle) fail("B needs an angle");
        pat.steps.push_back(std::move(step));
    }
    return pat;
}

MeasurementPattern MeasurementPattern::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open pattern file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

MeasurementPattern MeasurementPattern::all(int n, MeasureBasis basis) {
    MeasurementPattern p;
    for (int q = 0; q < n; ++q) p.steps.push_back({q, basis, 0.0, {}, {}});
    return p;
}

void MeasurementPattern::validate(int qubits) const {
    std::set<int> done;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        const std::string where = "pattern step " + std::to_string(i) + ": ";
        if (s.qubit < 0 || s.qubit >= qubits) {
            throw UsageError(where + "qubit " + std::to_string(s.qubit) + " out of range");
        }
        if (done.contains(s.qubit)) {
            throw UsageError(where + "qubit " + std::to_string(s.qubit) + " measured twice");
        }
        for (const auto* list : {&s.sx, &s.sz}) {
            for (int q : *list) {
                if (!done.contains(q)) {
                    throw UsageError(where + "adaptive rule references qubit " +
                                     std::to_string(q) + " before its measurement");
                }
            }
        }
        done.insert(s.qubit);
    }
}

bool MeasurementPattern::needs_dense() const {
    for (const auto& s : steps) {
        if (s.basis != MeasureBasis::Rotated) continue;
        try {
            rotated_as_pauli(s.alpha);
        } catch (const CapabilityError&) {
            return true;
        }
    }
    return false;
}

Backend parse_backend(const std::string& name) {
    if (name == "tableau") return Backend::Tableau;
    if (name == "dense") return Backend::Dense;
    throw ConfigError("unknown backend '" + name + "' (expected tableau or dense)");
}

std::string to_string(Backend b) { return b == Backend::Tableau ? "tableau" : "dense"; }

GraphFrame::GraphFrame(const Graph& g)
    : graph_(g), frame_(static_cast<std::size_t>(g.size())) {}

void GraphFrame::fold(int q, const LocalClifford& u, const char* name, std::vector<Applied>& out) {
    auto& l = frame_[static_cast<std::size_t>(q)];
    l = l * u;
    out.push_back({q, name});
}

std::vector<GraphFrame::Applied> GraphFrame::measured(int a, PauliBasis p, int outcome) {
    const auto [sigma, q] = frame_[static_cast<std::size_t>(a)].conjugate(p);
    const int m = sigma * outcome;
    const std::set<int> na = graph_.neighbours(a);
    std::vector<Applied> out;
    switch (q) {
        case PauliBasis::Z:
            if (m == -1) {
                for (int b : na) fold(b, LocalClifford::pauli(PauliBasis::Z), "Z", out);
            }
            graph_.isolate(a);
            break;
        case PauliBasis::Y:
            for (int b : na) {
                if (m == 1) {
                    fold(b, LocalClifford::sqrt_pauli(PauliBasis::Z, -1), "sqrt(-iZ)", out);
                } else {
                    fold(b, LocalClifford::sqrt_pauli(PauliBasis::Z, 1), "sqrt(+iZ)", out);
                }
            }
            graph_.local_complement(a);
            graph_.isolate(a);
            break;
        case PauliBasis::X: {
            if (na.empty()) break;
            const int b0 = *na.begin();
            const std::set<int> nb0 = graph_.neighbours(b0);
            if (m == 1) {
                fold(b0, LocalClifford::sqrt_pauli(PauliBasis::Y, 1), "sqrt(+iY)", out);
                for (int b : na) {
                    if (b != b0 && !nb0.contains(b)) fold(b, LocalClifford::pauli(PauliBasis::Z), "Z", out);
                }
            } else {
                fold(b0, LocalClifford::sqrt_pauli(PauliBasis::Y, -1), "sqrt(-iY)", out);
                for (int b : nb0) {
                    if (b != a && !na.contains(b)) fold(b, LocalClifford::pauli(PauliBasis::Z), "Z", out);
                }
            }
            graph_.local_complement(b0);
            graph_.local_complement(a);
            graph_.local_complement(b0);
            graph_.isolate(a);
            break;
        }
    }
    frame_[static_cast<std::size_t>(a)] = LocalClifford::identity();
    return out;
}

std::vector<std::pair<int, LocalClifford>> GraphFrame::flush() {
    std::vector<std::pair<int, LocalClifford>> out;
    for (int q = 0; q < graph_.size(); ++q) {
        auto& l = frame_[static_cast<std::size_t>(q)];
        if (!l.is_identity()) out.emplace_back(q, l.adjoint());
        l = LocalClifford::identity();
    }
    return out;
}

std::string Transcript::bits() const {
    std::string s;
    for (const auto& r : steps) s += r.outcome == 1 ? '0' : '1';
    return s;
}

Json Transcript::to_json() const {
    Json outcomes = Json::array();
    for (const auto& r : steps) {
        Json o = {{"qubit", r.qubit}, {"basis", r.basis}};
        if (r.basis == "B") {
            o["angle"] = num(r.angle);
        } else {
            o["sign"] = r.sign;
        }
        o["outcome"] = r.outcome;
        o["deterministic"] = r.deterministic;
        outcomes.push_back(std::move(o));
    }
    Json corr = Json::array();
    for (const auto& c : corrections) {
        corr.push_back({{"step", c.step}, {"qubit", c.qubit}, {"op", c.op}});
    }
    Json j = {{"backend", to_string(backend)}, {"seed", seed}, {"qubits", qubits},
              {"outcomes", outcomes}, {"bits", bits()}, {"corrections", corr}};
    if (final_graph) {
        Json edges = Json::array();
        for (const auto& [a, b] : final_graph->edges()) edges.push_back({a, b});
        j["final_graph"] = {{"nodes", final_graph->size()}, {"edges", edges}};
    } else {
        j["final_graph"] = nullptr;
    }
    j["remaining"] = remaining;
    if (tableau) {
        Json gens = Json::array();
        for (const auto& s : tableau->stabilizers()) gens.push_back(s.str());
        j["final_generators"] = gens;
    }
    if (dense) j["final_state"] = state_to_json(*dense, 1e-12);
    return j;
}

Transcript run_pattern(const Graph& initial, const MeasurementPattern& pattern, Backend backend,
                       std::uint64_t seed) {
    const int n = initial.size();
    pattern.validate(n);
    if (backend == Backend::Tableau && pattern.needs_dense()) {
        throw CapabilityError(
            "pattern has B(alpha) with alpha not a multiple of pi/2; use the dense backend");
    }
    if (backend == Backend::Dense && n > kMaxDenseQubits) {
        throw CapabilityError("dense backend is limited to " + std::to_string(kMaxDenseQubits) +
                              " qubits");
    }

    Transcript tr;
    tr.backend = backend;
    tr.seed = seed;
    tr.qubits = n;
    Rng rng(seed);
    std::optional<StabilizerTableau> tab;
    std::optional<HybridState> psi;
    if (backend == Backend::Tableau) {
        tab = build_cluster(initial);
    } else {
        psi = build_cluster_dense(initial);
    }
    std::optional<GraphFrame> frame(std::in_place, initial);
    std::vector<int> bit_of(static_cast<std::size_t>(n), 0);
    std::vector<bool> measured(static_cast<std::size_t>(n), false);

    auto flush = [&](int step) {
        if (!frame) return;
        for (const auto& [q, l] : frame->flush()) {
            if (tab) {
                apply_gate_word(*tab, q, l.gate_word());
            } else {
                dense_apply(*psi, q, l.matrix());
            }
            tr.corrections.push_back({step, q, "flush:" + l.gate_word()});
        }
    };

    for (std::size_t i = 0; i < pattern.steps.size(); ++i) {
        const PatternStep& st = pattern.steps[i];
        const int sx = parity(st.sx, bit_of);
        const int sz = parity(st.sz, bit_of);
        StepRecord rec;
        rec.qubit = st.qubit;

        // Physical Pauli and sign, or a generic angle on the dense backend.
        std::optional<std::pair<int, PauliBasis>> pauli;
        double angle = 0.0;
        switch (st.basis) {
            case MeasureBasis::X:
                rec.basis = "X";
                pauli = {sz ? -1 : 1, PauliBasis::X};
                break;
            case MeasureBasis::Y:
                rec.basis = "Y";
                pauli = {(sx ^ sz) ? -1 : 1, PauliBasis::Y};
                break;
            case MeasureBasis::Z:
                rec.basis = "Z";
                pauli = {sx ? -1 : 1, PauliBasis::Z};
                break;
            case MeasureBasis::Rotated:
                rec.basis = "B";
                angle = (sx ? -st.alpha : st.alpha) + (sz ? std::numbers::pi : 0.0);
                rec.angle = angle;
                try {
                    pauli = rotated_as_pauli(angle);
                } catch (const CapabilityError&) {
                    pauli.reset();
                }
                break;
        }

        MeasurementResult raw;
        if (pauli) {
            rec.sign = pauli->first;
            raw = tab ? tab->measure_pauli(st.qubit, pauli->second, rng)
                      : dense_measure_pauli(*psi, st.qubit, pauli->second, rng);
            rec.outcome = pauli->first * raw.outcome;
            if (frame) {
                for (const auto& c : frame->measured(st.qubit, pauli->second, raw.outcome)) {
                    tr.corrections.push_back({static_cast<int>(i), c.qubit, c.op});
                }
            }
        } else {
            // Generic angle: bring the state back to graph form, then stop
            // tracking the graph.
            flush(static_cast<int>(i));
            frame.reset();
            raw = measure_rotated(*psi, st.qubit, angle, rng);
            rec.outcome = raw.outcome;
        }
        rec.deterministic = raw.deterministic;
        bit_of[static_cast<std::size_t>(st.qubit)] = rec.outcome == 1 ? 0 : 1;
        measured[static_cast<std::size_t>(st.qubit)] = true;
        tr.steps.push_back(rec);
    }
    flush(-1);

    for (int q = 0; q < n; ++q) {
        if (!measured[static_cast<std::size_t>(q)]) tr.remaining.push_back(q);
    }
    if (frame) tr.final_graph = frame->graph();
    tr.tableau = std::move(tab);
    tr.dense = std::move(psi);
    return tr;
}

}  // namespace blockade
