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

#include "blockade/json_io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "blockade/errors.h"

namespace blockade {

double round_sig(double x, int digits) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    double out = 0.0;
    std::from_chars(buf, buf + std::char_traits<char>::length(buf), out);
    return out;
}

Json num(double x) {
    if (!std::isfinite(x)) return Json(nullptr);
    const double r = round_sig(x);
    return r == 0.0 ? Json(0.0) : Json(r);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string dump_line(const Json& j) { return j.dump() + "\n"; }

Json state_to_json(const HybridState& psi, double threshold) {
    Json subs = Json::array();
    for (const auto& s : psi.subsystems()) {
        const char* kind = s.kind == SubsystemKind::Mode       ? "mode"
                           : s.kind == SubsystemKind::Ensemble ? "ensemble"
                                                               : "qubit";
        subs.push_back({{"kind", kind}, {"dim", s.dim}});
    }
    Json amps = Json::object();
    const auto a = psi.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i]) > threshold) {
            amps[psi.basis_label(i)] = Json::array({num(a[i].real()), num(a[i].imag())});
        }
    }
    return {{"subsystems", subs}, {"norm", num(psi.norm_squared())}, {"amplitudes", amps}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << text;
    if (!f) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace blockade
