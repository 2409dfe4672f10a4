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

#ifndef BLOCKADE_JSON_IO_H
#define BLOCKADE_JSON_IO_H

#include <string>

#include "json.hpp"

#include "blockade/hybrid_state.h"

namespace blockade {

using Json = nlohmann::ordered_json;

/// Rounds to `digits` significant digits; non-finite values pass through.
double round_sig(double x, int digits = 12);

/// Rounded number suitable for emission.
Json num(double x);

/// Deterministic text: two-space indent, trailing newline.
std::string dump(const Json& j);
/// One-line form for JSON lines files.
std::string dump_line(const Json& j);

/// Subsystem layout plus nonzero amplitudes as label -> [re, im].
Json state_to_json(const HybridState& psi, double threshold = 1e-14);

void write_text(const std::string& path, const std::string& text);

}  // namespace blockade

#endif
