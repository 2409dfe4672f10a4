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

#ifndef BLOCKADE_CONFIG_H
#define BLOCKADE_CONFIG_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "blockade/ensemble_dynamics.h"
#include "blockade/error_budget.h"
#include "blockade/protocol.h"
#include "blockade/rydberg_physics.h"

namespace blockade {

struct PotentialsConfig {
    int n = 58;
    double dipole_prefactor = 1.0;
    ForsterChannel channel;
    double c6 = 0.0;  // rad/s m^6
    double r_min = 1e-6, r_max = 10e-6;
    int r_steps = 10;
    double theta_min = 0.0, theta_max = 0.0;
    int theta_steps = 1;
};

struct DynamicsConfig {
    bool perfect_blockade = false;
    double duration = 0.0;  // s; 0 means one collective pi time
    int samples = 200;
    std::uint64_t position_seed = 1;
    IntegratorOptions integrator;
};

struct FusionConfig {
    double eta_prime = 1.0;
    std::string cluster_a = "star:4";  // "line:n", "star:n", "ring:n" or an edge-list path
    std::string cluster_b = "star:4";
    int link_a = 1;
    int link_b = 1;
};

struct MbqcConfig {
    std::string graph;
    std::string pattern;
    std::string backend = "tableau";
};

/// KEY=START:STOP:STEPS with KEY a dotted config path.
struct SweepSpec {
    std::string key;
    double start = 0.0, stop = 0.0;
    int steps = 1;

    static SweepSpec parse(const std::string& text);
    std::vector<double> values() const;
};

struct RunConfig {
    std::uint64_t seed = 1;
    std::uint64_t trials = 1000;
    int workers = 1;
    std::string output_path = "out";

    PhysicalConstants constants;
    EnsembleConfig ensemble;
    PotentialsConfig potentials;
    DynamicsConfig dynamics;
    ProtocolParams protocol;
    int ghz_qubits = 4;
    FusionConfig fusion;
    std::optional<BudgetConfig> budget;
    std::vector<std::string> budget_missing;  // required budget keys absent from the file
    MbqcConfig mbqc;

    YAML::Node source;
    std::string base_dir;  // relative file paths resolve against this; empty keeps them as given

    /// Throws ConfigError on malformed input, unknown keys or bad values.
    static RunConfig parse(const std::string& yaml_text);
    static RunConfig from_node(const YAML::Node& root);
    static RunConfig load(const std::string& path);

    /// Copy of the source tree with `dotted_key` set to `value`, reparsed.
    RunConfig with_value(const std::string& dotted_key, double value) const;

    /// The budget section, or ConfigError listing every missing key.
    const BudgetConfig& require_budget() const;
};

/// Named graph ("line:5", "star:4", "ring:6") or an edge-list file.
Graph graph_from_spec(const std::string& spec);

}  // namespace blockade

#endif
