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

#include "blockade/config.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "blockade/errors.h"
#include "blockade/graph.h"
#include "blockade/units.h"

namespace blockade {

namespace {

/// Reads one mapping, remembering which keys were consumed.
class Section {
   public:
    Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
        if (node_ && !node_.IsNull() && !node_.IsMap()) {
            throw ConfigError(where() + "expected a mapping");
        }
    }

    bool has(const std::string& key) {
        allowed_.insert(key);
        return node_ && node_.IsMap() && node_[key] && !node_[key].IsNull();
    }

    template <typename T>
    std::optional<T> get(const std::string& key) {
        if (!has(key)) return std::nullopt;
        try {
            return node_[key].as<T>();
        } catch (const YAML::Exception&) {
            throw ConfigError(where(key) + "has the wrong type");
        }
    }

    template <typename T>
    T get_or(const std::string& key, T fallback) {
        return get<T>(key).value_or(fallback);
    }

    YAML::Node child(const std::string& key) {
        allowed_.insert(key);
        if (!node_ || !node_.IsMap()) return YAML::Node();
        return node_[key];
    }

    std::string where(const std::string& key = "") const {
        std::string p = path_.empty() ? key : (key.empty() ? path_ : path_ + "." + key);
        return p.empty() ? "config: " : "config " + p + ": ";
    }

    void finish() const {
        if (!node_ || !node_.IsMap()) return;
        std::vector<std::string> unknown;
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!allowed_.contains(key)) unknown.push_back(key);
        }
        if (!unknown.empty()) {
            std::string msg = where() + "unknown key" + (unknown.size() > 1 ? "s" : "") + ":";
            for (const auto& k : unknown) msg += " " + k;
            throw ConfigError(msg);
        }
    }

   private:
    YAML::Node node_;
    std::string path_;
    std::set<std::string> allowed_;
};

void parse_constants(Section s, PhysicalConstants& c) {
    c.rydberg_energy = s.get_or("rydberg_energy_j", c.rydberg_energy);
    c.bohr_radius = s.get_or("bohr_radius_m", c.bohr_radius);
    c.electron_charge = s.get_or("electron_charge_c", c.electron_charge);
    c.vacuum_permittivity = s.get_or("vacuum_permittivity", c.vacuum_permittivity);
    c.boltzmann = s.get_or("boltzmann_j_per_k", c.boltzmann);
    c.light_speed = s.get_or("light_speed_m_per_s", c.light_speed);
    c.hbar = s.get_or("hbar_j_s", c.hbar);
    s.finish();
    try {
        c.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config constants: ") + e.what());
    }
}

void parse_ensemble(Section s, EnsembleConfig& e) {
    e.atom_count = s.get_or("atom_count", e.atom_count);
    e.sigma = s.get_or("sigma_um", e.sigma / units::kMicrometer) * units::kMicrometer;
    if (auto c6 = s.get<double>("c6_mhz_um6")) e.c6 = units::c6_from_mhz_um6(*c6);
    if (auto b = s.get<double>("mean_blockade_shift_mhz")) e.mean_blockade_shift = units::mhz_to_angular(*b);
    const auto rabi = s.get<double>("rabi_single_mhz");
    const auto pi_time = s.get<double>("pi_time_us");
    if (rabi && pi_time) throw ConfigError(s.where() + "give rabi_single_mhz or pi_time_us, not both");
    if (rabi) e.rabi_single = units::mhz_to_angular(*rabi);
    if (pi_time) {
        if (!(*pi_time > 0.0)) throw ConfigError(s.where("pi_time_us") + "must be positive");
        e.rabi_single = EnsembleConfig::rabi_from_pi_time(e.atom_count, *pi_time * units::kMicrosecond);
    }
    e.level_label = s.get_or<std::string>("level_label", e.level_label);
    s.finish();
}

void parse_potentials(Section s, PotentialsConfig& p) {
    p.n = s.get_or("n", p.n);
    p.dipole_prefactor = s.get_or("dipole_prefactor", p.dipole_prefactor);
    p.channel.radial_element_1 = s.get_or("radial_element_1_nm", p.channel.radial_element_1 / units::kNanometer) * units::kNanometer;
    p.channel.radial_element_2 = s.get_or("radial_element_2_nm", p.channel.radial_element_2 / units::kNanometer) * units::kNanometer;
    p.channel.energy_defect = units::mhz_to_angular(s.get_or("energy_defect_mhz", units::angular_to_mhz(p.channel.energy_defect)));
    p.c6 = units::c6_from_mhz_um6(s.get_or("c6_mhz_um6", 0.0));
    p.r_min = s.get_or("r_min_um", p.r_min / units::kMicrometer) * units::kMicrometer;
    p.r_max = s.get_or("r_max_um", p.r_max / units::kMicrometer) * units::kMicrometer;
    p.r_steps = s.get_or("r_steps", p.r_steps);
    p.theta_min = s.get_or("theta_min_rad", p.theta_min);
    p.theta_max = s.get_or("theta_max_rad", p.theta_max);
    p.theta_steps = s.get_or("theta_steps", p.theta_steps);
    s.finish();
}

void parse_dynamics(Section s, DynamicsConfig& d) {
    d.perfect_blockade = s.get_or("perfect_blockade", d.perfect_blockade);
    d.duration = s.get_or("duration_us", d.duration / units::kMicrosecond) * units::kMicrosecond;
    d.samples = s.get_or("samples", d.samples);
    d.position_seed = s.get_or<std::uint64_t>("position_seed", d.position_seed);
    d.integrator.max_atoms = s.get_or("max_atoms", d.integrator.max_atoms);
    d.integrator.tolerance = s.get_or("tolerance", d.integrator.tolerance);
    d.integrator.check_stride = s.get_or("check_stride", d.integrator.check_stride);
    if (d.samples < 1) throw ConfigError(s.where("samples") + "must be >= 1");
    s.finish();
}

void parse_protocol(Section s, ProtocolParams& p) {
    p.eta = s.get_or("eta", p.eta);
    p.eta_detector = s.get_or("eta_detector", p.eta_detector);
    p.p_abs = s.get_or("p_abs", p.p_abs);
    p.p_double = s.get_or("p_double", p.p_double);
    p.dark_rate = s.get_or("dark_rate_hz", p.dark_rate);
    p.coincidence_error = s.get_or("coincidence_error", p.coincidence_error);
    p.g_n = units::mhz_to_angular(s.get_or("g_n_mhz", units::angular_to_mhz(p.g_n)));
    p.omega_s = units::mhz_to_angular(s.get_or("omega_s_mhz", units::angular_to_mhz(p.omega_s)));
    p.protocol_time = s.get_or("protocol_time_us", p.protocol_time / units::kMicrosecond) * units::kMicrosecond;
    p.phase_offset = s.get_or("phase_offset_rad", p.phase_offset);
    s.finish();
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(s.where() + e.what());
    }
}

void parse_fusion(Section s, FusionConfig& f) {
    f.eta_prime = s.get_or("eta_prime", f.eta_prime);
    f.cluster_a = s.get_or("cluster_a", f.cluster_a);
    f.cluster_b = s.get_or("cluster_b", f.cluster_b);
    f.link_a = s.get_or("link_a", f.link_a);
    f.link_b = s.get_or("link_b", f.link_b);
    if (!(f.eta_prime >= 0.0 && f.eta_prime <= 1.0)) {
        throw ConfigError(s.where("eta_prime") + "must lie in [0, 1]");
    }
    s.finish();
}

void parse_mbqc(Section s, MbqcConfig& m) {
    m.graph = s.get_or("graph", m.graph);
    m.pattern = s.get_or("pattern", m.pattern);
    m.backend = s.get_or("backend", m.backend);
    s.finish();
}

const std::vector<std::string>& budget_required() {
    static const std::vector<std::string> keys = {
        "atom_count",         "interaction_atoms",  "wavelength_nm",        "mean_blockade_shift_mhz",
        "g_n_mhz",            "omega_s_mhz",        "eta",                  "dark_rate_hz",
        "p_success",          "number_density_cm3", "cross_section_cm2",    "mass_u",
        "temperature_k",      "spontaneous_rate_hz", "blackbody_rate_hz",   "coincidence_error"};
    return keys;
}

std::vector<std::string> parse_budget(Section s, BudgetConfig& b) {
    std::vector<std::string> missing;
    for (const auto& k : budget_required()) {
        if (!s.has(k)) missing.push_back(k);
    }
    b.atom_count = s.get_or("atom_count", b.atom_count);
    b.interaction_atoms = s.get_or("interaction_atoms", b.interaction_atoms);
    b.wavelength = s.get_or("wavelength_nm", b.wavelength / units::kNanometer) * units::kNanometer;
    if (auto w = s.get<double>("waist_um")) b.waist = *w * units::kMicrometer;
    b.mean_blockade_shift = units::mhz_to_angular(s.get_or("mean_blockade_shift_mhz", 0.0));
    b.g_n = units::mhz_to_angular(s.get_or("g_n_mhz", 0.0));
    b.omega_s = units::mhz_to_angular(s.get_or("omega_s_mhz", 0.0));
    b.eta = s.get_or("eta", b.eta);
    b.dark_rate = s.get_or("dark_rate_hz", b.dark_rate);
    b.p_success = s.get_or("p_success", b.p_success);
    // cm^-3 -> m^-3, cm^2 -> m^2
    b.number_density = s.get_or("number_density_cm3", 0.0) * 1e6;
    b.cross_section = s.get_or("cross_section_cm2", 0.0) * 1e-4;
    b.mass = s.get_or("mass_u", 0.0) * units::kAtomicMassUnit;
    b.temperature = s.get_or("temperature_k", 0.0);
    b.spontaneous_rate = s.get_or("spontaneous_rate_hz", 0.0);
    b.blackbody_rate = s.get_or("blackbody_rate_hz", 0.0);
    b.coincidence_error = s.get_or("coincidence_error", 0.0);
    b.noise_overlap = s.get_or("noise_overlap", 0.0);
    if (auto eps = s.get<double>("epsilon")) b.epsilon = *eps;
    b.include_p_double = s.get_or("include_p_double", false);
    s.finish();
    return missing;
}

}  // namespace

RunConfig RunConfig::from_node(const YAML::Node& root) {
    RunConfig cfg;
    cfg.source = YAML::Clone(root);
    Section top(root, "");
    cfg.seed = top.get_or<std::uint64_t>("seed", cfg.seed);
    cfg.trials = top.get_or<std::uint64_t>("trials", cfg.trials);
    cfg.workers = top.get_or("workers", cfg.workers);
    cfg.output_path = top.get_or<std::string>("output_path", cfg.output_path);
    parse_constants(Section(top.child("constants"), "constants"), cfg.constants);
    parse_ensemble(Section(top.child("ensemble"), "ensemble"), cfg.ensemble);
    parse_potentials(Section(top.child("potentials"), "potentials"), cfg.potentials);
    parse_dynamics(Section(top.child("dynamics"), "dynamics"), cfg.dynamics);
    parse_protocol(Section(top.child("protocol"), "protocol"), cfg.protocol);
    {
        Section ghz(top.child("ghz"), "ghz");
        cfg.ghz_qubits = ghz.get_or("qubits", cfg.ghz_qubits);
        ghz.finish();
    }
    parse_fusion(Section(top.child("fusion"), "fusion"), cfg.fusion);
    parse_mbqc(Section(top.child("mbqc"), "mbqc"), cfg.mbqc);
    const YAML::Node budget = top.child("budget");
    if (budget && !budget.IsNull()) {
        BudgetConfig b;
        b.constants = cfg.constants;
        cfg.budget_missing = parse_budget(Section(budget, "budget"), b);
        cfg.budget = b;
    }
    top.finish();
    if (cfg.workers < 1) throw ConfigError("config workers: must be >= 1");
    if (cfg.trials < 1) throw ConfigError("config trials: must be >= 1");
    return cfg;
}

RunConfig RunConfig::parse(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
    return from_node(root);
}

namespace {

bool is_named_graph(const std::string& spec) {
    for (const char* k : {"line:", "star:", "ring:"}) {
        if (spec.rfind(k, 0) == 0) return true;
    }
    return false;
}

void resolve_against(std::string& path, const std::string& base, bool graph) {
    if (path.empty() || base.empty() || (graph && is_named_graph(path))) return;
    const std::filesystem::path p(path);
    if (p.is_relative()) path = (std::filesystem::path(base) / p).lexically_normal().string();
}

void resolve_paths(RunConfig& cfg) {
    resolve_against(cfg.mbqc.graph, cfg.base_dir, true);
    resolve_against(cfg.mbqc.pattern, cfg.base_dir, false);
    resolve_against(cfg.fusion.cluster_a, cfg.base_dir, true);
    resolve_against(cfg.fusion.cluster_b, cfg.base_dir, true);
}

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    RunConfig cfg = parse(ss.str());
    cfg.base_dir = std::filesystem::path(path).parent_path().string();
    if (cfg.base_dir.empty()) cfg.base_dir = ".";
    resolve_paths(cfg);
    return cfg;
}

RunConfig RunConfig::with_value(const std::string& dotted_key, double value) const {
    YAML::Node root = YAML::Clone(source);
    std::vector<std::string> parts;
    std::istringstream ss(dotted_key);
    std::string part;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    if (parts.empty()) throw ConfigError("empty sweep key");
    std::vector<YAML::Node> chain{root};
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        YAML::Node next = chain.back()[parts[i]];
        if (!next || next.IsNull()) {
            chain.back()[parts[i]] = YAML::Node(YAML::NodeType::Map);
            next = chain.back()[parts[i]];
        }
        chain.push_back(next);
    }
    const bool integral = value == std::floor(value) && std::abs(value) < 1e15;
    if (integral) {
        chain.back()[parts.back()] = static_cast<long long>(value);
    } else {
        chain.back()[parts.back()] = value;
    }
    RunConfig out = from_node(root);
    out.base_dir = base_dir;
    resolve_paths(out);
    return out;
}

const BudgetConfig& RunConfig::require_budget() const {
    std::vector<std::string> missing = budget ? budget_missing : budget_required();
    if (!missing.empty()) {
        std::string msg = "config budget: missing";
        for (const auto& k : missing) msg += " " + k;
        throw ConfigError(msg);
    }
    return *budget;
}

SweepSpec SweepSpec::parse(const std::string& text) {
    const auto eq = text.find('=');
    const auto c1 = text.find(':', eq == std::string::npos ? 0 : eq);
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos || eq == 0) {
        throw ConfigError("sweep must look like KEY=START:STOP:STEPS, got '" + text + "'");
    }
    SweepSpec s;
    s.key = text.substr(0, eq);
    try {
        std::size_t used = 0;
        const std::string a = text.substr(eq + 1, c1 - eq - 1), b = text.substr(c1 + 1, c2 - c1 - 1),
                          c = text.substr(c2 + 1);
        s.start = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        s.stop = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        s.steps = std::stoi(c, &used);
        if (used != c.size()) throw std::invalid_argument(c);
    } catch (const std::logic_error&) {
        throw ConfigError("sweep must look like KEY=START:STOP:STEPS, got '" + text + "'");
    }
    if (s.steps < 1) throw ConfigError("sweep needs at least one step");
    return s;
}

std::vector<double> SweepSpec::values() const {
    std::vector<double> v;
    for (int i = 0; i < steps; ++i) {
        v.push_back(steps == 1 ? start : start + (stop - start) * i / (steps - 1));
    }
    return v;
}

Graph graph_from_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string kind = spec.substr(0, colon);
        if (kind == "line" || kind == "star" || kind == "ring") {
            int n = 0;
            try {
                n = std::stoi(spec.substr(colon + 1));
            } catch (const std::logic_error&) {
                throw ConfigError("bad graph size in '" + spec + "'");
            }
            if (n < 1) throw ConfigError("graph needs at least one vertex: '" + spec + "'");
            if (kind == "line") return Graph::line(n);
            if (kind == "star") return Graph::star(n);
            return Graph::ring(n);
        }
    }
    return Graph::load(spec);
}

}  // namespace blockade
