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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "blockade/config.h"
#include "blockade/dense_qubits.h"
#include "blockade/ensemble_dynamics.h"
#include "blockade/error_budget.h"
#include "blockade/errors.h"
#include "blockade/json_io.h"
#include "blockade/mbqc.h"
#include "blockade/protocol.h"
#include "blockade/rydberg_physics.h"
#include "blockade/units.h"

namespace fs = std::filesystem;
using namespace blockade;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kCapability = 3, kNumerical = 4 };

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<int> workers;
    std::string out;
    std::string sweep;
    std::string backend;
    std::string graph;
    std::string pattern;
    std::optional<int> qubits;
    bool verify = false;
};

std::string fmt(double x) {
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", round_sig(x));
    return buf;
}

RunConfig load_config(const Options& o) {
    RunConfig cfg = o.config.empty() ? RunConfig::parse("{}") : RunConfig::load(o.config);
    if (o.seed) cfg.seed = *o.seed;
    if (o.trials) {
        if (*o.trials < 1) throw ConfigError("--trials must be >= 1");
        cfg.trials = *o.trials;
    }
    if (o.workers) {
        if (*o.workers < 1) throw ConfigError("--workers must be >= 1");
        cfg.workers = *o.workers;
    }
    if (!o.out.empty()) cfg.output_path = o.out;
    return cfg;
}

fs::path out_dir(const RunConfig& cfg) {
    fs::path p(cfg.output_path);
    fs::create_directories(p);
    return p;
}

void announce(const fs::path& p) { std::cout << "wrote " << p.string() << "\n"; }

std::vector<RunConfig> sweep_configs(const RunConfig& cfg, const Options& o,
                                     std::vector<double>* values) {
    if (o.sweep.empty()) return {cfg};
    const SweepSpec spec = SweepSpec::parse(o.sweep);
    std::vector<RunConfig> out;
    for (double v : spec.values()) {
        RunConfig c = cfg.with_value(spec.key, v);
        c.seed = cfg.seed;
        c.trials = cfg.trials;
        c.workers = cfg.workers;
        c.output_path = cfg.output_path;
        out.push_back(std::move(c));
        values->push_back(v);
    }
    return out;
}

// potentials ---------------------------------------------------------------

int cmd_potentials(const Options& o) {
    const RunConfig cfg = load_config(o);
    const PotentialsConfig& p = cfg.potentials;
    if (!(p.r_min > 0.0) || p.r_max < p.r_min || p.r_steps < 1 || p.theta_steps < 1 ||
        p.theta_max < p.theta_min) {
        throw ConfigError("potentials: invalid sweep range");
    }
    const double dipole = permanent_dipole(p.n, cfg.constants, p.dipole_prefactor);
    std::ostringstream csv;
    csv << "R_um,theta_rad,V_dd_mhz,V_plus_mhz,V_minus_mhz,C6_over_R6_mhz\n";
    for (int i = 0; i < p.r_steps; ++i) {
        const double r = p.r_steps == 1 ? p.r_min : p.r_min + (p.r_max - p.r_min) * i / (p.r_steps - 1);
        const ForsterPotentials f = forster_potentials(u3(p.channel, r, cfg.constants), p.channel.energy_defect);
        const double vdw = p.c6 != 0.0 ? vdw_shift(p.c6, r) : 0.0;
        for (int j = 0; j < p.theta_steps; ++j) {
            const double th = p.theta_steps == 1
                                  ? p.theta_min
                                  : p.theta_min + (p.theta_max - p.theta_min) * j / (p.theta_steps - 1);
            const double vdd = dipole_dipole_potential(dipole, r, th, cfg.constants);
            csv << fmt(r / units::kMicrometer) << ',' << fmt(th) << ',' << fmt(units::angular_to_mhz(vdd))
                << ',' << fmt(units::angular_to_mhz(f.plus)) << ',' << fmt(units::angular_to_mhz(f.minus))
                << ',' << fmt(units::angular_to_mhz(vdw)) << '\n';
        }
    }
    const fs::path path = out_dir(cfg) / "potentials.csv";
    write_text(path.string(), csv.str());
    announce(path);
    return kOk;
}

// dynamics -----------------------------------------------------------------

int cmd_dynamics(const Options& o) {
    const RunConfig cfg = load_config(o);
    const EnsembleConfig& e = cfg.ensemble;
    const DynamicsConfig& d = cfg.dynamics;
    if (!d.perfect_blockade) e.validate();
    const int n = e.atom_count;
    const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;

    std::string mode;
    std::vector<double> shifts;
    BlockadeSummary s;
    if (d.perfect_blockade) {
        mode = "perfect_blockade";
        shifts.assign(pairs, std::numeric_limits<double>::infinity());
        s = blockade_summary(shifts, n, e.rabi_single);
    } else if (e.mean_blockade_shift) {
        mode = "mean_blockade_shift";
        s = blockade_summary_mean_shift(*e.mean_blockade_shift, n, e.rabi_single);
        if (n <= d.integrator.max_atoms) shifts.assign(pairs, *e.mean_blockade_shift);
    } else {
        mode = "positions";
        shifts = pair_shifts(sample_positions(e, d.position_seed), *e.c6);
        s = blockade_summary(shifts, n, e.rabi_single);
    }

    Json traj = {{"written", false}};
    const fs::path dir = out_dir(cfg);
    if (n <= d.integrator.max_atoms) {
        const double duration = d.duration > 0.0 ? d.duration : s.pi_time;
        const AmplitudeTrajectory t =
            integrate_amplitudes(shifts, n, e.rabi_single, duration, duration / d.samples, d.integrator);
        const fs::path path = dir / "trajectory.csv";
        write_text(path.string(), trajectory_csv(t));
        announce(path);
        traj = {{"written", true}, {"file", "trajectory.csv"},
                {"max_norm_drift", num(t.max_norm_drift)}, {"substep_s", num(t.substep)},
                {"method", t.method}};
    } else {
        traj["note"] = "atom count " + std::to_string(n) + " exceeds the integrator limit of " +
                       std::to_string(d.integrator.max_atoms) + "; closed-form summary only";
    }

    auto tagged = [](double v, const char* unit, const char* formula) {
        return Json{{"value", num(v)}, {"unit", unit}, {"formula", formula}};
    };
    Json j = {{"mode", mode},
              {"level", e.level_label},
              {"atom_count", n},
              {"rabi_single", tagged(e.rabi_single, "rad/s", "input")},
              {"saturation", tagged(s.saturation, "1", "l = 1 + (sum 1/Delta)^2 Omega^2/(4 N^3)")},
              {"p_single", tagged(s.p_single, "probability", "P1 = 1/l")},
              {"p_double", tagged(s.p_double,"probability",
                                  mode == "mean_blockade_shift" ? "P2 = Omega_N^2 (N-1)/(2 N B^2)"
                                                                 : "P2 = Omega^2/N sum 1/Delta^2")},
              {"freq_shift", tagged(s.freq_shift, "rad/s", "delta_omega = Omega^2/N sum 1/Delta")},
              {"pi_time", tagged(s.pi_time, "s", "pi/(2 sqrt(N l) Omega)")},
              {"f_single", tagged(single_qubit_fidelity(std::min(1.0, s.p_double)), "probability",
                                  "exp(-2 P2)")},
              {"trajectory", traj}};
    const fs::path path = dir / "dynamics_summary.json";
    write_text(path.string(), dump(j));
    announce(path);
    return kOk;
}

// entangle / ghz -------------------------------------------------------------

int run_protocol(const Options& o, bool ghz) {
    const RunConfig base = load_config(o);
    std::vector<double> values;
    const auto configs = sweep_configs(base, o, &values);
    const fs::path dir = out_dir(base);
    const std::string stem = ghz ? "ghz" : "entangle";

    if (!values.empty()) {
        const SweepSpec spec = SweepSpec::parse(o.sweep);
        std::ostringstream csv;
        csv << spec.key << ",qubits,trials,successes,rate,ci_low,ci_high,analytic,"
            << (ghz ? "wiring_rate," : "") << "mean_fidelity\n";
        for (std::size_t i = 0; i < configs.size(); ++i) {
            const RunConfig& c = configs[i];
            const int q = ghz ? o.qubits.value_or(c.ghz_qubits) : 2;
            const Scheme scheme = ghz ? Scheme::ghz(q) : Scheme::pair();
            const RunSummary s = run_trials(scheme, c.protocol, c.trials, c.seed, c.workers);
            csv << fmt(values[i]) << ',' << q << ',' << s.counts.trials << ',' << s.counts.successes << ','
                << fmt(s.counts.rate) << ',' << fmt(s.counts.ci_low) << ',' << fmt(s.counts.ci_high) << ','
                << fmt(s.counts.analytic) << ',';
            if (ghz) csv << fmt(s.wiring_rate) << ',';
            csv << fmt(s.mean_fidelity) << '\n';
        }
        const fs::path path = dir / (stem + "_sweep.csv");
        write_text(path.string(), csv.str());
        announce(path);
        return kOk;
    }

    const RunConfig& cfg = configs.front();
    const int q = ghz ? o.qubits.value_or(cfg.ghz_qubits) : 2;
    const Scheme scheme = ghz ? Scheme::ghz(q) : Scheme::pair();
    std::string lines;
    std::optional<std::uint64_t> first_success;
    const RunSummary s = run_trials(scheme, cfg.protocol, cfg.trials, cfg.seed, cfg.workers,
                                    [&](std::uint64_t i, const TrialOutcome& r) {
                                        lines += dump_line(r.to_json(i));
                                        if (r.success && !first_success) first_success = i;
                                    });
    Json summary = s.to_json();
    summary["seed"] = cfg.seed;
    Json params = {{"eta", num(cfg.protocol.eta)},
                   {"eta_detector", num(cfg.protocol.eta_detector)},
                   {"p_abs", num(cfg.protocol.p_abs)},
                   {"p_double", num(cfg.protocol.p_double)},
                   {"dark_rate_hz", num(cfg.protocol.dark_rate)},
                   {"coincidence_error", num(cfg.protocol.coincidence_error)},
                   {"dark_probability", num(cfg.protocol.dark_probability())},
                   {"window_s", num(cfg.protocol.window())}};
    summary["params"] = params;

    const fs::path trials_path = dir / (stem + "_trials.jsonl");
    write_text(trials_path.string(), lines);
    announce(trials_path);
    if (first_success) {
        ProtocolSimulator sim(scheme, cfg.protocol);
        Rng rng = Rng::for_stream(cfg.seed, *first_success);
        const TrialOutcome r = sim.trial(rng, true);
        Json state = {{"trial", *first_success}, {"target", r.target}, {"fidelity", num(r.fidelity)},
                      {"state", state_to_json(*r.post_state)}};
        const fs::path state_path = dir / (stem + "_state.json");
        write_text(state_path.string(), dump(state));
        announce(state_path);
    }
    const fs::path summary_path = dir / (stem + "_summary.json");
    write_text(summary_path.string(), dump(summary));
    announce(summary_path);
    std::cout << "rate " << fmt(s.counts.rate) << " (analytic " << fmt(s.counts.analytic) << ")\n";
    return kOk;
}

// fuse -----------------------------------------------------------------------

int cmd_fuse(const Options& o) {
    const RunConfig cfg = load_config(o);
    const Graph a = graph_from_spec(cfg.fusion.cluster_a);
    const Graph b = graph_from_spec(cfg.fusion.cluster_b);
    std::string lines;
    const FusionSummary s =
        run_fusion_trials(a, b, cfg.fusion.link_a, cfg.fusion.link_b, cfg.fusion.eta_prime, cfg.trials,
                          cfg.seed, [&](std::uint64_t i, const FusionResult& r) {
                              Json edges = Json::array();
                              for (const auto& [u, v] : r.graph.edges()) edges.push_back({u, v});
                              std::vector<int> remaining;
                              for (int qb = 0; qb < r.graph.size(); ++qb) {
                                  if (std::find(r.removed.begin(), r.removed.end(), qb) == r.removed.end()) {
                                      remaining.push_back(qb);
                                  }
                              }
                              const bool ok = verify_stabilizers(r.tableau, r.graph, remaining).ok;
                              lines += dump_line({{"trial", i}, {"success", r.success}, {"edges", edges},
                                                  {"removed", r.removed}, {"outcomes", r.outcomes},
                                                  {"corrections", r.corrections}, {"stabilizers_ok", ok}});
                          });
    const fs::path dir = out_dir(cfg);
    const fs::path tp = dir / "fuse_trials.jsonl";
    write_text(tp.string(), lines);
    announce(tp);
    Json summary = s.to_json();
    summary["seed"] = cfg.seed;
    summary["eta_prime"] = num(cfg.fusion.eta_prime);
    const fs::path sp = dir / "fuse_summary.json";
    write_text(sp.string(), dump(summary));
    announce(sp);
    return kOk;
}

// budget ---------------------------------------------------------------------

int cmd_budget(const Options& o) {
    const RunConfig base = load_config(o);
    std::vector<double> values;
    const auto configs = sweep_configs(base, o, &values);
    const fs::path dir = out_dir(base);
    if (!values.empty()) {
        const SweepSpec spec = SweepSpec::parse(o.sweep);
        std::ostringstream csv;
        csv << spec.key << ",p_abs,epsilon,p_double,p_dark,collision_rate_hz,doppler_sigma_nm,timescale_us,fidelity\n";
        for (std::size_t i = 0; i < configs.size(); ++i) {
            const ErrorBudget b = error_budget(configs[i].require_budget());
            csv << fmt(values[i]) << ',' << fmt(b.p_abs) << ',' << fmt(b.epsilon) << ',' << fmt(b.p_double)
                << ',' << fmt(b.p_dark) << ',' << fmt(b.collision_rate) << ',' << fmt(b.doppler_sigma * 1e9)
                << ',' << fmt(b.timescale * 1e6) << ',' << fmt(b.fidelity) << '\n';
        }
        const fs::path path = dir / "budget_sweep.csv";
        write_text(path.string(), csv.str());
        announce(path);
        return kOk;
    }
    const BudgetConfig& bc = base.require_budget();
    const ErrorBudget b = error_budget(bc);
    const fs::path path = dir / "budget.json";
    write_text(path.string(), dump(b.to_json(bc)));
    announce(path);
    std::cout << "fidelity " << fmt(b.fidelity) << "\n";
    return kOk;
}

// mbqc -----------------------------------------------------------------------

int cmd_mbqc(const Options& o) {
    const RunConfig cfg = load_config(o);
    const std::string graph_spec = !o.graph.empty() ? o.graph : cfg.mbqc.graph;
    const std::string pattern_path = !o.pattern.empty() ? o.pattern : cfg.mbqc.pattern;
    if (graph_spec.empty()) throw ConfigError("mbqc: no graph given (--graph or mbqc.graph)");
    const Graph g = graph_from_spec(graph_spec);
    const MeasurementPattern pattern =
        pattern_path.empty() ? MeasurementPattern{} : MeasurementPattern::load(pattern_path);
    const Backend backend = parse_backend(!o.backend.empty() ? o.backend : cfg.mbqc.backend);
    const Transcript t = run_pattern(g, pattern, backend, cfg.seed);
    Json j = t.to_json();
    int code = kOk;
    if (o.verify) {
        if (!t.final_graph) {
            j["verify"] = {{"ok", nullptr}, {"note", "graph tracking ended at a non-Pauli measurement"}};
        } else {
            const VerifyResult v = t.tableau ? verify_stabilizers(*t.tableau, *t.final_graph, t.remaining)
                                             : verify_stabilizers(*t.dense, *t.final_graph, t.remaining);
            j["verify"] = {{"ok", v.ok}, {"violated", v.violated}};
            if (!v.ok) code = kFailure;
        }
    }
    const fs::path path = out_dir(cfg) / "transcript.json";
    write_text(path.string(), dump(j));
    announce(path);
    std::cout << "bits " << t.bits() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rydberg-blockade ensemble entanglement and cluster-state toolkit"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "YAML run configuration");
        sub->add_option("--seed", o.seed, "master seed");
        sub->add_option("--trials", o.trials, "Monte Carlo trials");
        sub->add_option("--workers", o.workers, "worker threads");
        sub->add_option("--out", o.out, "output directory");
    };
    auto* pot = app.add_subcommand("potentials", "interaction potential table");
    common(pot);
    auto* dyn = app.add_subcommand("dynamics", "blockade summary and amplitude trajectory");
    common(dyn);
    auto* ent = app.add_subcommand("entangle", "heralded two-ensemble entanglement");
    common(ent);
    ent->add_option("--sweep", o.sweep, "KEY=START:STOP:STEPS");
    auto* ghz = app.add_subcommand("ghz", "one-step GHZ generation");
    common(ghz);
    ghz->add_option("--sweep", o.sweep, "KEY=START:STOP:STEPS");
    ghz->add_option("--qubits", o.qubits, "even number of qubits >= 4");
    auto* fuse = app.add_subcommand("fuse", "cluster fusion and recycling");
    common(fuse);
    auto* bud = app.add_subcommand("budget", "error budget report");
    common(bud);
    bud->add_option("--sweep", o.sweep, "KEY=START:STOP:STEPS");
    auto* mb = app.add_subcommand("mbqc", "run a measurement pattern on a graph state");
    common(mb);
    mb->add_option("--graph", o.graph, "edge-list file or line:N / star:N / ring:N");
    mb->add_option("--pattern", o.pattern, "measurement pattern file");
    mb->add_option("--backend", o.backend, "tableau or dense")->check(CLI::IsMember({"tableau", "dense"}));
    mb->add_flag("--verify", o.verify, "check the final cluster stabilizers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (pot->parsed()) return cmd_potentials(o);
        if (dyn->parsed()) return cmd_dynamics(o);
        if (ent->parsed()) return run_protocol(o, false);
        if (ghz->parsed()) return run_protocol(o, true);
        if (fuse->parsed()) return cmd_fuse(o);
        if (bud->parsed()) return cmd_budget(o);
        if (mb->parsed()) return cmd_mbqc(o);
    } catch (const CapabilityError& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return kCapability;
    } catch (const CutoffError& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return kCapability;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const UsageError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
