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

#include "blockade/protocol.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "blockade/errors.h"
#include "blockade/gate_sequence.h"
#include "blockade/mbqc.h"
#include "blockade/units.h"

namespace blockade {

namespace {

constexpr double kPi = std::numbers::pi;

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError(std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

void ProtocolParams::validate() const {
    check_probability(eta, "eta");
    check_probability(eta_detector, "eta_detector");
    check_probability(p_abs, "p_abs");
    check_probability(p_double, "p_double");
    check_probability(coincidence_error, "coincidence_error");
    if (eta > eta_detector) {
        throw DomainError("eta cannot exceed eta_detector (source efficiency would exceed 1)");
    }
    if (eta > 0.0 && eta_detector == 0.0) throw DomainError("eta_detector is zero");
    for (auto [v, name] : {std::pair{dark_rate, "dark_rate"}, std::pair{g_n, "g_n"},
                           std::pair{omega_s, "omega_s"}, std::pair{protocol_time, "protocol_time"}}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw DomainError(std::string(name) + " must be finite and non-negative");
        }
    }
}

double ProtocolParams::window() const {
    if (protocol_time > 0.0) return protocol_time;
    if (g_n > 0.0 && omega_s > 0.0) return kPi / (2.0 * g_n) + kPi / omega_s;
    return 0.0;
}

double ProtocolParams::dark_probability() const { return 1.0 - std::exp(-dark_rate * window()); }

std::string to_string(FailureCause c) {
    switch (c) {
        case FailureCause::None:
            return "none";
        case FailureCause::NoClick:
            return "no_click";
        case FailureCause::DoubleClick:
            return "double_click";
        case FailureCause::DarkFalseHerald:
            return "dark_false_herald";
        case FailureCause::AbsorptionFailure:
            return "absorption_failure";
        case FailureCause::DoubleExcitation:
            return "double_excitation";
        case FailureCause::HomCoincidence:
            return "hom_coincidence";
    }
    return "unknown";
}

Json TrialOutcome::to_json(std::uint64_t trial) const {
    Json clicks = Json::array(), photons = Json::array(), dark = Json::array();
    for (const auto& d : herald) {
        clicks.push_back(d.clicked ? 1 : 0);
        photons.push_back(d.true_photons);
        dark.push_back(d.dark ? 1 : 0);
    }
    Json j = {{"trial", trial},
              {"success", success},
              {"failure_cause", to_string(failure_cause)},
              {"clicks", clicks},
              {"photons", photons},
              {"dark", dark}};
    j["fidelity"] = success ? num(fidelity) : Json(nullptr);
    j["target"] = success ? Json(target) : Json(nullptr);
    j["correction_phase"] = num(correction_phase);
    return j;
}

Scheme Scheme::ghz(int q) {
    if (q < 4 || q % 2 != 0) {
        throw DomainError("GHZ scheme needs an even qubit count >= 4, got " + std::to_string(q));
    }
    return {Kind::Ghz, q};
}

double success_prob_analytic(int q, double eta) {
    if (q < 4 || q % 2 != 0) throw DomainError("Q must be even and >= 4");
    check_probability(eta, "eta");
    return std::pow(eta, q / 2) * (q - 2) / std::pow(2.0, q - 2);
}

double ghz_wiring_success_prob(int q, double eta) {
    if (q < 4 || q % 2 != 0) throw DomainError("Q must be even and >= 4");
    check_probability(eta, "eta");
    return 2.0 * std::pow(eta, q / 2) / std::pow(2.0, q / 2);
}

namespace {

enum PairState : char { kIdle = '0', kHom = 'h', kCoincident = 'c' };

struct PhotonPattern {
    double prob = 0.0;
    std::vector<int> photons;
    std::vector<Complex> atoms;  // over 2^Q, ensemble 0 most significant; digit 0 = e, 1 = r
};

struct Predetection {
    std::vector<PhotonPattern> patterns;
    std::vector<double> cumulative;
};

struct Conditional {
    double fidelity = 0.0;
    double phase = 0.0;
    std::string target;
    HybridState state{std::vector<Subsystem>{}};
};

}  // namespace

struct ProtocolSimulator::Impl {
    Scheme scheme;
    ProtocolParams params;
    int q = 2;
    int pairs = 1;
    std::vector<std::pair<int, int>> groups;
    double p_source = 1.0;
    double p_dark = 0.0;
    PulseTimings timings;

    std::map<std::string, HybridState> absorb_cache;
    std::map<std::string, double> weight_cache;
    std::map<std::string, Predetection> detect_cache;
    std::map<std::string, Conditional> conditional_cache;
    std::map<std::string, double> phase_cache;

    Impl(Scheme s, ProtocolParams p) : scheme(s), params(p) {
        params.validate();
        q = scheme.qubits;
        if (scheme.kind == Scheme::Kind::Ghz) {
            Scheme::ghz(q);
            if (q > kMaxGhzQubits) {
                throw CapabilityError("GHZ interferometer simulation is limited to Q <= " +
                                      std::to_string(kMaxGhzQubits));
            }
            pairs = q / 2;
            for (int k = 0; k < pairs; ++k) groups.emplace_back(2 * k + 1, (2 * k + 2) % q);
        } else {
            q = 2;
            pairs = 1;
            groups.emplace_back(0, 1);
        }
        p_source = params.source_efficiency();
        p_dark = params.dark_probability();
        const double two_pi_mhz = units::mhz_to_angular(1.0);
        timings.rabi_ground = params.omega_s > 0.0 ? params.omega_s : two_pi_mhz;
        timings.rabi_storage = timings.rabi_ground;
        timings.collective_pi_time = params.g_n > 0.0 ? kPi / (2.0 * params.g_n) : 1.0 / two_pi_mhz;
        timings.light_shift_rate = two_pi_mhz;
    }

    std::vector<Subsystem> layout(const std::string& pair_states, const std::string& absorbed) const {
        std::vector<int> pre(static_cast<std::size_t>(q), 0), post(static_cast<std::size_t>(q), 0);
        for (int k = 0; k < pairs; ++k) {
            const char st = pair_states[static_cast<std::size_t>(k)];
            const int n = st == kHom ? 2 : (st == kCoincident ? 1 : 0);
            for (int arm : {2 * k, 2 * k + 1}) {
                pre[static_cast<std::size_t>(arm)] = n;
                post[static_cast<std::size_t>(arm)] =
                    absorbed[static_cast<std::size_t>(arm)] == '1' ? std::max(n - 1, 0) : n;
            }
        }
        std::vector<int> dim(static_cast<std::size_t>(q), 1);
        for (int arm = 0; arm < q; ++arm) dim[static_cast<std::size_t>(arm)] = pre[static_cast<std::size_t>(arm)] + 1;
        for (const auto& [a, b] : groups) {
            const int d = post[static_cast<std::size_t>(a)] + post[static_cast<std::size_t>(b)] + 1;
            for (int arm : {a, b}) {
                dim[static_cast<std::size_t>(arm)] = std::max(dim[static_cast<std::size_t>(arm)], d);
            }
        }
        std::vector<Subsystem> subs;
        for (int arm = 0; arm < q; ++arm) subs.push_back(Subsystem::mode(dim[static_cast<std::size_t>(arm)]));
        for (int e = 0; e < q; ++e) subs.push_back(Subsystem::ensemble_er());
        return subs;
    }

    HybridState initial_state(const std::string& pair_states, const std::string& absorbed) const {
        std::vector<int> digits(static_cast<std::size_t>(2 * q), 0);
        for (int k = 0; k < pairs; ++k) {
            if (pair_states[static_cast<std::size_t>(k)] != kIdle) {
                digits[static_cast<std::size_t>(2 * k)] = 1;
                digits[static_cast<std::size_t>(2 * k + 1)] = 1;
            }
        }
        HybridState psi = HybridState::basis(layout(pair_states, absorbed), digits);
        for (int k = 0; k < pairs; ++k) {
            // Indistinguishable photons bunch at the first beam splitter.
            if (pair_states[static_cast<std::size_t>(k)] == kHom) beam_splitter(psi, 2 * k, 2 * k + 1);
        }
        return psi;
    }

    const HybridState& state_for(const std::string& key) {
        auto it = absorb_cache.find(key);
        if (it != absorb_cache.end()) return it->second;
        // key = pair states '|' absorbed flags '|' per-arm decisions
        const auto bar1 = key.find('|');
        const auto bar2 = key.find('|', bar1 + 1);
        const std::string pair_states = key.substr(0, bar1);
        const std::string absorbed = key.substr(bar1 + 1, bar2 - bar1 - 1);
        const std::string decisions = key.substr(bar2 + 1);
        HybridState psi = decisions.empty() ? initial_state(pair_states, absorbed)
                                            : state_for(key.substr(0, key.size() - 1));
        if (!decisions.empty()) {
            const int arm = static_cast<int>(decisions.size()) - 1;
            const int ens = q + arm;
            switch (decisions.back()) {
                case 'f':
                    break;
                case 'd':
                    project_double_excitation(psi, arm, ens);
                    break;
                default:
                    if (params.p_double > 0.0) suppress_double_excitation(psi, arm, ens, params.p_double);
                    blockaded_absorption(psi, arm, ens);
                    break;
            }
        }
        return absorb_cache.emplace(key, std::move(psi)).first->second;
    }

    double weight_for(const std::string& key, int arm) {
        const std::string wkey = key + "#" + std::to_string(arm);
        auto it = weight_cache.find(wkey);
        if (it != weight_cache.end()) return it->second;
        const double w = two_photon_weight(state_for(key), arm, q + arm);
        weight_cache.emplace(wkey, w);
        return w;
    }

    const Predetection& predetection(const std::string& key) {
        auto it = detect_cache.find(key);
        if (it != detect_cache.end()) return it->second;
        HybridState psi = state_for(key);
        for (const auto& [a, b] : groups) {
            const double offset = scheme.kind == Scheme::Kind::Pair ? params.phase_offset : 0.0;
            phase_shift(psi, b, kPi + offset);
            beam_splitter(psi, a, b);
            phase_shift(psi, b, -kPi / 2.0);
        }
        const std::size_t atom_dim = std::size_t{1} << q;
        std::map<std::vector<int>, PhotonPattern> by_pattern;
        const auto amps = psi.amplitudes();
        for (std::size_t idx = 0; idx < amps.size(); ++idx) {
            if (std::norm(amps[idx]) < 1e-30) continue;
            std::vector<int> photons(static_cast<std::size_t>(q));
            for (int m = 0; m < q; ++m) photons[static_cast<std::size_t>(m)] = psi.digit(idx, m);
            std::size_t atom_idx = 0;
            for (int e = 0; e < q; ++e) atom_idx = (atom_idx << 1) | static_cast<std::size_t>(psi.digit(idx, q + e));
            auto& pat = by_pattern[photons];
            if (pat.atoms.empty()) {
                pat.atoms.assign(atom_dim, Complex(0.0, 0.0));
                pat.photons = photons;
            }
            pat.atoms[atom_idx] = amps[idx];
            pat.prob += std::norm(amps[idx]);
        }
        Predetection pd;
        double cum = 0.0;
        for (auto& [photons, pat] : by_pattern) {
            const double nrm = std::sqrt(pat.prob);
            for (auto& a : pat.atoms) a /= nrm;
            cum += pat.prob;
            pd.cumulative.push_back(cum);
            pd.patterns.push_back(std::move(pat));
        }
        for (auto& c : pd.cumulative) c /= cum;
        return detect_cache.emplace(key, std::move(pd)).first->second;
    }

    std::string ideal_key() const {
        return std::string(static_cast<std::size_t>(pairs), kHom) + "|" +
               std::string(static_cast<std::size_t>(q), '1') + "|" +
               std::string(static_cast<std::size_t>(q), 'a');
    }

    /// Phase(phi) angle that equalizes the two GHZ branches of the ideal
    /// conditional state for this click pattern.
    double ghz_phase(const std::string& clicks) {
        auto it = phase_cache.find(clicks);
        if (it != phase_cache.end()) return it->second;
        double phi = 0.0;
        for (const auto& pat : predetection(ideal_key()).patterns) {
            bool match = true;
            for (int m = 0; m < q; ++m) {
                if (pat.photons[static_cast<std::size_t>(m)] != (clicks[static_cast<std::size_t>(m)] == '1' ? 1 : 0)) {
                    match = false;
                }
            }
            if (!match) continue;
            // After X on the odd ensembles the branches are |1...1> and |0...0>.
            std::size_t ones_src = 0, zeros_src = 0;
            for (int e = 0; e < q; ++e) {
                const std::size_t bit = std::size_t{1} << (q - 1 - e);
                if (e % 2 == 0) {
                    ones_src |= bit;
                } else {
                    zeros_src |= bit;
                }
            }
            const Complex a = pat.atoms[ones_src];
            const Complex b = pat.atoms[zeros_src];
            if (std::abs(a) > 1e-12 && std::abs(b) > 1e-12) phi = std::arg(b) - std::arg(a);
            break;
        }
        phase_cache.emplace(clicks, phi);
        return phi;
    }

    const Conditional& conditional(const std::string& key, std::size_t pattern_index,
                                   const std::string& clicks) {
        const std::string ckey = key + "#" + std::to_string(pattern_index) + "#" + clicks;
        auto it = conditional_cache.find(ckey);
        if (it != conditional_cache.end()) return it->second;
        const PhotonPattern& pat = predetection(key).patterns[pattern_index];

        // Lift e/r to the four-level sites and transfer e -> g, r -> s.
        HybridState psi(std::vector<Subsystem>(static_cast<std::size_t>(q), Subsystem::ensemble()));
        auto& amps = psi.mutable_amplitudes();
        amps[0] = 0.0;
        std::vector<int> digits(static_cast<std::size_t>(q));
        for (std::size_t i = 0; i < pat.atoms.size(); ++i) {
            for (int e = 0; e < q; ++e) {
                const bool r = (i >> (q - 1 - e)) & 1U;
                digits[static_cast<std::size_t>(e)] = static_cast<int>(r ? Level::R : Level::E);
            }
            amps[psi.index_of(digits)] = pat.atoms[i];
        }
        const Eigen::MatrixXcd transfer = transfer_to_storage();
        for (int e = 0; e < q; ++e) apply_local(psi, e, transfer);

        Conditional c;
        HybridState target(std::vector<Subsystem>(static_cast<std::size_t>(q), Subsystem::ensemble()));
        auto& t = target.mutable_amplitudes();
        t[0] = 0.0;
        const double h = 1.0 / std::sqrt(2.0);
        const int g = static_cast<int>(Level::G), s = static_cast<int>(Level::S);
        if (scheme.kind == Scheme::Kind::Pair) {
            const bool plus = clicks == "01";
            c.target = plus ? "psi+" : "psi-";
            target.set_amplitude({s, g}, h);
            target.set_amplitude({g, s}, Complex(0.0, plus ? h : -h));
        } else {
            c.target = "ghz";
            c.phase = ghz_phase(clicks);
            const Eigen::MatrixXcd x = sequence_unitary(gate_pulse_sequence(Gate::x(), timings));
            for (int e = 1; e < q; e += 2) apply_local(psi, e, x);
            const auto pulses = gate_pulse_sequence(Gate::phase(c.phase), timings);
            if (!pulses.empty()) apply_local(psi, 0, sequence_unitary(pulses));
            std::vector<int> all_g(static_cast<std::size_t>(q), g), all_s(static_cast<std::size_t>(q), s);
            target.set_amplitude(all_g, h);
            target.set_amplitude(all_s, h);
        }
        c.fidelity = fidelity(psi, target);
        c.state = std::move(psi);
        return conditional_cache.emplace(ckey, std::move(c)).first->second;
    }

    TrialOutcome trial(Rng& rng, bool keep_state) {
        TrialOutcome out;
        std::string pair_states(static_cast<std::size_t>(pairs), kIdle);
        bool coincidence = false;
        for (int k = 0; k < pairs; ++k) {
            if (rng.uniform() < p_source) {
                pair_states[static_cast<std::size_t>(k)] = kHom;
                if (params.coincidence_error > 0.0 && rng.uniform() < params.coincidence_error) {
                    pair_states[static_cast<std::size_t>(k)] = kCoincident;
                    coincidence = true;
                }
            }
        }
        std::string absorbed(static_cast<std::size_t>(q), '1');
        bool absorption_failure = false;
        for (int arm = 0; arm < q; ++arm) {
            if (!(rng.uniform() < params.p_abs)) {
                absorbed[static_cast<std::size_t>(arm)] = '0';
                if (pair_states[static_cast<std::size_t>(arm / 2)] != kIdle) absorption_failure = true;
            }
        }
        std::string key = pair_states + "|" + absorbed + "|";
        bool double_excitation = false;
        for (int arm = 0; arm < q; ++arm) {
            char decision = 'a';
            if (absorbed[static_cast<std::size_t>(arm)] == '0') {
                decision = 'f';
            } else if (params.p_double > 0.0) {
                const double w = weight_for(key, arm);
                if (rng.uniform() < params.p_double * w) {
                    decision = 'd';
                    double_excitation = true;
                }
            }
            key += decision;
        }

        const Predetection& pd = predetection(key);
        const double u = rng.uniform();
        const auto pos = std::upper_bound(pd.cumulative.begin(), pd.cumulative.end(), u);
        const std::size_t pattern_index =
            std::min<std::size_t>(static_cast<std::size_t>(pos - pd.cumulative.begin()), pd.patterns.size() - 1);
        const PhotonPattern& pat = pd.patterns[pattern_index];

        std::string clicks(static_cast<std::size_t>(q), '0');
        for (int m = 0; m < q; ++m) {
            DetectionRecord rec;
            rec.mode_index = m;
            rec.true_photons = pat.photons[static_cast<std::size_t>(m)];
            rec.detected_photons = rng.binomial(rec.true_photons, params.eta_detector);
            const bool dark_fired = rng.uniform() < p_dark;
            rec.clicked = rec.detected_photons > 0 || dark_fired;
            rec.dark = dark_fired && rec.detected_photons == 0;
            if (rec.clicked) clicks[static_cast<std::size_t>(m)] = '1';
            out.herald.push_back(rec);
        }

        bool any_empty = false, any_double = false, dark_herald = false;
        for (const auto& [a, b] : groups) {
            const auto& ra = out.herald[static_cast<std::size_t>(a)];
            const auto& rb = out.herald[static_cast<std::size_t>(b)];
            const int n = (ra.clicked ? 1 : 0) + (rb.clicked ? 1 : 0);
            if (n == 0) any_empty = true;
            if (n == 2) any_double = true;
            if ((ra.clicked && ra.dark) || (rb.clicked && rb.dark)) dark_herald = true;
        }
        out.success = !any_empty && !any_double;

        if (absorption_failure) {
            out.failure_cause = FailureCause::AbsorptionFailure;
        } else if (double_excitation) {
            out.failure_cause = FailureCause::DoubleExcitation;
        } else if (coincidence) {
            out.failure_cause = FailureCause::HomCoincidence;
        } else if (out.success && dark_herald) {
            out.failure_cause = FailureCause::DarkFalseHerald;
        } else if (any_double) {
            out.failure_cause = FailureCause::DoubleClick;
        } else if (any_empty) {
            out.failure_cause = FailureCause::NoClick;
        }

        if (out.success) {
            const Conditional& c = conditional(key, pattern_index, clicks);
            out.fidelity = c.fidelity;
            out.target = c.target;
            out.correction_phase = c.phase;
            if (keep_state) out.post_state = c.state;
        } else {
            out.fidelity = std::numeric_limits<double>::quiet_NaN();
        }
        return out;
    }
};

ProtocolSimulator::ProtocolSimulator(Scheme scheme, ProtocolParams params)
    : impl_(std::make_unique<Impl>(scheme, params)) {}
ProtocolSimulator::~ProtocolSimulator() = default;
ProtocolSimulator::ProtocolSimulator(ProtocolSimulator&&) noexcept = default;
ProtocolSimulator& ProtocolSimulator::operator=(ProtocolSimulator&&) noexcept = default;

TrialOutcome ProtocolSimulator::trial(Rng& rng, bool keep_state) { return impl_->trial(rng, keep_state); }
const Scheme& ProtocolSimulator::scheme() const { return impl_->scheme; }
const ProtocolParams& ProtocolSimulator::params() const { return impl_->params; }

TrialOutcome entangle_pair(const ProtocolParams& params, std::uint64_t seed) {
    ProtocolSimulator sim(Scheme::pair(), params);
    Rng rng(seed);
    return sim.trial(rng, true);
}

TrialOutcome ghz_generate(int q, const ProtocolParams& params, std::uint64_t seed) {
    ProtocolSimulator sim(Scheme::ghz(q), params);
    Rng rng(seed);
    return sim.trial(rng, true);
}

BinomialSummary summarize_binomial(std::uint64_t trials, std::uint64_t successes, double analytic) {
    BinomialSummary s;
    s.trials = trials;
    s.successes = successes;
    s.analytic = analytic;
    if (trials == 0) return s;
    const double n = static_cast<double>(trials);
    s.rate = static_cast<double>(successes) / n;
    s.std_error = std::sqrt(s.rate * (1.0 - s.rate) / n);
    const double z = 1.959963984540054;
    const double denom = 1.0 + z * z / n;
    const double centre = (s.rate + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(s.rate * (1.0 - s.rate) / n + z * z / (4.0 * n * n)) / denom;
    s.ci_low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
    s.ci_high = successes == trials ? 1.0 : std::min(1.0, centre + half);
    const double sigma = std::sqrt(analytic * (1.0 - analytic) / n);
    s.z_score = sigma > 0.0 ? (s.rate - analytic) / sigma : (s.rate == analytic ? 0.0 : std::numeric_limits<double>::infinity());
    return s;
}

namespace {

Json binomial_json(const BinomialSummary& s, const std::string& formula) {
    return {{"trials", s.trials},
            {"successes", s.successes},
            {"empirical_rate", {{"value", num(s.rate)}, {"formula", "successes/trials"}}},
            {"std_error", {{"value", num(s.std_error)}, {"formula", "sqrt(rate(1-rate)/trials)"}}},
            {"ci95", {{"low", num(s.ci_low)}, {"high", num(s.ci_high)}, {"formula", "wilson_score"}}},
            {"analytic_rate", {{"value", num(s.analytic)}, {"formula", formula}}},
            {"z_score", {{"value", num(s.z_score)}, {"formula", "(rate-analytic)/sqrt(analytic(1-analytic)/trials)"}}}};
}

}  // namespace

Json RunSummary::to_json() const {
    Json j = {{"scheme", scheme.kind == Scheme::Kind::Pair ? "pair" : "ghz"}, {"qubits", scheme.qubits}};
    const Json counts_json = binomial_json(counts, analytic_formula);
    for (auto& [k, v] : counts_json.items()) j[k] = v;
    j["mean_conditional_fidelity"] = {{"value", num(mean_fidelity)},
                                      {"formula", "mean |<target|psi_cond>|^2 over heralded trials"}};
    Json c = Json::object();
    for (const auto& [k, v] : causes) c[k] = v;
    j["failure_causes"] = c;
    if (scheme.kind == Scheme::Kind::Ghz) {
        j["wiring_rate"] = {{"value", num(wiring_rate)}, {"formula", "2 eta^{Q/2}/2^{Q/2}"}};
        if (scheme.qubits >= 8) {
            j["note"] = "the implemented wiring heralds with probability 2 eta^{Q/2}/2^{Q/2}, "
                        "which differs from the closed form for Q >= 8";
        }
    }
    return j;
}

RunSummary run_trials(Scheme scheme, const ProtocolParams& params, std::uint64_t trials,
                      std::uint64_t master_seed, int workers,
                      const std::function<void(std::uint64_t, const TrialOutcome&)>& on_record) {
    if (trials < 1) throw DomainError("trials must be >= 1");
    workers = std::max(1, workers);
    if (static_cast<std::uint64_t>(workers) > trials) workers = static_cast<int>(trials);
    // Construct once up front so parameter errors surface on this thread.
    std::vector<ProtocolSimulator> sims;
    for (int w = 0; w < workers; ++w) sims.emplace_back(scheme, params);

    std::vector<TrialOutcome> results(trials);
    auto work = [&](int w) {
        for (std::uint64_t i = static_cast<std::uint64_t>(w); i < trials; i += static_cast<std::uint64_t>(workers)) {
            Rng rng = Rng::for_stream(master_seed, i);
            results[i] = sims[static_cast<std::size_t>(w)].trial(rng, false);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    work(w);
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    RunSummary summary;
    summary.scheme = scheme;
    std::uint64_t successes = 0;
    double fid_sum = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const auto& r = results[i];
        if (r.success) {
            ++successes;
            fid_sum += r.fidelity;
        }
        ++summary.causes[to_string(r.failure_cause)];
        if (on_record) on_record(i, r);
    }
    double analytic;
    if (scheme.kind == Scheme::Kind::Pair) {
        analytic = params.eta;
        summary.analytic_formula = "p_success = eta";
    } else {
        analytic = success_prob_analytic(scheme.qubits, params.eta);
        summary.analytic_formula = "p_success = eta^{Q/2}(Q-2)/2^{Q-2}";
        summary.wiring_rate = ghz_wiring_success_prob(scheme.qubits, params.eta);
    }
    summary.counts = summarize_binomial(trials, successes, analytic);
    summary.mean_fidelity = successes > 0 ? fid_sum / static_cast<double>(successes)
                                          : std::numeric_limits<double>::quiet_NaN();
    return summary;
}

FusionResult apply_fusion(const Graph& a, const Graph& b, int link_a, int link_b, bool success,
                          Rng& rng) {
    if (link_a < 0 || link_a >= a.size() || link_b < 0 || link_b >= b.size()) {
        throw UsageError("fusion link qubit out of range");
    }
    const int na = a.size();
    Graph joint(na + b.size());
    for (const auto& [u, v] : a.edges()) joint.add_edge(u, v);
    for (const auto& [u, v] : b.edges()) joint.add_edge(na + u, na + v);

    FusionResult res;
    res.success = success;
    res.tableau = build_cluster(joint);
    const int qa = link_a, qb = na + link_b;
    if (success) {
        res.tableau.cz(qa, qb);
        joint.add_edge(qa, qb);
        res.graph = joint;
        return res;
    }
    GraphFrame frame(joint);
    for (int qubit : {qa, qb}) {
        const auto m = res.tableau.measure_pauli(qubit, PauliBasis::Z, rng);
        res.removed.push_back(qubit);
        res.outcomes.push_back(m.outcome);
        for (const auto& c : frame.measured(qubit, PauliBasis::Z, m.outcome)) {
            res.corrections.push_back(c.op + "@" + std::to_string(c.qubit));
        }
    }
    for (const auto& [qubit, l] : frame.flush()) apply_gate_word(res.tableau, qubit, l.gate_word());
    res.graph = frame.graph();
    return res;
}

FusionResult fuse_clusters(const Graph& a, const Graph& b, int link_a, int link_b,
                           double eta_prime, std::uint64_t seed) {
    check_probability(eta_prime, "eta_prime");
    Rng rng(seed);
    const bool success = rng.uniform() < eta_prime / 8.0;
    return apply_fusion(a, b, link_a, link_b, success, rng);
}

Json FusionSummary::to_json() const {
    Json j = {{"scheme", "fusion"}};
    const Json counts_json = binomial_json(counts, "p_success = eta_prime/8");
    for (auto& [k, v] : counts_json.items()) j[k] = v;
    return j;
}

FusionSummary run_fusion_trials(const Graph& a, const Graph& b, int link_a, int link_b,
                                double eta_prime, std::uint64_t trials, std::uint64_t master_seed,
                                const std::function<void(std::uint64_t, const FusionResult&)>& on_record) {
    if (trials < 1) throw DomainError("trials must be >= 1");
    check_probability(eta_prime, "eta_prime");
    std::uint64_t successes = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Rng rng = Rng::for_stream(master_seed, i);
        const bool success = rng.uniform() < eta_prime / 8.0;
        const FusionResult r = apply_fusion(a, b, link_a, link_b, success, rng);
        if (r.success) ++successes;
        if (on_record) on_record(i, r);
    }
    FusionSummary s;
    s.counts = summarize_binomial(trials, successes, eta_prime / 8.0);
    return s;
}

}  // namespace blockade
