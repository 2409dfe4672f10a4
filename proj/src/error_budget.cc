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

#include "blockade/error_budget.h"

#include <cmath>
#include <numbers>

#include "blockade/errors.h"
#include "blockade/hybrid_state.h"

namespace blockade {

namespace {

constexpr double kPi = std::numbers::pi;

void require_non_negative(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be finite and non-negative");
    }
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be finite and positive");
    }
}

void require_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

double absorption_probability(int interaction_atoms, double wavelength, double waist) {
    if (interaction_atoms < 0) throw DomainError("interaction atom count must be non-negative");
    require_positive(wavelength, "wavelength");
    require_positive(waist, "waist");
    const double sigma0 = 3.0 * wavelength * wavelength / (2.0 * kPi);
    const double area = kPi * waist * waist;
    return -std::expm1(-interaction_atoms * sigma0 / area);
}

double dark_count_probability(double dark_rate, double duration, double p_success) {
    require_non_negative(dark_rate, "dark rate");
    require_non_negative(duration, "duration");
    if (!(p_success > 0.0)) throw DomainError("p_success must be positive");
    return -std::expm1(-dark_rate * duration / p_success);
}

double collision_rate(double number_density, double cross_section, double mass,
                      double temperature, const PhysicalConstants& c) {
    require_non_negative(number_density, "number density");
    require_non_negative(cross_section, "cross section");
    require_positive(mass, "mass");
    require_non_negative(temperature, "temperature");
    return number_density * cross_section * std::sqrt(3.0 * c.boltzmann * temperature / mass);
}

double doppler_broadening(double center_wavelength, double temperature, double mass,
                          const PhysicalConstants& c) {
    require_non_negative(center_wavelength, "wavelength");
    require_non_negative(temperature, "temperature");
    require_positive(mass, "mass");
    return center_wavelength *
           std::sqrt(c.boltzmann * temperature / (mass * c.light_speed * c.light_speed));
}

double protocol_timescale(double g_n, double omega_s) {
    require_positive(g_n, "g_N");
    if (!(omega_s > 0.0)) throw DomainError("Omega_s must be positive");
    if (std::isinf(omega_s)) return kPi / (2.0 * g_n);
    return kPi / (2.0 * g_n) + kPi / omega_s;
}

double double_excitation_probability(double g_n, int atom_count, double mean_blockade_shift) {
    require_non_negative(g_n, "g_N");
    if (atom_count < 1) throw DomainError("atom count must be positive");
    if (mean_blockade_shift == 0.0 || std::isnan(mean_blockade_shift)) {
        throw DomainError("mean blockade shift must be non-zero");
    }
    const double n = atom_count;
    return g_n * g_n * (n - 1.0) / (2.0 * n * mean_blockade_shift * mean_blockade_shift);
}

Eigen::Matrix4cd final_state_density(double epsilon, double noise_overlap) {
    require_probability(epsilon, "epsilon");
    require_probability(2.0 * epsilon, "2 epsilon");
    require_probability(noise_overlap, "noise overlap");
    // Two (g, s) qubits, |sg> = index 2, |gs> = index 1.
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero(), perp = Eigen::Vector4cd::Zero();
    psi(2) = h;
    psi(1) = Complex(0.0, h);
    perp(2) = h;
    perp(1) = Complex(0.0, -h);
    const Eigen::Matrix4cd p = psi * psi.adjoint();
    const Eigen::Matrix4cd noise = noise_overlap * p + (1.0 - noise_overlap) * (perp * perp.adjoint());
    return (1.0 - 2.0 * epsilon) * p + 2.0 * epsilon * noise;
}

double final_state_fidelity(double epsilon, double p_double, double noise_overlap,
                            bool include_p_double) {
    require_probability(p_double, "P2");
    const Eigen::Matrix4cd rho = final_state_density(epsilon, noise_overlap);
    HybridState target = HybridState::qubits(2);
    auto& t = target.mutable_amplitudes();
    t[0] = 0.0;
    t[2] = 1.0 / std::sqrt(2.0);
    t[1] = Complex(0.0, 1.0 / std::sqrt(2.0));
    double f = fidelity(Eigen::MatrixXcd(rho), target);
    if (include_p_double) f *= 1.0 - p_double;
    return f;
}

ErrorBudget error_budget(const BudgetConfig& cfg) {
    cfg.constants.validate();
    ErrorBudget b;
    const double waist = cfg.waist.value_or(kPi * cfg.wavelength);
    b.p_abs = absorption_probability(cfg.interaction_atoms, cfg.wavelength, waist);
    b.epsilon = cfg.epsilon.value_or(1.0 - b.p_abs);
    b.p_double = cfg.mean_blockade_shift > 0.0
                     ? double_excitation_probability(cfg.g_n, cfg.atom_count, cfg.mean_blockade_shift)
                     : 0.0;
    b.timescale = protocol_timescale(cfg.g_n, cfg.omega_s);
    b.p_dark = dark_count_probability(cfg.dark_rate, b.timescale, cfg.p_success);
    b.collision_rate = collision_rate(cfg.number_density, cfg.cross_section, cfg.mass,
                                      cfg.temperature, cfg.constants);
    b.doppler_sigma = doppler_broadening(cfg.wavelength, cfg.temperature, cfg.mass, cfg.constants);
    b.fidelity = final_state_fidelity(b.epsilon, std::min(b.p_double, 1.0), cfg.noise_overlap,
                                      cfg.include_p_double);
    return b;
}

namespace {

Json item(const char* id, double value, const char* unit, const char* formula) {
    return {{"id", id}, {"value", num(value)}, {"unit", unit}, {"formula", formula}};
}

}  // namespace

Json ErrorBudget::to_json(const BudgetConfig& cfg) const {
    Json items = Json::array();
    items.push_back(item("coincidence_error", cfg.coincidence_error, "probability", "input"));
    Json spont = item("spontaneous_emission_rate", cfg.spontaneous_rate, "Hz", "input");
    spont["over_protocol"] = num(cfg.spontaneous_rate * timescale);
    items.push_back(spont);
    Json bb = item("blackbody_transfer_rate", cfg.blackbody_rate, "Hz", "input");
    bb["over_protocol"] = num(cfg.blackbody_rate * timescale);
    items.push_back(bb);
    items.push_back(item("collision_rate", collision_rate, "Hz", "n*sigma_col*sqrt(3*k_B*T/M)"));
    items.push_back(item("p_double", p_double, "probability", "g_N^2*(N-1)/(2*N*B^2)"));
    items.push_back(item("p_abs", p_abs, "probability", "1-exp(-N_i*sigma_0/A)"));
    items.push_back(item("epsilon", epsilon, "probability",
                         cfg.epsilon ? "input" : "1-P_abs"));
    items.push_back(item("detector_efficiency", cfg.eta, "probability", "input"));
    items.push_back(item("p_dark", p_dark, "probability", "1-exp(-gamma_dc*t/p_success)"));
    Json dop = item("doppler_sigma", doppler_sigma, "m", "lambda_0*sqrt(k_B*T/(M*c^2))");
    dop["value_nm"] = num(doppler_sigma * 1e9);
    items.push_back(dop);
    items.push_back(item("timescale", timescale, "s", "pi/(2*g_N)+pi/Omega_s"));
    items.push_back(item("fidelity", fidelity, "probability",
                         cfg.include_p_double ? "((1-2*eps)+2*eps*overlap)*(1-P2)"
                                              : "(1-2*eps)+2*eps*overlap"));

    Json flags = Json::array();
    flags.push_back({{"id", "fidelity_reference"},
                     {"reference_value", num(kReferenceFidelity)},
                     {"formula_value", num(fidelity)},
                     {"note", "first-order formula value is reported; the reference figure is not "
                              "reproduced by the printed formula and no extra term is assumed"}});
    const double implied = -cfg.dark_rate * timescale / std::log1p(-kReferenceDarkProbability);
    flags.push_back({{"id", "dark_count_reference"},
                     {"reference_value", num(kReferenceDarkProbability)},
                     {"formula_value", num(p_dark)},
                     {"implied_p_success", num(implied)},
                     {"note", "the reference figure implies a p_success matching neither eta nor "
                              "eta^2/2; the formula is evaluated with the configured p_success"}});
    return {{"items", items}, {"flags", flags}};
}

}  // namespace blockade
