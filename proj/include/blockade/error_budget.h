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

#ifndef BLOCKADE_ERROR_BUDGET_H
#define BLOCKADE_ERROR_BUDGET_H

#include <optional>

#include <Eigen/Dense>

#include "blockade/json_io.h"
#include "blockade/rydberg_physics.h"

namespace blockade {

/// 1 - exp(-N_i sigma_0 / A), sigma_0 = 3 lambda^2 / (2 pi), A = pi w0^2.
double absorption_probability(int interaction_atoms, double wavelength, double waist);

/// 1 - exp(-gamma_dc t / p_success). DomainError for p_success <= 0.
double dark_count_probability(double dark_rate, double duration, double p_success);

/// n sigma_col sqrt(3 k_B T / M), with n in m^-3, sigma_col in m^2, M in kg.
double collision_rate(double number_density, double cross_section, double mass,
                      double temperature, const PhysicalConstants& constants = {});

/// lambda_0 sqrt(k_B T / (M c^2)), M in kg.
double doppler_broadening(double center_wavelength, double temperature, double mass,
                          const PhysicalConstants& constants = {});

/// pi / (2 g_N) + pi / Omega_s, angular inputs.
double protocol_timescale(double g_n, double omega_s);

/// g_N^2 (N - 1) / (2 N B^2).
double double_excitation_probability(double g_n, int atom_count, double mean_blockade_shift);

/// (1 - 2 eps) |psi><psi| + 2 eps rho_noise on two (g, s) qubits, with
/// rho_noise = overlap |psi><psi| + (1 - overlap) |psi_perp><psi_perp|.
Eigen::Matrix4cd final_state_density(double epsilon, double noise_overlap);

/// <psi|rho_fin|psi> = (1 - 2 eps) + 2 eps overlap, times (1 - P2) when
/// `include_p_double` is set.
double final_state_fidelity(double epsilon, double p_double, double noise_overlap,
                            bool include_p_double = false);

struct BudgetConfig {
    int atom_count = 300;
    int interaction_atoms = 300;
    double wavelength = 485.081e-9;           // m, e <-> r transition
    std::optional<double> waist;              // m; pi * wavelength when unset
    double mean_blockade_shift = 0.0;         // rad/s
    double g_n = 0.0;                         // rad/s
    double omega_s = 0.0;                     // rad/s
    double eta = 0.3;
    double dark_rate = 0.0;                   // Hz
    double p_success = 0.3;                   // success probability entering P_dc
    double number_density = 0.0;              // m^-3
    double cross_section = 0.0;               // m^2
    double mass = 0.0;                        // kg
    double temperature = 0.0;                 // K
    double spontaneous_rate = 0.0;            // Hz
    double blackbody_rate = 0.0;              // Hz
    double coincidence_error = 0.0;
    double noise_overlap = 0.0;
    std::optional<double> epsilon;            // overrides 1 - P_abs
    bool include_p_double = false;
    PhysicalConstants constants;
};

struct ErrorBudget {
    double p_abs = 0.0;
    double epsilon = 0.0;
    double p_double = 0.0;
    double p_dark = 0.0;
    double collision_rate = 0.0;
    double doppler_sigma = 0.0;  // m
    double timescale = 0.0;      // s
    double fidelity = 0.0;

    Json to_json(const BudgetConfig& config) const;
};

ErrorBudget error_budget(const BudgetConfig& config);

/// Reference figures the report compares against.
inline constexpr double kReferenceFidelity = 0.982;
inline constexpr double kReferenceDarkProbability = 3.2e-4;

}  // namespace blockade

#endif
