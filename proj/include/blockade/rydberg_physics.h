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

#ifndef BLOCKADE_RYDBERG_PHYSICS_H
#define BLOCKADE_RYDBERG_PHYSICS_H

#include <string>

namespace blockade {

/// SI physical constants. Defaults are CODATA 2018.
struct PhysicalConstants {
    double rydberg_energy = 2.1798723611035e-18;    // J  (R_inf h c)
    double bohr_radius = 5.29177210903e-11;         // m
    double electron_charge = 1.602176634e-19;       // C
    double vacuum_permittivity = 8.8541878128e-12;  // F/m
    double boltzmann = 1.380649e-23;                // J/K
    double light_speed = 299792458.0;               // m/s
    double hbar = 1.054571817e-34;                  // J s

    static PhysicalConstants codata2018() { return {}; }

    /// Throws DomainError unless every constant is strictly positive.
    void validate() const;
};

struct RydbergLevel {
    int n = 1;
    int l = 0;
    double quantum_defect = 0.0;
    double base_lifetime = 10e-9;  // s, tau_0
    std::string label;

    double effective_n() const { return n - quantum_defect; }
    void validate() const;
};

/// Scalar Forster channel nl + nl -> n'l' + n''l''.
struct ForsterChannel {
    double radial_element_1 = 0.0;  // m, <nl||r||n'l'>
    double radial_element_2 = 0.0;  // m, <nl||r||n''l''>
    double energy_defect = 0.0;     // rad/s, any sign
};

struct ForsterPotentials {
    double plus = 0.0;
    double minus = 0.0;
};

/// -R / (n - delta)^2, in joules. Throws DomainError when n* <= 0.
double binding_energy(const RydbergLevel& level, const PhysicalConstants& constants);

/// tau_0 n^5.
double radiative_lifetime(const RydbergLevel& level);

/// prefactor * q a0 n^2, in C m.
double permanent_dipole(int n, const PhysicalConstants& constants, double prefactor = 1.0);

/// p^2 (1 - 3 cos^2 theta) / (4 pi eps0 R^3 hbar), rad/s.
double dipole_dipole_potential(double dipole, double separation, double theta,
                               const PhysicalConstants& constants);

/// Forster coupling q^2 <r>_1 <r>_2 / (4 pi eps0 R^3 hbar), rad/s.
double u3(const ForsterChannel& channel, double separation, const PhysicalConstants& constants);

/// V+- = delta/2 +- sqrt(4 u3^2 / 3 + delta^2 / 4).
ForsterPotentials forster_potentials(double u3_value, double energy_defect);

/// C6 / R^6. `c6` in rad/s m^6, result in rad/s.
double vdw_shift(double c6, double separation);

}  // namespace blockade

#endif
