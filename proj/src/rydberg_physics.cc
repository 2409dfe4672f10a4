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

#include "blockade/rydberg_physics.h"

#include <cmath>
#include <string>

#include "blockade/errors.h"
#include "blockade/units.h"

namespace blockade {

namespace {

void require_positive_separation(double separation) {
    if (!(separation > 0.0) || !std::isfinite(separation)) {
        throw DomainError("separation must be positive and finite, got " +
                          std::to_string(separation));
    }
}

double coulomb_over_hbar(const PhysicalConstants& c) {
    return 1.0 / (4.0 * units::kPi * c.vacuum_permittivity * c.hbar);
}

}  // namespace

void PhysicalConstants::validate() const {
    const double values[] = {rydberg_energy, bohr_radius, electron_charge, vacuum_permittivity,
                             boltzmann,      light_speed, hbar};
    for (double v : values) {
        if (!(v > 0.0)) {
            throw DomainError("physical constants must be strictly positive");
        }
    }
}

void RydbergLevel::validate() const {
    if (n < 1 || l < 0 || l >= n) {
        throw DomainError("rydberg level requires n > l >= 0 (n=" + std::to_string(n) +
                          ", l=" + std::to_string(l) + ")");
    }
    if (quantum_defect < 0.0) {
        throw DomainError("quantum defect must be non-negative");
    }
    if (!(effective_n() > 0.0)) {
        throw DomainError("effective quantum number n - delta must be positive");
    }
}

double binding_energy(const RydbergLevel& level, const PhysicalConstants& constants) {
    const double n_eff = level.effective_n();
    if (!(n_eff > 0.0)) {
        throw DomainError("effective quantum number n - delta must be positive");
    }
    return -constants.rydberg_energy / (n_eff * n_eff);
}

double radiative_lifetime(const RydbergLevel& level) {
    if (!(level.base_lifetime > 0.0)) {
        throw DomainError("base lifetime must be positive");
    }
    return level.base_lifetime * std::pow(static_cast<double>(level.n), 5);
}

double permanent_dipole(int n, const PhysicalConstants& constants, double prefactor) {
    if (n < 1) {
        throw DomainError("principal quantum number must be >= 1");
    }
    const double nn = static_cast<double>(n);
    return prefactor * constants.electron_charge * constants.bohr_radius * nn * nn;
}

double dipole_dipole_potential(double dipole, double separation, double theta,
                               const PhysicalConstants& constants) {
    require_positive_separation(separation);
    const double c = std::cos(theta);
    const double angular = 1.0 - 3.0 * c * c;
    return dipole * dipole * angular * coulomb_over_hbar(constants) /
           (separation * separation * separation);
}

double u3(const ForsterChannel& channel, double separation, const PhysicalConstants& constants) {
    require_positive_separation(separation);
    const double q = constants.electron_charge;
    return q * q * channel.radial_element_1 * channel.radial_element_2 *
           coulomb_over_hbar(constants) / (separation * separation * separation);
}

ForsterPotentials forster_potentials(double u3_value, double energy_defect) {
    const double root =
        std::sqrt(4.0 * u3_value * u3_value / 3.0 + energy_defect * energy_defect / 4.0);
    return {energy_defect / 2.0 + root, energy_defect / 2.0 - root};
}

double vdw_shift(double c6, double separation) {
    require_positive_separation(separation);
    const double r3 = separation * separation * separation;
    return c6 / (r3 * r3);
}

}  // namespace blockade
