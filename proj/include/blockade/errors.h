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

#ifndef BLOCKADE_ERRORS_H
#define BLOCKADE_ERRORS_H

#include <stdexcept>
#include <string>

namespace blockade {

/// Input outside the mathematical domain of a formula (R = 0, n* <= 0, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Request that a backend or integrator cannot serve (too many atoms,
/// non-Clifford measurement on a tableau, ...).
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quantum state in a configuration an operation does not accept.
struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// API misuse: measuring a qubit twice, bad target indices.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Integrator or solver failure.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or incomplete configuration / input file.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace blockade

#endif
