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

#ifndef BLOCKADE_UNITS_H
#define BLOCKADE_UNITS_H

#include <numbers>

// Internal unit system is SI. Every frequency-like quantity (Rabi
// frequencies, shifts, couplings, linewidths) is an angular frequency in
// rad/s; the factor 2*pi is applied only at I/O boundaries where values are
// written as linear MHz.
namespace blockade::units {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kMicrometer = 1e-6;
inline constexpr double kNanometer = 1e-9;
inline constexpr double kCentimeter = 1e-2;
inline constexpr double kMicrosecond = 1e-6;
inline constexpr double kNanosecond = 1e-9;
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

/// Linear MHz -> rad/s.
constexpr double mhz_to_angular(double mhz) { return kTwoPi * mhz * 1e6; }
/// rad/s -> linear MHz.
constexpr double angular_to_mhz(double omega) { return omega / (kTwoPi * 1e6); }
/// Linear Hz -> rad/s.
constexpr double hz_to_angular(double hz) { return kTwoPi * hz; }

/// C6 given in MHz * um^6 (linear) -> rad/s * m^6.
constexpr double c6_from_mhz_um6(double c6) {
    return mhz_to_angular(c6) * 1e-36;
}

}  // namespace blockade::units

#endif
