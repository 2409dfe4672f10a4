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

#ifndef BLOCKADE_RNG_H
#define BLOCKADE_RNG_H

#include <cstdint>
#include <cmath>
#include <random>

namespace blockade {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seeded generator with a portable uniform draw. Streams for parallel
/// trials are derived as splitmix64(splitmix64(master) + stream), so the
/// draws of trial i depend only on (master seed, i).
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    static Rng for_stream(std::uint64_t master, std::uint64_t stream) {
        return Rng(splitmix64(master) + stream);
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    int binomial(int n, double p) {
        int k = 0;
        for (int i = 0; i < n; ++i) {
            k += bernoulli(p) ? 1 : 0;
        }
        return k;
    }

    /// Standard normal via Box-Muller (one draw pair per call; the sine
    /// branch is discarded so the stream position stays simple).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace blockade

#endif
