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

#ifndef BLOCKADE_STABILIZER_TABLEAU_H
#define BLOCKADE_STABILIZER_TABLEAU_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blockade/rng.h"

namespace blockade {

enum class PauliBasis { X, Y, Z };

char to_char(PauliBasis b);

/// Hermitian Pauli product with a +/- sign. Bit pair (x, z) = (1, 1) is Y.
class PauliString {
   public:
    explicit PauliString(int n = 0);

    /// Parses "+XZI", "-YY", "ZZ" (sign optional, I or _ for identity).
    static PauliString parse(std::string_view text);
    static PauliString single(int n, int qubit, PauliBasis basis);

    int size() const { return n_; }
    bool x(int q) const;
    bool z(int q) const;
    void set(int q, bool x, bool z);
    bool negative() const { return negative_; }
    void set_negative(bool neg) { negative_ = neg; }
    int sign() const { return negative_ ? -1 : 1; }

    bool commutes(const PauliString& other) const;
    /// Number of non-identity factors.
    int weight() const;

    /// Product this * other; throws StateError when the factors anticommute
    /// (the result would not be Hermitian).
    PauliString operator*(const PauliString& other) const;
    bool operator==(const PauliString& other) const = default;

    std::string str() const;

    const std::vector<std::uint64_t>& xs() const { return xs_; }
    const std::vector<std::uint64_t>& zs() const { return zs_; }

   private:
    int n_;
    std::vector<std::uint64_t> xs_;
    std::vector<std::uint64_t> zs_;
    bool negative_ = false;
};

struct MeasurementResult {
    int outcome = 1;  // +1 or -1
    bool deterministic = false;
};

/// Aaronson-Gottesman tableau: n destabilizer rows, n stabilizer rows and a
/// scratch row, packed in 64-bit words.
class StabilizerTableau {
   public:
    /// |0...0>.
    explicit StabilizerTableau(int n);

    int size() const { return n_; }

    void h(int q);
    void s(int q);
    void s_dag(int q);
    void x(int q);
    void y(int q);
    void z(int q);
    void cx(int control, int target);
    void cz(int a, int b);

    /// Z measurement. A random outcome consumes one uniform draw (+1 when
    /// u < 1/2) unless `forced` supplies it; `rng` may be null if forced.
    MeasurementResult measure_z(int q, Rng* rng, std::optional<int> forced = std::nullopt);
    MeasurementResult measure(int q, PauliBasis basis, Rng* rng,
                              std::optional<int> forced = std::nullopt);

    /// Single-qubit Pauli measurement that also marks the qubit measured;
    /// measuring it again throws UsageError.
    MeasurementResult measure_pauli(int q, PauliBasis basis, Rng& rng);
    bool is_measured(int q) const;

    /// +1 or -1 if +/-P is in the stabilizer group, 0 if P is not.
    int expectation(const PauliString& p) const;

    PauliString stabilizer(int i) const;
    PauliString destabilizer(int i) const;
    std::vector<PauliString> stabilizers() const;

    /// Checks commutation, symplectic pairing with the destabilizers and
    /// full rank. Returns an empty string when the tableau is consistent.
    std::string check_invariants() const;

   private:
    int n_;
    int words_;
    std::vector<std::uint64_t> x_;
    std::vector<std::uint64_t> z_;
    std::vector<std::uint8_t> r_;
    std::vector<bool> measured_;

    std::uint64_t* xrow(int row) { return x_.data() + static_cast<std::size_t>(row) * words_; }
    std::uint64_t* zrow(int row) { return z_.data() + static_cast<std::size_t>(row) * words_; }
    const std::uint64_t* xrow(int row) const {
        return x_.data() + static_cast<std::size_t>(row) * words_;
    }
    const std::uint64_t* zrow(int row) const {
        return z_.data() + static_cast<std::size_t>(row) * words_;
    }
    bool xbit(int row, int q) const { return (xrow(row)[q >> 6] >> (q & 63)) & 1U; }
    bool zbit(int row, int q) const { return (zrow(row)[q >> 6] >> (q & 63)) & 1U; }

    void check_qubit(int q) const;
    void rowsum(int h, int i);
    void copy_row(int dst, int src);
    void clear_row(int row);
    PauliString row_string(int row) const;
    void debug_check() const;
};

}  // namespace blockade

#endif
