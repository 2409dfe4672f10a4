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

#include "blockade/stabilizer_tableau.h"

#include <algorithm>
#include <bit>

#include "blockade/errors.h"

namespace blockade {

namespace {

int word_count(int n) { return (n + 63) / 64; }

/// Exponent of i (mod 4) picked up by the product P1 * P2, summed over the
/// 64 sites of one word.
int phase_sum(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2, std::uint64_t z2) {
    const std::uint64_t y1 = x1 & z1, xo1 = x1 & ~z1, zo1 = ~x1 & z1;
    const std::uint64_t y2 = x2 & z2, xo2 = x2 & ~z2, zo2 = ~x2 & z2;
    const std::uint64_t plus = (y1 & zo2) | (xo1 & y2) | (zo1 & xo2);
    const std::uint64_t minus = (y1 & xo2) | (xo1 & zo2) | (zo1 & y2);
    return std::popcount(plus) - std::popcount(minus);
}

}  // namespace

char to_char(PauliBasis b) {
    switch (b) {
        case PauliBasis::X:
            return 'X';
        case PauliBasis::Y:
            return 'Y';
        case PauliBasis::Z:
            return 'Z';
    }
    return '?';
}

PauliString::PauliString(int n)
    : n_(n), xs_(static_cast<std::size_t>(word_count(n)), 0), zs_(xs_) {
    if (n < 0) throw UsageError("negative Pauli string length");
}

PauliString PauliString::parse(std::string_view text) {
    bool neg = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        neg = text.front() == '-';
        text.remove_prefix(1);
    }
    PauliString p(static_cast<int>(text.size()));
    p.negative_ = neg;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const int q = static_cast<int>(i);
        switch (text[i]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.set(q, true, false);
                break;
            case 'Y':
                p.set(q, true, true);
                break;
            case 'Z':
                p.set(q, false, true);
                break;
            default:
                throw UsageError("bad Pauli character '" + std::string(1, text[i]) + "'");
        }
    }
    return p;
}

PauliString PauliString::single(int n, int qubit, PauliBasis basis) {
    if (qubit < 0 || qubit >= n) throw UsageError("qubit index out of range");
    PauliString p(n);
    p.set(qubit, basis != PauliBasis::Z, basis != PauliBasis::X);
    return p;
}

bool PauliString::x(int q) const { return (xs_[q >> 6] >> (q & 63)) & 1U; }
bool PauliString::z(int q) const { return (zs_[q >> 6] >> (q & 63)) & 1U; }

void PauliString::set(int q, bool xb, bool zb) {
    const std::uint64_t m = std::uint64_t{1} << (q & 63);
    xs_[q >> 6] = xb ? (xs_[q >> 6] | m) : (xs_[q >> 6] & ~m);
    zs_[q >> 6] = zb ? (zs_[q >> 6] | m) : (zs_[q >> 6] & ~m);
}

bool PauliString::commutes(const PauliString& other) const {
    if (other.n_ != n_) throw UsageError("Pauli string length mismatch");
    int parity = 0;
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        parity ^= std::popcount((xs_[w] & other.zs_[w]) ^ (zs_[w] & other.xs_[w])) & 1;
    }
    return parity == 0;
}

int PauliString::weight() const {
    int w = 0;
    for (std::size_t i = 0; i < xs_.size(); ++i) w += std::popcount(xs_[i] | zs_[i]);
    return w;
}

PauliString PauliString::operator*(const PauliString& other) const {
    if (!commutes(other)) {
        throw StateError("product of anticommuting Pauli strings is not Hermitian");
    }
    PauliString out(n_);
    int phase = (negative_ ? 2 : 0) + (other.negative_ ? 2 : 0);
    for (std::size_t w = 0; w < xs_.size(); ++w) {
        phase += phase_sum(xs_[w], zs_[w], other.xs_[w], other.zs_[w]);
        out.xs_[w] = xs_[w] ^ other.xs_[w];
        out.zs_[w] = zs_[w] ^ other.zs_[w];
    }
    out.negative_ = (((phase % 4) + 4) % 4) == 2;
    return out;
}

std::string PauliString::str() const {
    std::string s(1, negative_ ? '-' : '+');
    for (int q = 0; q < n_; ++q) {
        const bool xb = x(q), zb = z(q);
        s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

StabilizerTableau::StabilizerTableau(int n) : n_(n), words_(word_count(n)) {
    if (n < 1) throw UsageError("tableau needs at least one qubit");
    const std::size_t rows = static_cast<std::size_t>(2 * n + 1);
    x_.assign(rows * static_cast<std::size_t>(words_), 0);
    z_.assign(rows * static_cast<std::size_t>(words_), 0);
    r_.assign(rows, 0);
    measured_.assign(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        xrow(i)[i >> 6] |= std::uint64_t{1} << (i & 63);
        zrow(i + n)[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
}

void StabilizerTableau::check_qubit(int q) const {
    if (q < 0 || q >= n_) {
        throw UsageError("qubit " + std::to_string(q) + " out of range for " +
                         std::to_string(n_) + "-qubit tableau");
    }
}

void StabilizerTableau::h(int q) {
    check_qubit(q);
    const std::uint64_t m = std::uint64_t{1} << (q & 63);
    const int w = q >> 6;
    for (int row = 0; row < 2 * n_; ++row) {
        std::uint64_t& xw = xrow(row)[w];
        std::uint64_t& zw = zrow(row)[w];
        const bool xb = xw & m, zb = zw & m;
        r_[row] ^= static_cast<std::uint8_t>(xb && zb);
        xw = zb ? (xw | m) : (xw & ~m);
        zw = xb ? (zw | m) : (zw & ~m);
    }
}

void StabilizerTableau::s(int q) {
    check_qubit(q);
    const std::uint64_t m = std::uint64_t{1} << (q & 63);
    const int w = q >> 6;
    for (int row = 0; row < 2 * n_; ++row) {
        const std::uint64_t xw = xrow(row)[w];
        std::uint64_t& zw = zrow(row)[w];
        r_[row] ^= static_cast<std::uint8_t>((xw & m) && (zw & m));
        zw ^= xw & m;
    }
}

void StabilizerTableau::s_dag(int q) {
    s(q);
    s(q);
    s(q);
}

void StabilizerTableau::x(int q) {
    check_qubit(q);
    for (int row = 0; row < 2 * n_; ++row) r_[row] ^= static_cast<std::uint8_t>(zbit(row, q));
}

void StabilizerTableau::y(int q) {
    check_qubit(q);
    for (int row = 0; row < 2 * n_; ++row) {
        r_[row] ^= static_cast<std::uint8_t>(xbit(row, q) ^ zbit(row, q));
    }
}

void StabilizerTableau::z(int q) {
    check_qubit(q);
    for (int row = 0; row < 2 * n_; ++row) r_[row] ^= static_cast<std::uint8_t>(xbit(row, q));
}

void StabilizerTableau::cx(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) throw UsageError("two-qubit gate needs distinct targets");
    const std::uint64_t ma = std::uint64_t{1} << (a & 63), mb = std::uint64_t{1} << (b & 63);
    const int wa = a >> 6, wb = b >> 6;
    for (int row = 0; row < 2 * n_; ++row) {
        std::uint64_t* xr = xrow(row);
        std::uint64_t* zr = zrow(row);
        const bool xa = xr[wa] & ma, za = zr[wa] & ma, xb = xr[wb] & mb, zb = zr[wb] & mb;
        r_[row] ^= static_cast<std::uint8_t>(xa && zb && (xb == za));
        if (xa) xr[wb] ^= mb;
        if (zb) zr[wa] ^= ma;
    }
}

void StabilizerTableau::cz(int a, int b) {
    h(b);
    cx(a, b);
    h(b);
}

void StabilizerTableau::rowsum(int h, int i) {
    int phase = 2 * r_[h] + 2 * r_[i];
    std::uint64_t* xh = xrow(h);
    std::uint64_t* zh = zrow(h);
    const std::uint64_t* xi = xrow(i);
    const std::uint64_t* zi = zrow(i);
    for (int w = 0; w < words_; ++w) {
        phase += phase_sum(xi[w], zi[w], xh[w], zh[w]);
        xh[w] ^= xi[w];
        zh[w] ^= zi[w];
    }
    phase = ((phase % 4) + 4) % 4;
    if (phase != 0 && phase != 2) {
        throw StateError("tableau rowsum produced a non-Hermitian row");
    }
    r_[h] = static_cast<std::uint8_t>(phase == 2);
}

void StabilizerTableau::copy_row(int dst, int src) {
    std::copy_n(xrow(src), words_, xrow(dst));
    std::copy_n(zrow(src), words_, zrow(dst));
    r_[dst] = r_[src];
}

void StabilizerTableau::clear_row(int row) {
    std::fill_n(xrow(row), words_, 0);
    std::fill_n(zrow(row), words_, 0);
    r_[row] = 0;
}

MeasurementResult StabilizerTableau::measure_z(int q, Rng* rng, std::optional<int> forced) {
    check_qubit(q);
    int p = -1;
    for (int row = n_; row < 2 * n_; ++row) {
        if (xbit(row, q)) {
            p = row;
            break;
        }
    }
    MeasurementResult res;
    if (p >= 0) {
        // row p - n anticommutes with p and is overwritten below
        for (int row = 0; row < 2 * n_; ++row) {
            if (row != p && row != p - n_ && xbit(row, q)) rowsum(row, p);
        }
        copy_row(p - n_, p);
        clear_row(p);
        zrow(p)[q >> 6] |= std::uint64_t{1} << (q & 63);
        int outcome;
        if (forced) {
            if (*forced != 1 && *forced != -1) throw UsageError("forced outcome must be +1 or -1");
            outcome = *forced;
        } else {
            if (rng == nullptr) throw UsageError("random measurement needs an rng");
            outcome = rng->uniform() < 0.5 ? 1 : -1;
        }
        r_[p] = static_cast<std::uint8_t>(outcome == -1);
        res.outcome = outcome;
        res.deterministic = false;
    } else {
        const int scratch = 2 * n_;
        clear_row(scratch);
        for (int i = 0; i < n_; ++i) {
            if (xbit(i, q)) rowsum(scratch, i + n_);
        }
        res.outcome = r_[scratch] ? -1 : 1;
        res.deterministic = true;
        if (forced && *forced != res.outcome) {
            throw StateError("forced outcome " + std::to_string(*forced) +
                             " contradicts a deterministic measurement");
        }
    }
    debug_check();
    return res;
}

MeasurementResult StabilizerTableau::measure(int q, PauliBasis basis, Rng* rng,
                                             std::optional<int> forced) {
    switch (basis) {
        case PauliBasis::Z:
            return measure_z(q, rng, forced);
        case PauliBasis::X: {
            h(q);
            const auto res = measure_z(q, rng, forced);
            h(q);
            return res;
        }
        case PauliBasis::Y: {
            s_dag(q);
            h(q);
            const auto res = measure_z(q, rng, forced);
            h(q);
            s(q);
            return res;
        }
    }
    throw UsageError("unknown measurement basis");
}

MeasurementResult StabilizerTableau::measure_pauli(int q, PauliBasis basis, Rng& rng) {
    check_qubit(q);
    if (measured_[static_cast<std::size_t>(q)]) {
        throw UsageError("qubit " + std::to_string(q) + " was already measured");
    }
    const auto res = measure(q, basis, &rng);
    measured_[static_cast<std::size_t>(q)] = true;
    return res;
}

bool StabilizerTableau::is_measured(int q) const {
    check_qubit(q);
    return measured_[static_cast<std::size_t>(q)];
}

PauliString StabilizerTableau::row_string(int row) const {
    PauliString p(n_);
    for (int q = 0; q < n_; ++q) p.set(q, xbit(row, q), zbit(row, q));
    p.set_negative(r_[row] != 0);
    return p;
}

PauliString StabilizerTableau::stabilizer(int i) const {
    if (i < 0 || i >= n_) throw UsageError("stabilizer index out of range");
    return row_string(i + n_);
}

PauliString StabilizerTableau::destabilizer(int i) const {
    if (i < 0 || i >= n_) throw UsageError("destabilizer index out of range");
    return row_string(i);
}

std::vector<PauliString> StabilizerTableau::stabilizers() const {
    std::vector<PauliString> out;
    out.reserve(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out.push_back(row_string(i + n_));
    return out;
}

int StabilizerTableau::expectation(const PauliString& p) const {
    if (p.size() != n_) throw UsageError("Pauli string length mismatch");
    for (int i = 0; i < n_; ++i) {
        if (!row_string(i + n_).commutes(p)) return 0;
    }
    PauliString acc(n_);
    for (int i = 0; i < n_; ++i) {
        if (!row_string(i).commutes(p)) acc = acc * row_string(i + n_);
    }
    if (acc.xs() != p.xs() || acc.zs() != p.zs()) {
        throw StateError("stabilizer group decomposition failed; tableau is inconsistent");
    }
    return acc.negative() == p.negative() ? 1 : -1;
}

std::string StabilizerTableau::check_invariants() const {
    for (int i = 0; i < n_; ++i) {
        const PauliString si = row_string(i + n_);
        for (int j = 0; j < n_; ++j) {
            if (j > i && !si.commutes(row_string(j + n_))) {
                return "stabilizers " + std::to_string(i) + " and " + std::to_string(j) +
                       " anticommute";
            }
            const bool anti = !row_string(j).commutes(si);
            if (anti != (i == j)) {
                return "destabilizer " + std::to_string(j) + " pairs wrongly with stabilizer " +
                       std::to_string(i);
            }
        }
    }
    // Rank of the stabilizer rows over GF(2).
    std::vector<std::vector<std::uint64_t>> rows;
    for (int i = 0; i < n_; ++i) {
        std::vector<std::uint64_t> v(xrow(i + n_), xrow(i + n_) + words_);
        v.insert(v.end(), zrow(i + n_), zrow(i + n_) + words_);
        rows.push_back(std::move(v));
    }
    int rank = 0;
    for (int col = 0; col < 2 * n_ && rank < n_; ++col) {
        const int w = col < n_ ? (col >> 6) : words_ + ((col - n_) >> 6);
        const std::uint64_t m = std::uint64_t{1} << ((col < n_ ? col : col - n_) & 63);
        int pivot = -1;
        for (int r = rank; r < n_; ++r) {
            if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(w)] & m) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(pivot)], rows[static_cast<std::size_t>(rank)]);
        for (int r = 0; r < n_; ++r) {
            if (r != rank && (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(w)] & m)) {
                for (std::size_t k = 0; k < rows[0].size(); ++k) {
                    rows[static_cast<std::size_t>(r)][k] ^= rows[static_cast<std::size_t>(rank)][k];
                }
            }
        }
        ++rank;
    }
    if (rank != n_) return "stabilizer rows are not independent";
    return {};
}

void StabilizerTableau::debug_check() const {
#ifndef NDEBUG
    const std::string msg = check_invariants();
    if (!msg.empty()) throw StateError("tableau invariant violated: " + msg);
#endif
}

}  // namespace blockade
