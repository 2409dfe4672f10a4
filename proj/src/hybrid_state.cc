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

#include "blockade/hybrid_state.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "blockade/errors.h"

namespace blockade {

namespace {

constexpr double kZero = 1e-300;

bool nonzero(const Complex& c) { return std::norm(c) > kZero; }

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

void require_kind(const HybridState& state, int which, SubsystemKind kind, const char* what) {
    if (which < 0 || which >= state.count()) {
        throw UsageError(std::string(what) + " index " + std::to_string(which) + " out of range");
    }
    if (state.subsystems()[static_cast<std::size_t>(which)].kind != kind) {
        throw UsageError(std::string(what) + " index " + std::to_string(which) +
                         " has the wrong subsystem kind");
    }
}

char ensemble_level_char(int dim, int digit) {
    if (dim == 2) return digit == 0 ? 'e' : 'r';
    static const char kLevels[] = {'g', 's', 'e', 'r'};
    return kLevels[digit];
}

}  // namespace

int level_e(int dim) { return dim == 2 ? 0 : static_cast<int>(Level::E); }
int level_r(int dim) { return dim == 2 ? 1 : static_cast<int>(Level::R); }

HybridState::HybridState(std::vector<Subsystem> subsystems) : subsystems_(std::move(subsystems)) {
    std::size_t dim = 1;
    strides_.assign(subsystems_.size(), 1);
    for (std::size_t i = subsystems_.size(); i-- > 0;) {
        if (subsystems_[i].dim < 1) {
            throw UsageError("subsystem dimension must be positive");
        }
        strides_[i] = dim;
        dim *= static_cast<std::size_t>(subsystems_[i].dim);
    }
    amplitudes_.assign(dim, Complex(0.0, 0.0));
    amplitudes_[0] = 1.0;
}

HybridState HybridState::basis(std::vector<Subsystem> subsystems, std::span<const int> digits) {
    HybridState s(std::move(subsystems));
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[s.index_of(digits)] = 1.0;
    return s;
}

HybridState HybridState::qubits(int n) {
    return HybridState(std::vector<Subsystem>(static_cast<std::size_t>(n), Subsystem::qubit()));
}

std::size_t HybridState::index_of(std::span<const int> digits) const {
    if (digits.size() != subsystems_.size()) {
        throw UsageError("digit count does not match subsystem count");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < 0 || digits[i] >= subsystems_[i].dim) {
            throw UsageError("digit out of range for subsystem " + std::to_string(i));
        }
        idx += static_cast<std::size_t>(digits[i]) * strides_[i];
    }
    return idx;
}

std::vector<int> HybridState::digits_of(std::size_t index) const {
    std::vector<int> d(subsystems_.size());
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
        d[i] = static_cast<int>((index / strides_[i]) % static_cast<std::size_t>(subsystems_[i].dim));
    }
    return d;
}

int HybridState::digit(std::size_t index, int which) const {
    const auto w = static_cast<std::size_t>(which);
    return static_cast<int>((index / strides_[w]) % static_cast<std::size_t>(subsystems_[w].dim));
}

Complex HybridState::amplitude(std::span<const int> digits) const {
    return amplitudes_[index_of(digits)];
}

Complex HybridState::amplitude(std::initializer_list<int> digits) const {
    return amplitude(std::span<const int>(digits.begin(), digits.size()));
}

void HybridState::set_amplitude(std::span<const int> digits, Complex value) {
    amplitudes_[index_of(digits)] = value;
}

void HybridState::set_amplitude(std::initializer_list<int> digits, Complex value) {
    set_amplitude(std::span<const int>(digits.begin(), digits.size()), value);
}

double HybridState::norm_squared() const {
    double n = 0.0;
    for (const auto& a : amplitudes_) n += std::norm(a);
    return n;
}

void HybridState::normalize() {
    const double n = std::sqrt(norm_squared());
    if (!(n > 0.0)) {
        throw StateError("cannot normalize a zero state");
    }
    for (auto& a : amplitudes_) a /= n;
}

void HybridState::apply_local_operator(int which, const Eigen::MatrixXcd& op) {
    const auto w = static_cast<std::size_t>(which);
    const int d = subsystems_[w].dim;
    if (op.rows() != d || op.cols() != d) {
        throw UsageError("operator size does not match subsystem dimension");
    }
    const std::size_t stride = strides_[w];
    const std::size_t block = stride * static_cast<std::size_t>(d);
    std::vector<Complex> in(static_cast<std::size_t>(d));
    for (std::size_t outer = 0; outer < amplitudes_.size(); outer += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t base = outer + inner;
            for (int k = 0; k < d; ++k) in[k] = amplitudes_[base + k * stride];
            for (int r = 0; r < d; ++r) {
                Complex acc = 0.0;
                for (int c = 0; c < d; ++c) acc += op(r, c) * in[c];
                amplitudes_[base + r * stride] = acc;
            }
        }
    }
}

std::string HybridState::basis_label(std::size_t index) const {
    std::ostringstream os;
    os << '|';
    bool first = true;
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
        if (!first) os << ',';
        first = false;
        const int dgt = digit(index, static_cast<int>(i));
        if (subsystems_[i].kind == SubsystemKind::Ensemble) {
            os << ensemble_level_char(subsystems_[i].dim, dgt);
        } else {
            os << dgt;
        }
    }
    os << '>';
    return os.str();
}

void beam_splitter(HybridState& state, int mode_a, int mode_b) {
    require_kind(state, mode_a, SubsystemKind::Mode, "beam splitter mode");
    require_kind(state, mode_b, SubsystemKind::Mode, "beam splitter mode");
    if (mode_a == mode_b) {
        throw UsageError("beam splitter needs two distinct modes");
    }
    const int da = state.subsystems()[static_cast<std::size_t>(mode_a)].dim;
    const int db = state.subsystems()[static_cast<std::size_t>(mode_b)].dim;
    const std::size_t sa = state.stride(mode_a);
    const std::size_t sb = state.stride(mode_b);

    struct Term {
        int ma, mb;
        Complex amp;
    };
    // Output expansion of |na, nb> for every input occupation pair.
    std::vector<std::vector<Term>> table(static_cast<std::size_t>(da * db));
    const Complex i1(0.0, 1.0);
    for (int na = 0; na < da; ++na) {
        for (int nb = 0; nb < db; ++nb) {
            std::map<std::pair<int, int>, Complex> acc;
            const double norm_in = std::sqrt(factorial(na) * factorial(nb));
            const double scale = std::pow(2.0, -0.5 * (na + nb));
            for (int p = 0; p <= na; ++p) {
                for (int q = 0; q <= nb; ++q) {
                    const int ma = p + q;
                    const int mb = na - p + nb - q;
                    const Complex coeff = binom(na, p) * binom(nb, q) *
                                          std::pow(i1, na - p + q) * scale *
                                          std::sqrt(factorial(ma) * factorial(mb)) / norm_in;
                    acc[{ma, mb}] += coeff;
                }
            }
            auto& terms = table[static_cast<std::size_t>(na * db + nb)];
            for (const auto& [key, amp] : acc) {
                if (std::abs(amp) > 1e-15) terms.push_back({key.first, key.second, amp});
            }
        }
    }

    auto& amps = state.mutable_amplitudes();
    std::vector<Complex> out(amps.size(), Complex(0.0, 0.0));
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (!nonzero(amps[idx])) continue;
        const int na = state.digit(idx, mode_a);
        const int nb = state.digit(idx, mode_b);
        const std::size_t base = idx - static_cast<std::size_t>(na) * sa - static_cast<std::size_t>(nb) * sb;
        for (const Term& t : table[static_cast<std::size_t>(na * db + nb)]) {
            if (t.ma >= da || t.mb >= db) {
                throw CutoffError("beam splitter output |" + std::to_string(t.ma) + "," +
                                  std::to_string(t.mb) + "> exceeds the Fock cutoff");
            }
            out[base + static_cast<std::size_t>(t.ma) * sa + static_cast<std::size_t>(t.mb) * sb] +=
                t.amp * amps[idx];
        }
    }
    amps = std::move(out);
}

void phase_shift(HybridState& state, int mode, double phi) {
    require_kind(state, mode, SubsystemKind::Mode, "phase shifter mode");
    const int d = state.subsystems()[static_cast<std::size_t>(mode)].dim;
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n < d; ++n) op(n, n) = std::exp(Complex(0.0, n * phi));
    state.apply_local_operator(mode, op);
}

void blockaded_absorption(HybridState& state, int mode, int ensemble) {
    require_kind(state, mode, SubsystemKind::Mode, "absorption mode");
    require_kind(state, ensemble, SubsystemKind::Ensemble, "absorption ensemble");
    const int dim = state.subsystems()[static_cast<std::size_t>(ensemble)].dim;
    const int e = level_e(dim);
    const int r = level_r(dim);
    const std::size_t sm = state.stride(mode);
    const std::size_t se = state.stride(ensemble);

    auto& amps = state.mutable_amplitudes();
    std::vector<Complex> out(amps.size(), Complex(0.0, 0.0));
    std::vector<char> written(amps.size(), 0);
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (!nonzero(amps[idx])) continue;
        const int level = state.digit(idx, ensemble);
        if (level != e && level != r) {
            throw StateError("blockaded absorption needs the ensemble in the {e, r} manifold");
        }
        std::size_t target = idx;
        if (level == e && state.digit(idx, mode) >= 1) {
            target = idx - sm + static_cast<std::size_t>(r - e) * se;
        }
        if (written[target]) {
            throw StateError("blockaded absorption is not isometric on this state");
        }
        written[target] = 1;
        out[target] = amps[idx];
    }
    amps = std::move(out);
}

namespace {

bool is_two_photon(const HybridState& state, std::size_t idx, int mode, int ensemble) {
    const int dim = state.subsystems()[static_cast<std::size_t>(ensemble)].dim;
    return state.digit(idx, mode) == 2 && state.digit(idx, ensemble) == level_e(dim);
}

}  // namespace

double two_photon_weight(const HybridState& state, int mode, int ensemble) {
    require_kind(state, mode, SubsystemKind::Mode, "absorption mode");
    require_kind(state, ensemble, SubsystemKind::Ensemble, "absorption ensemble");
    if (state.subsystems()[static_cast<std::size_t>(mode)].dim < 3) return 0.0;
    const auto amps = state.amplitudes();
    double w = 0.0;
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (is_two_photon(state, idx, mode, ensemble)) w += std::norm(amps[idx]);
    }
    return w / state.norm_squared();
}

void project_double_excitation(HybridState& state, int mode, int ensemble) {
    if (two_photon_weight(state, mode, ensemble) <= 0.0) {
        throw StateError("no two-photon component to doubly excite");
    }
    const int dim = state.subsystems()[static_cast<std::size_t>(ensemble)].dim;
    const std::size_t shift = static_cast<std::size_t>(level_r(dim) - level_e(dim)) * state.stride(ensemble);
    auto& amps = state.mutable_amplitudes();
    std::vector<Complex> out(amps.size(), Complex(0.0, 0.0));
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (is_two_photon(state, idx, mode, ensemble)) {
            out[idx - 2 * state.stride(mode) + shift] = amps[idx];
        }
    }
    amps = std::move(out);
    state.normalize();
}

void suppress_double_excitation(HybridState& state, int mode, int ensemble, double p_double) {
    if (p_double < 0.0 || p_double > 1.0) throw DomainError("P2 must lie in [0, 1]");
    if (two_photon_weight(state, mode, ensemble) <= 0.0) return;
    const double keep = std::sqrt(1.0 - p_double);
    auto& amps = state.mutable_amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (is_two_photon(state, idx, mode, ensemble)) amps[idx] *= keep;
    }
    state.normalize();
}

AbsorptionEvent blockaded_absorption(HybridState& state, int mode, int ensemble,
                                     const AbsorptionModel& model, Rng& rng) {
    AbsorptionEvent ev;
    if (!(rng.uniform() < model.p_abs)) {
        ev.absorbed = false;
        return ev;
    }
    if (model.p_double > 0.0) {
        const double w = two_photon_weight(state, mode, ensemble);
        if (rng.uniform() < model.p_double * w) {
            project_double_excitation(state, mode, ensemble);
            ev.double_excitation = true;
            return ev;
        }
        suppress_double_excitation(state, mode, ensemble, model.p_double);
    }
    blockaded_absorption(state, mode, ensemble);
    return ev;
}

DetectionRecord photodetect(HybridState& state, int mode, const DetectorModel& detector, Rng& rng) {
    require_kind(state, mode, SubsystemKind::Mode, "detector mode");
    if (detector.efficiency < 0.0 || detector.efficiency > 1.0 || detector.dark_prob < 0.0 ||
        detector.dark_prob >= 1.0 + 1e-15) {
        throw DomainError("detector efficiency must be in [0,1] and dark probability in [0,1)");
    }
    const int d = state.subsystems()[static_cast<std::size_t>(mode)].dim;
    std::vector<double> prob(static_cast<std::size_t>(d), 0.0);
    auto& amps = state.mutable_amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        prob[static_cast<std::size_t>(state.digit(idx, mode))] += std::norm(amps[idx]);
    }
    double total = 0.0;
    for (double p : prob) total += p;
    const double u = rng.uniform() * total;
    int n = 0;
    double cum = 0.0;
    for (; n < d - 1; ++n) {
        cum += prob[static_cast<std::size_t>(n)];
        if (u < cum) break;
    }
    while (n > 0 && prob[static_cast<std::size_t>(n)] <= 0.0) --n;
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (state.digit(idx, mode) != n) amps[idx] = 0.0;
    }
    state.normalize();

    DetectionRecord rec;
    rec.mode_index = mode;
    rec.true_photons = n;
    rec.detected_photons = rng.binomial(n, detector.efficiency);
    const bool dark_fired = rng.uniform() < detector.dark_prob;
    rec.clicked = rec.detected_photons > 0 || dark_fired;
    rec.dark = dark_fired && rec.detected_photons == 0;
    return rec;
}

double fidelity(const HybridState& state, const HybridState& target) {
    if (state.dimension() != target.dimension()) {
        throw UsageError("fidelity: dimension mismatch");
    }
    Complex overlap = 0.0;
    const auto a = state.amplitudes();
    const auto b = target.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(b[i]) * a[i];
    return std::norm(overlap);
}

double fidelity(const Eigen::MatrixXcd& rho, const HybridState& target) {
    if (rho.rows() != static_cast<Eigen::Index>(target.dimension()) || rho.cols() != rho.rows()) {
        throw UsageError("fidelity: dimension mismatch");
    }
    const auto t = target.amplitudes();
    Eigen::VectorXcd v(static_cast<Eigen::Index>(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) v(static_cast<Eigen::Index>(i)) = t[i];
    return std::real(v.dot(rho * v));
}

void apply_local(HybridState& state, int which, const Eigen::MatrixXcd& op) {
    if (which < 0 || which >= state.count()) {
        throw UsageError("apply_local: subsystem index out of range");
    }
    const int d = state.subsystems()[static_cast<std::size_t>(which)].dim;
    if (op.rows() != d || op.cols() != d) {
        throw UsageError("apply_local: operator is " + std::to_string(op.rows()) + "x" +
                         std::to_string(op.cols()) + ", subsystem dimension is " +
                         std::to_string(d));
    }
    const Eigen::MatrixXcd check = op.adjoint() * op - Eigen::MatrixXcd::Identity(d, d);
    if (check.cwiseAbs().maxCoeff() > 1e-12) {
        throw UsageError("apply_local: operator is not unitary");
    }
    state.apply_local_operator(which, op);
}

namespace {

struct Split {
    std::vector<Subsystem> kept;
    std::vector<std::size_t> kept_strides;
};

Split split_kept(const HybridState& state, std::span<const int> keep) {
    Split s;
    for (int k : keep) {
        if (k < 0 || k >= state.count()) throw UsageError("subsystem index out of range");
        s.kept.push_back(state.subsystems()[static_cast<std::size_t>(k)]);
    }
    s.kept_strides.assign(s.kept.size(), 1);
    std::size_t dim = 1;
    for (std::size_t i = s.kept.size(); i-- > 0;) {
        s.kept_strides[i] = dim;
        dim *= static_cast<std::size_t>(s.kept[i].dim);
    }
    return s;
}

}  // namespace

Eigen::MatrixXcd reduced_density(const HybridState& state, std::span<const int> keep) {
    const Split split = split_kept(state, keep);
    std::size_t kept_dim = 1;
    for (const auto& s : split.kept) kept_dim *= static_cast<std::size_t>(s.dim);
    std::vector<bool> is_kept(static_cast<std::size_t>(state.count()), false);
    for (int k : keep) is_kept[static_cast<std::size_t>(k)] = true;

    std::map<std::size_t, std::vector<std::pair<std::size_t, Complex>>> by_rest;
    const auto amps = state.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (!nonzero(amps[idx])) continue;
        std::size_t kept_idx = 0;
        std::size_t rest_idx = idx;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            const int dg = state.digit(idx, keep[i]);
            kept_idx += static_cast<std::size_t>(dg) * split.kept_strides[i];
            rest_idx -= static_cast<std::size_t>(dg) * state.stride(keep[i]);
        }
        by_rest[rest_idx].push_back({kept_idx, amps[idx]});
    }
    const auto n = static_cast<Eigen::Index>(kept_dim);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [rest, entries] : by_rest) {
        for (const auto& [i, ai] : entries) {
            for (const auto& [j, aj] : entries) {
                rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += ai * std::conj(aj);
            }
        }
    }
    return rho;
}

HybridState pure_factor(const HybridState& state, std::span<const int> keep) {
    const Split split = split_kept(state, keep);
    HybridState out(split.kept);
    auto& o = out.mutable_amplitudes();
    o[0] = 0.0;
    bool have_rest = false;
    std::size_t rest_ref = 0;
    const auto amps = state.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (std::norm(amps[idx]) < 1e-24) continue;
        std::size_t kept_idx = 0;
        std::size_t rest_idx = idx;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            const int dg = state.digit(idx, keep[i]);
            kept_idx += static_cast<std::size_t>(dg) * split.kept_strides[i];
            rest_idx -= static_cast<std::size_t>(dg) * state.stride(keep[i]);
        }
        if (!have_rest) {
            rest_ref = rest_idx;
            have_rest = true;
        } else if (rest_idx != rest_ref) {
            throw StateError("discarded subsystems are not in a product basis state");
        }
        o[kept_idx] = amps[idx];
    }
    out.normalize();
    return out;
}

Eigen::Matrix4cd transfer_to_storage() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    const int g = static_cast<int>(Level::G);
    const int s = static_cast<int>(Level::S);
    const int e = static_cast<int>(Level::E);
    const int r = static_cast<int>(Level::R);
    m(g, e) = 1.0;
    m(e, g) = 1.0;
    m(s, r) = 1.0;
    m(r, s) = 1.0;
    return m;
}

}  // namespace blockade
