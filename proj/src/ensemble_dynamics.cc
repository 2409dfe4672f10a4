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

#include "blockade/ensemble_dynamics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "blockade/errors.h"
#include "blockade/rng.h"
#include "blockade/units.h"

namespace blockade {

using cd = std::complex<double>;

void EnsembleConfig::validate() const {
    if (atom_count < 2) {
        throw DomainError("ensemble needs at least 2 atoms");
    }
    if (!(sigma > 0.0)) {
        throw DomainError("cloud width sigma must be positive");
    }
    if (!c6 && !mean_blockade_shift) {
        throw DomainError("ensemble needs either c6 or mean_blockade_shift");
    }
    if (!(rabi_single > 0.0)) {
        throw DomainError("single-atom Rabi frequency must be positive");
    }
}

double EnsembleConfig::rabi_from_pi_time(int atom_count, double pi_time) {
    if (atom_count < 1 || !(pi_time > 0.0)) {
        throw DomainError("pi time calibration needs N >= 1 and t > 0");
    }
    return units::kPi / (2.0 * std::sqrt(static_cast<double>(atom_count)) * pi_time);
}

AtomPositions sample_positions(const EnsembleConfig& config, std::uint64_t seed) {
    if (config.atom_count < 2 || !(config.sigma > 0.0)) {
        throw DomainError("sample_positions needs N >= 2 and sigma > 0");
    }
    // Redraw an atom that lands within kCoincidenceDistance of an earlier
    // one; rejecting whole samples never terminates at N ~ 300.
    Rng rng(seed);
    AtomPositions out;
    out.z.reserve(static_cast<std::size_t>(config.atom_count));
    while (static_cast<int>(out.z.size()) < config.atom_count) {
        const double z = config.sigma * rng.normal();
        const bool clash = std::any_of(out.z.begin(), out.z.end(), [z](double w) {
            return std::abs(z - w) < kCoincidenceDistance;
        });
        if (!clash) out.z.push_back(z);
    }
    return out;
}

std::size_t pair_index(int atom_count, int j, int k) {
    // Pairs (0,1),(0,2),...,(0,N-1),(1,2),...
    const auto n = static_cast<std::size_t>(atom_count);
    const auto jj = static_cast<std::size_t>(j);
    return jj * n - jj * (jj + 1) / 2 + static_cast<std::size_t>(k - j - 1);
}

std::vector<double> pair_shifts(const AtomPositions& positions, double c6) {
    const auto& z = positions.z;
    std::vector<double> out;
    out.reserve(z.size() * (z.size() - 1) / 2);
    for (std::size_t j = 0; j < z.size(); ++j) {
        for (std::size_t k = j + 1; k < z.size(); ++k) {
            const double d = std::abs(z[j] - z[k]);
            if (!(d > 0.0)) {
                throw DomainError("coincident atoms " + std::to_string(j) + " and " +
                                  std::to_string(k) + "; resample the geometry");
            }
            const double d3 = d * d * d;
            out.push_back(c6 / (d3 * d3));
        }
    }
    return out;
}

namespace {

BlockadeSummary finish_summary(double mean_shift, double mean_shift_sq, double p_double,
                               int atom_count, double rabi) {
    const double n = static_cast<double>(atom_count);
    BlockadeSummary s;
    s.mean_shift = mean_shift;
    s.mean_shift_sq = mean_shift_sq;
    s.saturation = 1.0 + mean_shift * mean_shift * rabi * rabi / (4.0 * n * n * n);
    s.p_single = 1.0 / s.saturation;
    s.p_double = p_double;
    s.freq_shift = rabi * rabi * mean_shift / n;
    s.pi_time = units::kPi / (2.0 * std::sqrt(n * s.saturation) * rabi);
    return s;
}

void check_summary_inputs(int atom_count, double rabi) {
    if (atom_count < 2) {
        throw DomainError("blockade summary needs N >= 2");
    }
    if (!(rabi > 0.0)) {
        throw DomainError("blockade summary needs a positive Rabi frequency");
    }
}

}  // namespace

BlockadeSummary blockade_summary(std::span<const double> shifts, int atom_count, double rabi) {
    check_summary_inputs(atom_count, rabi);
    double inv = 0.0;
    double inv_sq = 0.0;
    for (double d : shifts) {
        if (d == 0.0 || std::isnan(d)) {
            throw DomainError("pair shift must be non-zero");
        }
        if (std::isinf(d)) {
            continue;
        }
        inv += 1.0 / d;
        inv_sq += 1.0 / (d * d);
    }
    const double p_double = inv_sq * rabi * rabi / static_cast<double>(atom_count);
    return finish_summary(inv, inv_sq, p_double, atom_count, rabi);
}

BlockadeSummary blockade_summary_mean_shift(double mean_blockade_shift, int atom_count,
                                            double rabi) {
    check_summary_inputs(atom_count, rabi);
    if (mean_blockade_shift == 0.0 || std::isnan(mean_blockade_shift)) {
        throw DomainError("mean blockade shift must be non-zero");
    }
    const double n = static_cast<double>(atom_count);
    const double pairs = n * (n - 1.0) / 2.0;
    const double inv = pairs / mean_blockade_shift;
    const double inv_sq = pairs / (mean_blockade_shift * mean_blockade_shift);
    const double rabi_n_sq = n * rabi * rabi;
    const double p_double =
        rabi_n_sq * (n - 1.0) / (2.0 * n * mean_blockade_shift * mean_blockade_shift);
    return finish_summary(inv, inv_sq, p_double, atom_count, rabi);
}

double rabi_population(double t, int atom_count, double rabi, double saturation) {
    if (saturation < 1.0 || t < 0.0) {
        throw DomainError("rabi_population needs l >= 1 and t >= 0");
    }
    const double s = std::sin(std::sqrt(atom_count * saturation) * rabi * t);
    return s * s / saturation;
}

double single_qubit_fidelity(double p_double) {
    if (p_double < 0.0 || p_double > 1.0) {
        throw DomainError("P2 must lie in [0, 1]");
    }
    return std::exp(-2.0 * p_double);
}

double CollectiveAmplitudes::ground_population() const { return std::norm(ground); }

double CollectiveAmplitudes::single_population() const {
    double p = 0.0;
    for (const cd& c : single) p += std::norm(c);
    return p;
}

double CollectiveAmplitudes::pair_population() const {
    double p = 0.0;
    for (const cd& c : pair) p += std::norm(c);
    return p;
}

double CollectiveAmplitudes::norm_squared() const {
    return ground_population() + single_population() + pair_population();
}

namespace {

// Layout: [ground | singles (N) | pairs (N(N-1)/2)].
class AmplitudeSystem {
   public:
    AmplitudeSystem(std::span<const double> shifts, int atom_count, double rabi)
        : n_(atom_count), rabi_(rabi), shifts_(shifts.begin(), shifts.end()) {
        pairs_.reserve(shifts_.size());
        for (int j = 0; j < n_; ++j) {
            for (int k = j + 1; k < n_; ++k) {
                pairs_.push_back({j, k});
            }
        }
    }

    std::size_t size() const { return 1 + static_cast<std::size_t>(n_) + shifts_.size(); }

    /// Row-sum bound on the generator; the RK4 substep is kept below
    /// 0.5 / bound.
    double generator_bound() const {
        double bound = rabi_ * n_;
        for (double d : shifts_) {
            if (std::isfinite(d)) bound = std::max(bound, rabi_ + std::abs(d));
        }
        return bound;
    }

    void derivative(const std::vector<cd>& c, std::vector<cd>& out) const {
        const std::size_t single0 = 1;
        const std::size_t pair0 = 1 + static_cast<std::size_t>(n_);
        cd sum_single = 0.0;
        for (int j = 0; j < n_; ++j) sum_single += c[single0 + j];
        out[0] = rabi_ * sum_single;
        for (int j = 0; j < n_; ++j) out[single0 + j] = -rabi_ * c[0];
        const cd minus_i(0.0, -1.0);
        for (std::size_t p = 0; p < shifts_.size(); ++p) {
            const double d = shifts_[p];
            if (!std::isfinite(d)) {
                out[pair0 + p] = 0.0;
                continue;
            }
            const auto [j, k] = pairs_[p];
            out[single0 + j] += rabi_ * c[pair0 + p];
            out[pair0 + p] = -rabi_ * c[single0 + j] + minus_i * d * c[pair0 + p];
        }
    }

    void rk4_step(std::vector<cd>& y, double h) {
        const std::size_t m = y.size();
        k1_.resize(m);
        k2_.resize(m);
        k3_.resize(m);
        k4_.resize(m);
        tmp_.resize(m);
        derivative(y, k1_);
        for (std::size_t i = 0; i < m; ++i) tmp_[i] = y[i] + 0.5 * h * k1_[i];
        derivative(tmp_, k2_);
        for (std::size_t i = 0; i < m; ++i) tmp_[i] = y[i] + 0.5 * h * k2_[i];
        derivative(tmp_, k3_);
        for (std::size_t i = 0; i < m; ++i) tmp_[i] = y[i] + h * k3_[i];
        derivative(tmp_, k4_);
        for (std::size_t i = 0; i < m; ++i) {
            y[i] += h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
        }
    }

    void advance(std::vector<cd>& y, double interval, double max_step) {
        const auto steps = static_cast<long>(std::ceil(interval / max_step - 1e-12));
        const double h = interval / static_cast<double>(std::max(1L, steps));
        for (long s = 0; s < std::max(1L, steps); ++s) rk4_step(y, h);
    }

    int atoms() const { return n_; }

   private:
    int n_;
    double rabi_;
    std::vector<double> shifts_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<cd> k1_, k2_, k3_, k4_, tmp_;
};

TrajectorySample sample_of(double t, const std::vector<cd>& y, int n) {
    TrajectorySample s;
    s.t = t;
    s.ground_population = std::norm(y[0]);
    for (int j = 0; j < n; ++j) s.single_population += std::norm(y[1 + j]);
    for (std::size_t p = 1 + n; p < y.size(); ++p) s.pair_population += std::norm(y[p]);
    s.norm = std::sqrt(s.ground_population + s.single_population + s.pair_population);
    return s;
}

// y(t) = exp(-i H t) y(0) with H = i A Hermitian; A is the generator above.
AmplitudeTrajectory propagate_spectral(std::span<const double> shifts, int n, double rabi,
                                       double duration, double dt,
                                       const IntegratorOptions& options) {
    const std::size_t pair0 = 1 + static_cast<std::size_t>(n);
    const std::size_t dim = pair0 + shifts.size();
    const double cutoff = options.blockade_cutoff * std::max(rabi, 1e-300);
    // compact index over the components that can ever be populated
    std::vector<long> slot(dim, -1);
    long active = 0;
    for (std::size_t i = 0; i < pair0; ++i) slot[i] = active++;
    for (std::size_t p = 0; p < shifts.size(); ++p) {
        if (std::isfinite(shifts[p]) && std::abs(shifts[p]) <= cutoff) slot[pair0 + p] = active++;
    }
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(active, active);
    const cd i_rabi(0.0, rabi);
    for (int j = 0; j < n; ++j) {
        h(0, 1 + j) = i_rabi;
        h(1 + j, 0) = -i_rabi;
    }
    std::size_t p = 0;
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k, ++p) {
            const long s = slot[pair0 + p];
            if (s < 0) continue;
            h(1 + j, s) = i_rabi;
            h(s, 1 + j) = -i_rabi;
            h(s, s) = shifts[p];
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw NumericalError("generator diagonalisation failed");
    const Eigen::MatrixXcd& v = es.eigenvectors();
    const Eigen::VectorXcd w = v.adjoint().col(0);  // V^dagger e_0

    AmplitudeTrajectory out;
    out.method = "spectral";
    out.substep = dt;
    std::vector<cd> y(dim, 0.0);
    auto state_at = [&](double t) {
        Eigen::VectorXcd phased(active);
        for (long m = 0; m < active; ++m) phased(m) = std::polar(1.0, -es.eigenvalues()(m) * t) * w(m);
        const Eigen::VectorXcd c = v * phased;
        for (std::size_t i = 0; i < dim; ++i) y[i] = slot[i] < 0 ? cd(0.0) : c(slot[i]);
    };
    const auto intervals = static_cast<long>(std::ceil(duration / dt - 1e-9));
    for (long i = 0; i <= intervals; ++i) {
        const double t = std::min(static_cast<double>(i) * dt, duration);
        if (i > 0 && t <= out.samples.back().t) break;
        state_at(t);
        TrajectorySample s = sample_of(t, y, n);
        if (!std::isfinite(s.norm)) throw NumericalError("spectral propagation produced non-finite values");
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(s.norm - 1.0));
        out.samples.push_back(s);
    }
    out.final_state.ground = y[0];
    out.final_state.single.assign(y.begin() + 1, y.begin() + 1 + n);
    out.final_state.pair.assign(y.begin() + 1 + n, y.end());
    return out;
}

}  // namespace

AmplitudeTrajectory integrate_amplitudes(std::span<const double> shifts, int atom_count,
                                         double rabi, double duration, double dt,
                                         const IntegratorOptions& options) {
    if (atom_count < 1) {
        throw DomainError("integrate_amplitudes needs at least one atom");
    }
    if (atom_count > options.max_atoms) {
        throw CapabilityError("amplitude integration supports at most " +
                              std::to_string(options.max_atoms) + " atoms (got " +
                              std::to_string(atom_count) +
                              "); use the closed-form blockade summary for larger ensembles");
    }
    const auto expected_pairs =
        static_cast<std::size_t>(atom_count) * static_cast<std::size_t>(atom_count - 1) / 2;
    if (shifts.size() != expected_pairs) {
        throw UsageError("expected " + std::to_string(expected_pairs) + " pair shifts, got " +
                         std::to_string(shifts.size()));
    }
    if (!(dt > 0.0) || duration < 0.0) {
        throw DomainError("integrate_amplitudes needs dt > 0 and duration >= 0");
    }
    if (rabi < 0.0) {
        throw DomainError("Rabi frequency must be non-negative");
    }

    AmplitudeSystem system(shifts, atom_count, rabi);
    const double bound = system.generator_bound();
    if (duration * bound / 0.5 > options.max_rk_substeps) {
        return propagate_spectral(shifts, atom_count, rabi, duration, dt, options);
    }
    std::vector<cd> y(system.size(), 0.0);
    y[0] = 1.0;

    double max_step = bound > 0.0 ? std::min(dt, 0.5 / bound) : dt;

    AmplitudeTrajectory out;
    out.samples.push_back(sample_of(0.0, y, atom_count));

    const auto intervals = static_cast<long>(std::ceil(duration / dt - 1e-9));
    std::vector<cd> coarse;
    for (long i = 0; i < intervals; ++i) {
        const double t0 = static_cast<double>(i) * dt;
        const double interval = std::min(dt, duration - t0);
        if (interval <= 0.0) break;
        if (i % std::max(1, options.check_stride) == 0) {
            // Step doubling: compare one pass at the current substep with
            // two half-size passes; shrink until the local error is small.
            while (true) {
                coarse = y;
                system.advance(coarse, interval, max_step);
                std::vector<cd> fine = y;
                system.advance(fine, interval, 0.5 * max_step);
                double err = 0.0;
                for (std::size_t k = 0; k < y.size(); ++k) {
                    err = std::max(err, std::abs(fine[k] - coarse[k]) / 15.0);
                }
                if (!std::isfinite(err)) {
                    throw NumericalError("amplitude integration diverged at t = " +
                                         std::to_string(t0));
                }
                if (err <= options.tolerance) {
                    y = std::move(fine);
                    break;
                }
                max_step *= 0.5;
                if (max_step < 1e-14 * std::max(dt, 1e-300)) {
                    throw NumericalError("integrator step underflow at t = " +
                                         std::to_string(t0));
                }
            }
        } else {
            system.advance(y, interval, max_step);
        }
        TrajectorySample s = sample_of(t0 + interval, y, atom_count);
        if (!std::isfinite(s.norm)) {
            throw NumericalError("amplitude integration produced non-finite values");
        }
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(s.norm - 1.0));
        out.samples.push_back(s);
    }

    out.substep = max_step;
    out.final_state.ground = y[0];
    out.final_state.single.assign(y.begin() + 1, y.begin() + 1 + atom_count);
    out.final_state.pair.assign(y.begin() + 1 + atom_count, y.end());
    return out;
}

std::string trajectory_csv(const AmplitudeTrajectory& trajectory) {
    std::ostringstream os;
    os.precision(12);
    os << "t,ground,single,double,norm\n";
    for (const auto& s : trajectory.samples) {
        os << s.t << ',' << s.ground_population << ',' << s.single_population << ','
           << s.pair_population << ',' << s.norm << '\n';
    }
    return os.str();
}

}  // namespace blockade
