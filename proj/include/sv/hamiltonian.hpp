// Copyright 2026 The sv Authors
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

/// @file
/// The energy scheme: local terms expanded over single-qubit outcome
/// projectors E_{m,i} = (1 + (-1)^i sigma_m)/2, an unbiased single-copy energy
/// estimate from one random Pauli setting per site, and exact ground and
/// product-state energies for the pass threshold.
///
/// Outcome index of one site: x = 2 m + i with m in {0, 1, 2} for X, Y, Z.
/// A term on s sites is stored as a 6^s tensor, first support site most
/// significant.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "sv/bounds.hpp"
#include "sv/dense.hpp"
#include "sv/local_hamiltonian.hpp"
#include "sv/protocols.hpp"
#include "sv/sep_oracle.hpp"

namespace sv {

/// Number of measurement settings per qubit (X, Y, Z).
inline constexpr std::size_t kSettings = 3;
inline constexpr std::size_t kOutcomesPerSite = 2 * kSettings;

struct DecompositionTensor {
    std::vector<std::size_t> sites;
    std::vector<double> h;

    double at(const std::vector<std::size_t> &x) const {
        std::size_t idx = 0;
        for (std::size_t v : x) {
            idx = idx * kOutcomesPerSite + v;
        }
        return h.at(idx);
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : h) {
            m = std::max(m, std::abs(v));
        }
        return m;
    }
};

/// Factor-wise canonical expansion: I -> (1/3) sum_x E_x, sigma_m -> E_{m,0} - E_{m,1}.
inline DecompositionTensor decompose_term(const LocalTerm &term) {
    const std::size_t s = term.sites.size();
    if (s == 0) {
        throw ConfigError("decompose_term: empty support");
    }
    std::size_t size = 1;
    for (std::size_t j = 0; j < s; ++j) {
        size *= kOutcomesPerSite;
    }
    DecompositionTensor t{term.sites, std::vector<double>(size, 0.0)};
    for (const auto &[text, coef] : term.paulis) {
        if (text.size() != s) {
            throw ConfigError("decompose_term: Pauli string '" + text + "' does not match its support");
        }
        const PauliString p = PauliString::parse(text);
        std::vector<std::array<double, kOutcomesPerSite>> factors(s);
        for (std::size_t j = 0; j < s; ++j) {
            auto &f = factors[j];
            f.fill(0.0);
            if (p[j] == Pauli::I) {
                f.fill(1.0 / static_cast<double>(kSettings));
            } else {
                const std::size_t m = basis_index(p[j]);
                f[2 * m] = 1.0;
                f[2 * m + 1] = -1.0;
            }
        }
        for (std::size_t idx = 0; idx < size; ++idx) {
            double v = coef;
            std::size_t rest = idx;
            for (std::size_t j = s; j-- > 0;) {
                v *= factors[j][rest % kOutcomesPerSite];
                rest /= kOutcomesPerSite;
                if (v == 0.0) {
                    break;
                }
            }
            t.h[idx] += v;
        }
    }
    return t;
}

namespace detail {

inline Eigen::Matrix2cd pauli_matrix(Pauli p) {
    Eigen::Matrix2cd m;
    switch (p) {
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, cplx(0, -1), cplx(0, 1), 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
        default:
            m << 1, 0, 0, 1;
    }
    return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// E_{m,i} = (1 + (-1)^i sigma_m)/2.
inline Eigen::Matrix2cd outcome_projector(std::size_t x) {
    const double sign = (x & 1) ? -1.0 : 1.0;
    return 0.5 * (Eigen::Matrix2cd::Identity() + sign * pauli_matrix(basis_from_index(x / 2)));
}

}  // namespace detail

/// Dense operator of a term on its own support (first site most significant).
inline Eigen::MatrixXcd term_matrix(const LocalTerm &term) {
    const std::size_t s = term.sites.size();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(1 << s, 1 << s);
    for (const auto &[text, coef] : term.paulis) {
        const PauliString p = PauliString::parse(text);
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
        for (std::size_t j = 0; j < s; ++j) {
            m = detail::kron(m, detail::pauli_matrix(p[j]));
        }
        out += coef * m;
    }
    return out;
}

/// sum_x h_x E_{x_1} ... E_{x_s}, dense.
inline Eigen::MatrixXcd reconstruct(const DecompositionTensor &t) {
    const std::size_t s = t.sites.size();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(1 << s, 1 << s);
    for (std::size_t idx = 0; idx < t.h.size(); ++idx) {
        if (t.h[idx] == 0.0) {
            continue;
        }
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
        std::size_t rest = idx;
        std::vector<std::size_t> x(s);
        for (std::size_t j = s; j-- > 0;) {
            x[j] = rest % kOutcomesPerSite;
            rest /= kOutcomesPerSite;
        }
        for (std::size_t j = 0; j < s; ++j) {
            m = detail::kron(m, detail::outcome_projector(x[j]));
        }
        out += t.h[idx] * m;
    }
    return out;
}

/// Per-site measurement result: setting index m (0 = X, 1 = Y, 2 = Z) and bit i.
struct SiteOutcome {
    std::size_t setting = 0;
    int bit = 0;
};

/// H_[N] = sum_k 3^{|support_k|} h^(k)[x_k]. For terms on exactly L sites this
/// is 3^L sum_k h^(k); shorter terms padded with identities give the same value.
inline double eval_estimator(const std::vector<DecompositionTensor> &tensors,
                             const std::vector<std::optional<SiteOutcome>> &outcomes) {
    double total = 0.0;
    for (const auto &t : tensors) {
        std::size_t idx = 0;
        double scale = 1.0;
        for (std::size_t s : t.sites) {
            if (s >= outcomes.size() || !outcomes[s]) {
                throw ConfigError("eval_estimator: missing outcome for site " + std::to_string(s));
            }
            const auto &o = *outcomes[s];
            idx = idx * kOutcomesPerSite + 2 * o.setting + static_cast<std::size_t>(o.bit & 1);
            scale *= static_cast<double>(kSettings);
        }
        total += scale * t.h[idx];
    }
    return total;
}

inline double eval_estimator(const std::vector<DecompositionTensor> &tensors, const std::vector<SiteOutcome> &outcomes) {
    std::vector<std::optional<SiteOutcome>> o(outcomes.begin(), outcomes.end());
    return eval_estimator(tensors, o);
}

inline std::vector<DecompositionTensor> decompose(const LocalHamiltonian &h) {
    h.validate();
    std::vector<DecompositionTensor> out;
    out.reserve(h.terms.size());
    for (const auto &t : h.terms) {
        out.push_back(decompose_term(t));
    }
    return out;
}

/// out = H in.
inline void apply_hamiltonian(const PauliObservable &obs, std::span<const cplx> in, std::span<cplx> out) {
    std::fill(out.begin(), out.end(), cplx(0.0));
    std::vector<cplx> tmp(in.size());
    for (const auto &t : obs.terms) {
        apply_pauli(t.ops, in, tmp);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += t.coefficient * tmp[i];
        }
    }
}

/// Dense matrix of H in the register ordering of dense.hpp.
inline Eigen::MatrixXcd hamiltonian_matrix(const LocalHamiltonian &h) {
    h.validate();
    require_dense(h.n_sites);
    const PauliObservable obs = h.to_observable();
    const std::size_t dim = std::size_t{1} << h.n_sites;
    Eigen::MatrixXcd m(dim, dim);
    std::vector<cplx> e(dim, 0.0);
    std::vector<cplx> col(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        e[c] = 1.0;
        apply_hamiltonian(obs, e, col);
        for (std::size_t r = 0; r < dim; ++r) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r];
        }
        e[c] = 0.0;
    }
    return m;
}

struct GroundState {
    /// Energy per site, E_0 / n.
    double epsilon0 = 0.0;
    double energy = 0.0;
    PureState state;
};

/// Registers up to this size are diagonalized densely; larger ones use Lanczos.
inline constexpr std::size_t kDenseDiagonalizationLimit = 10;

/// Lowest eigenpair by full dense diagonalization.
inline GroundState ground_state_dense(const LocalHamiltonian &h) {
    const Eigen::MatrixXcd m = hamiltonian_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("ground_state_dense: eigensolver failed");
    }
    const Eigen::VectorXcd v = solver.eigenvectors().col(0);
    std::vector<cplx> amps(v.data(), v.data() + v.size());
    GroundState g;
    g.energy = solver.eigenvalues()(0);
    g.epsilon0 = g.energy / static_cast<double>(h.n_sites);
    g.state = PureState::normalized(h.n_sites, std::move(amps));
    return g;
}

/// Lowest eigenpair by Lanczos iteration with full reorthogonalization,
/// started from a fixed pseudo-random vector.
inline GroundState ground_state_lanczos(const LocalHamiltonian &h, std::size_t max_iterations = 200,
                                        double tolerance = 1e-12) {
    h.validate();
    require_dense(h.n_sites);
    const PauliObservable obs = h.to_observable();
    const std::size_t dim = std::size_t{1} << h.n_sites;
    const std::size_t kmax = std::min(max_iterations, dim);

    RandomStream rng(0x5EEDULL + h.n_sites);
    std::vector<std::vector<cplx>> basis;
    std::vector<cplx> v(dim);
    for (auto &a : v) {
        a = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
    auto normalize = [](std::vector<cplx> &x) {
        double s = 0.0;
        for (const auto &a : x) {
            s += std::norm(a);
        }
        const double inv = 1.0 / std::sqrt(s);
        for (auto &a : x) {
            a *= inv;
        }
        return std::sqrt(s);
    };
    normalize(v);
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<cplx> w(dim);
    double previous = std::numeric_limits<double>::infinity();
    Eigen::VectorXd ritz;
    for (std::size_t k = 0; k < kmax; ++k) {
        basis.push_back(v);
        apply_hamiltonian(obs, basis.back(), w);
        alpha.push_back(inner_product(basis.back(), w).real());
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &b : basis) {
                const cplx c = inner_product(b, w);
                for (std::size_t i = 0; i < dim; ++i) {
                    w[i] -= c * b[i];
                }
            }
        }
        const std::size_t m = alpha.size();
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) {
            tri(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = alpha[i];
            if (i + 1 < m) {
                tri(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = beta[i];
                tri(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = beta[i];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri);
        const double lowest = small.eigenvalues()(0);
        ritz = small.eigenvectors().col(0);
        double norm = 0.0;
        for (const auto &a : w) {
            norm += std::norm(a);
        }
        norm = std::sqrt(norm);
        const bool done = std::abs(lowest - previous) < tolerance || norm < 1e-12 || m == kmax;
        previous = lowest;
        if (done) {
            break;
        }
        beta.push_back(norm);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = w[i] / norm;
        }
    }
    std::vector<cplx> amps(dim, 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const double c = ritz(static_cast<Eigen::Index>(j));
        for (std::size_t i = 0; i < dim; ++i) {
            amps[i] += c * basis[j][i];
        }
    }
    GroundState g;
    g.state = PureState::normalized(h.n_sites, std::move(amps));
    g.energy = expectation(g.state, obs);
    g.epsilon0 = g.energy / static_cast<double>(h.n_sites);
    return g;
}

inline GroundState ground_state(const LocalHamiltonian &h) {
    h.validate();
    require_dense(h.n_sites);
    return h.n_sites <= kDenseDiagonalizationLimit ? ground_state_dense(h) : ground_state_lanczos(h);
}

/// Smallest per-site energy found over product states (an upper bound on eps_s).
inline double separable_energy(const LocalHamiltonian &h, RandomStream &rng, std::size_t restarts = 64) {
    OracleOptions opt;
    opt.restarts = restarts;
    return min_product_energy(h, rng, opt).value / static_cast<double>(h.n_sites);
}

struct GapReport {
    double epsilon0 = 0.0;
    double epsilon_s = 0.0;
    double g_e = 0.0;
    /// max_{k,x} |h^(k)_x| with every term padded to L sites.
    double a = 0.0;
    /// max_k |<target|H^(k)|target>|.
    double b = 0.0;
    double h_max = 0.0;
    double kappa2 = 0.0;
    double beta2 = 0.0;
    std::size_t n_sites = 0;
    std::size_t locality = 0;
    std::size_t n_terms = 0;
    /// Per-site product-state minimizer found for epsilon_s.
    ProductAnsatz separable_minimizer;

    /// beta^2 times the number of terms: the variance bound of H_[N] on the target.
    double variance_bound() const {
        return beta2 * static_cast<double>(n_terms);
    }

    /// n^2 / n_terms; equals n when there is one term per site.
    double effective_size() const {
        return static_cast<double>(n_sites) * static_cast<double>(n_sites) / static_cast<double>(n_terms);
    }
};

/// kappa^2 for the bounded-differences bound. Changing the outcome of site j
/// moves H_[N] by at most 2 d_j M^L h_max, d_j the number of terms on j, so
/// P <= exp(-n kappa^2 delta^2) with kappa^2 = n / (2 M^{2L} h_max^2 sum_j d_j^2).
/// Equals 1 / (2 M^{2L} L^2 h_max^2) when every site lies in exactly L terms.
inline double kappa_squared(const LocalHamiltonian &h, double h_max) {
    std::vector<double> deg(h.n_sites, 0.0);
    for (const auto &t : h.terms) {
        for (auto s : t.sites) {
            deg[s] += 1.0;
        }
    }
    double sum_sq = 0.0;
    for (double d : deg) {
        sum_sq += d * d;
    }
    const double mean_sq = sum_sq / static_cast<double>(h.n_sites);
    const double l = std::sqrt(mean_sq);
    return mcdiarmid_constants(static_cast<long long>(kSettings), static_cast<long long>(h.locality), h_max) *
           static_cast<double>(h.locality * h.locality) / (l * l);
}

/// Gap and concentration constants. B is evaluated on `target`, defaulting to
/// the ground state.
inline GapReport compute_gap_report(const LocalHamiltonian &h, RandomStream &rng,
                                    const std::optional<PureState> &target = std::nullopt,
                                    std::size_t restarts = 64) {
    h.validate();
    const auto tensors = decompose(h);
    const GroundState gs = ground_state(h);
    GapReport r;
    r.n_sites = h.n_sites;
    r.locality = h.locality;
    r.n_terms = h.terms.size();
    r.epsilon0 = gs.epsilon0;
    OracleOptions opt;
    opt.restarts = restarts;
    const OracleResult sep = min_product_energy(h, rng, opt);
    r.epsilon_s = sep.value / static_cast<double>(h.n_sites);
    r.separable_minimizer = sep.maximizer;
    r.g_e = r.epsilon_s - r.epsilon0;
    for (const auto &t : tensors) {
        const double pad = std::pow(static_cast<double>(kSettings),
                                    static_cast<double>(t.sites.size()) - static_cast<double>(h.locality));
        r.a = std::max(r.a, t.max_abs() * pad);
    }
    r.h_max = r.a;
    const PureState &psi = target ? *target : gs.state;
    if (psi.num_qubits() != h.n_sites) {
        throw ConfigError("compute_gap_report: target size mismatch");
    }
    for (std::size_t k = 0; k < h.terms.size(); ++k) {
        r.b = std::max(r.b, std::abs(expectation(psi, h.term_observable(k))));
    }
    r.kappa2 = r.h_max > 0.0 ? kappa_squared(h, r.h_max) : std::numeric_limits<double>::infinity();
    r.beta2 = beta_squared(static_cast<long long>(kSettings), static_cast<long long>(h.locality), r.a, r.b);
    return r;
}

/// A Hamiltonian with its tensors and gap report, ready for trials.
struct HamiltonianScheme {
    LocalHamiltonian h;
    std::vector<DecompositionTensor> tensors;
    GapReport gap;

    static HamiltonianScheme build(LocalHamiltonian h, RandomStream &rng,
                                   const std::optional<PureState> &target = std::nullopt) {
        HamiltonianScheme s;
        s.tensors = decompose(h);
        s.gap = compute_gap_report(h, rng, target);
        s.h = std::move(h);
        return s;
    }

    /// Pass iff H_[N] <= n (eps_s - delta).
    bool passes(double energy, double delta) const {
        return energy <= static_cast<double>(h.n_sites) * (gap.epsilon_s - delta) + kThresholdSlack;
    }

    /// eps_s - H_[N] / n.
    double delta_hat(double energy) const {
        return gap.epsilon_s - energy / static_cast<double>(h.n_sites);
    }
};

/// One uniformly random Pauli setting per site, all sites measured in order.
inline TrialRecord run_hamiltonian_trial(const HamiltonianScheme &scheme, const StateHandle &source, double delta,
                                         RandomStream &rng) {
    if (!(delta > 0.0 && delta < scheme.gap.g_e)) {
        throw ConfigError("energy scheme needs 0 < delta < g_E = " + format12(scheme.gap.g_e));
    }
    const std::size_t n = scheme.h.n_sites;
    if (source.num_qubits() != n) {
        throw ConfigError("energy trial: source has " + std::to_string(source.num_qubits()) + " qubits, need " +
                          std::to_string(n));
    }
    TrialRecord r;
    r.scheme = Scheme::hamiltonian;
    r.bases.resize(n);
    std::vector<SiteOutcome> out(n);
    for (std::size_t q = 0; q < n; ++q) {
        out[q].setting = static_cast<std::size_t>(rng.index(kSettings));
        r.bases[q] = to_char(basis_from_index(out[q].setting));
        r.settings.emplace_back(1, r.bases[q]);
    }
    Preparation prep = source.prepare(rng);
    r.branch = prep.branch();
    r.outcomes.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        out[q].bit = prep.measure(q, basis_from_index(out[q].setting), rng);
        r.outcomes[q] = static_cast<char>('0' + out[q].bit);
    }
    r.energy = eval_estimator(scheme.tensors, out);
    r.delta_hat = scheme.delta_hat(r.energy);
    r.success = scheme.passes(r.energy, delta);
    return r;
}

}  // namespace sv
