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
/// Maximizing observable expectations over pure product states.
///
/// On a product state an observable sum_t c_t P_t evaluates to
/// sum_t c_t prod_q r_q[P_t(q)], with r_q the Bloch vector of qubit q and
/// r_q[I] = 1. The objective is affine in each r_q separately, so the best
/// single-qubit update given all others is r_q = c / |c| in closed form.
/// Mixed separable states cannot do better than pure products because the
/// objective is linear in the state.

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "sv/dense.hpp"
#include "sv/local_hamiltonian.hpp"
#include "sv/rng.hpp"

namespace sv {

inline constexpr double kPi = 3.14159265358979323846;

using Bloch = std::array<double, 3>;

inline Bloch bloch_from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// Per-qubit Bloch angles theta in [0, pi], phi in [0, 2 pi).
struct ProductAnsatz {
    std::vector<double> theta;
    std::vector<double> phi;

    std::size_t size() const {
        return theta.size();
    }

    Bloch bloch(std::size_t q) const {
        return bloch_from_angles(theta[q], phi[q]);
    }

    std::vector<PureState> states() const {
        std::vector<PureState> out;
        out.reserve(size());
        for (std::size_t q = 0; q < size(); ++q) {
            out.push_back(PureState::from_bloch(theta[q], phi[q]));
        }
        return out;
    }
};

enum class OracleMethod { grid, seesaw };

struct OracleResult {
    double value = 0.0;
    ProductAnsatz maximizer;
    /// Objective after each see-saw sweep of the winning restart.
    std::vector<double> sweep_values;
};

struct OracleOptions {
    /// See-saw restarts.
    std::size_t restarts = 64;
    std::size_t max_sweeps = 10000;
    /// Grid resolution r: theta on 2r steps over [0, pi], phi on 4r steps over
    /// [0, 2 pi). r = 100 is the 200 x 400 grid. Lowered automatically so that
    /// points^(qubits - 1) stays within grid_budget.
    std::size_t grid_resolution = 100;
    double grid_budget = 2e7;
    /// Qubit limits of the public entry points.
    std::size_t grid_max_qubits = 6;
    std::size_t seesaw_max_qubits = 12;
};

namespace detail {

struct Factor {
    std::size_t qubit;
    std::size_t axis;  // 0 = X, 1 = Y, 2 = Z
};

struct CompiledTerm {
    double coef;
    std::vector<Factor> factors;
};

inline std::vector<CompiledTerm> compile(const PauliObservable &obs) {
    std::vector<CompiledTerm> out;
    out.reserve(obs.terms.size());
    for (const auto &t : obs.terms) {
        CompiledTerm ct{t.coefficient, {}};
        for (std::size_t q = 0; q < t.ops.size(); ++q) {
            if (t.ops[q] != Pauli::I) {
                ct.factors.push_back({q, basis_index(t.ops[q])});
            }
        }
        out.push_back(std::move(ct));
    }
    return out;
}

inline double evaluate(const std::vector<CompiledTerm> &terms, const std::vector<Bloch> &r) {
    double s = 0.0;
    for (const auto &t : terms) {
        double p = t.coef;
        for (const auto &f : t.factors) {
            p *= r[f.qubit][f.axis];
        }
        s += p;
    }
    return s;
}

inline std::pair<double, double> angles_of(const Bloch &r) {
    const double nz = std::max(-1.0, std::min(1.0, r[2]));
    const double theta = std::acos(nz);
    double phi = std::atan2(r[1], r[0]);
    if (phi < 0.0) {
        phi += 2.0 * kPi;
    }
    if (phi >= 2.0 * kPi) {
        phi = 0.0;
    }
    return {theta, phi};
}

inline ProductAnsatz to_ansatz(const std::vector<Bloch> &r) {
    ProductAnsatz a;
    for (const auto &b : r) {
        const auto [t, p] = angles_of(b);
        a.theta.push_back(t);
        a.phi.push_back(p);
    }
    return a;
}

inline std::vector<Bloch> from_ansatz(const ProductAnsatz &a) {
    std::vector<Bloch> r;
    for (std::size_t q = 0; q < a.size(); ++q) {
        r.push_back(a.bloch(q));
    }
    return r;
}

/// Unconstrained see-saw maximization (no qubit limit).
inline OracleResult seesaw_maximize(const PauliObservable &obs, RandomStream &rng, const OracleOptions &opt) {
    const std::size_t n = obs.num_qubits;
    const auto terms = compile(obs);
    // Terms touching each qubit.
    std::vector<std::vector<std::size_t>> touching(n);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        for (const auto &f : terms[t].factors) {
            touching[f.qubit].push_back(t);
        }
    }
    OracleResult best;
    best.value = -std::numeric_limits<double>::infinity();
    const std::size_t restarts = std::max<std::size_t>(1, opt.restarts);
    for (std::size_t rs = 0; rs < restarts; ++rs) {
        std::vector<Bloch> r(n);
        for (auto &b : r) {
            const auto [t, p] = rng.sphere_angles();
            b = bloch_from_angles(t, p);
        }
        std::vector<double> sweeps;
        double f = evaluate(terms, r);
        sweeps.push_back(f);
        for (std::size_t sweep = 0; sweep < opt.max_sweeps; ++sweep) {
            for (std::size_t q = 0; q < n; ++q) {
                Bloch c{0.0, 0.0, 0.0};
                for (std::size_t ti : touching[q]) {
                    const auto &t = terms[ti];
                    double p = t.coef;
                    std::size_t axis = 0;
                    for (const auto &fa : t.factors) {
                        if (fa.qubit == q) {
                            axis = fa.axis;
                        } else {
                            p *= r[fa.qubit][fa.axis];
                        }
                    }
                    c[axis] += p;
                }
                const double norm = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
                if (norm > 1e-300) {
                    r[q] = {c[0] / norm, c[1] / norm, c[2] / norm};
                }
            }
            const double next = evaluate(terms, r);
            sweeps.push_back(next);
            const bool converged = next - f <= 1e-14 * (1.0 + std::abs(next));
            f = next;
            if (converged) {
                break;
            }
        }
        if (f > best.value) {
            best.maximizer = to_ansatz(r);
            best.value = evaluate(terms, from_ansatz(best.maximizer));
            best.sweep_values = std::move(sweeps);
        }
    }
    return best;
}

inline std::size_t grid_points(std::size_t r) {
    return (2 * r - 1) * 4 * r + 2;
}

/// Exhaustive grid over all but the last qubit, closed-form optimum for the last.
inline OracleResult grid_maximize(const PauliObservable &obs, const OracleOptions &opt) {
    const std::size_t n = obs.num_qubits;
    const auto terms = compile(obs);
    const std::size_t gridded = n - 1;

    std::size_t res = std::max<std::size_t>(1, opt.grid_resolution);
    while (res > 1 && std::pow(static_cast<double>(grid_points(res)), static_cast<double>(gridded)) > opt.grid_budget) {
        --res;
    }
    // Points in lexicographic (theta, phi) order; the poles carry phi = 0 only.
    std::vector<std::pair<double, double>> pts;
    const std::size_t nt = 2 * res;
    const std::size_t np = 4 * res;
    for (std::size_t i = 0; i <= nt; ++i) {
        const double theta = kPi * static_cast<double>(i) / static_cast<double>(nt);
        if (i == 0 || i == nt) {
            pts.emplace_back(theta, 0.0);
            continue;
        }
        for (std::size_t j = 0; j < np; ++j) {
            pts.emplace_back(theta, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(np));
        }
    }
    std::vector<Bloch> pb;
    pb.reserve(pts.size());
    for (const auto &[t, p] : pts) {
        pb.push_back(bloch_from_angles(t, p));
    }

    std::vector<std::size_t> idx(gridded, 0);
    std::vector<Bloch> r(n, Bloch{0.0, 0.0, 1.0});
    OracleResult best;
    best.value = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_idx;
    Bloch best_last{0.0, 0.0, 1.0};
    while (true) {
        for (std::size_t q = 0; q < gridded; ++q) {
            r[q] = pb[idx[q]];
        }
        double constant = 0.0;
        Bloch c{0.0, 0.0, 0.0};
        for (const auto &t : terms) {
            double p = t.coef;
            std::ptrdiff_t last_axis = -1;
            for (const auto &f : t.factors) {
                if (f.qubit == gridded) {
                    last_axis = static_cast<std::ptrdiff_t>(f.axis);
                } else {
                    p *= r[f.qubit][f.axis];
                }
            }
            if (last_axis < 0) {
                constant += p;
            } else {
                c[static_cast<std::size_t>(last_axis)] += p;
            }
        }
        const double norm = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
        const double value = constant + norm;
        if (value > best.value) {
            best.value = value;
            best_idx = idx;
            best_last = norm > 1e-300 ? Bloch{c[0] / norm, c[1] / norm, c[2] / norm} : Bloch{0.0, 0.0, 1.0};
        }
        // Odometer, last gridded qubit fastest.
        std::size_t q = gridded;
        while (q > 0) {
            --q;
            if (++idx[q] < pts.size()) {
                break;
            }
            idx[q] = 0;
            if (q == 0) {
                q = gridded + 1;
                break;
            }
        }
        if (gridded == 0 || q == gridded + 1) {
            break;
        }
    }
    std::vector<Bloch> rb(n);
    for (std::size_t q = 0; q < gridded; ++q) {
        rb[q] = pb[best_idx[q]];
    }
    rb[gridded] = best_last;
    best.maximizer = to_ansatz(rb);
    best.value = evaluate(terms, from_ansatz(best.maximizer));
    return best;
}

}  // namespace detail

/// Value of `obs` on the product state described by `a`.
inline double product_expectation(const PauliObservable &obs, const ProductAnsatz &a) {
    if (a.size() != obs.num_qubits) {
        throw ConfigError("product_expectation: ansatz size mismatch");
    }
    return detail::evaluate(detail::compile(obs), detail::from_ansatz(a));
}

/// Largest <obs> over pure product states, with its maximizer. The grid
/// method is exhaustive at its resolution; see-saw uses random restarts.
inline OracleResult max_product_expectation(const PauliObservable &obs, OracleMethod method, RandomStream &rng,
                                            const OracleOptions &opt = {}) {
    if (obs.num_qubits == 0) {
        throw ConfigError("max_product_expectation: empty register");
    }
    if (method == OracleMethod::grid) {
        if (obs.num_qubits > opt.grid_max_qubits) {
            throw ConfigError("grid oracle supports at most " + std::to_string(opt.grid_max_qubits) + " qubits");
        }
        return detail::grid_maximize(obs, opt);
    }
    if (obs.num_qubits > opt.seesaw_max_qubits) {
        throw ConfigError("see-saw oracle supports at most " + std::to_string(opt.seesaw_max_qubits) + " qubits");
    }
    return detail::seesaw_maximize(obs, rng, opt);
}

/// min over product states of <H> (total, not per site), by see-saw.
/// Terms sharing sites are optimized jointly since the full H is one objective.
inline OracleResult min_product_energy(const LocalHamiltonian &h, RandomStream &rng, const OracleOptions &opt = {}) {
    h.validate();
    require_dense(h.n_sites);
    auto res = detail::seesaw_maximize(h.to_observable().scaled(-1.0), rng, opt);
    res.value = -res.value;
    for (auto &v : res.sweep_values) {
        v = -v;
    }
    return res;
}

/// Same minimum by exhaustive grid, for small registers.
inline OracleResult min_product_energy_grid(const LocalHamiltonian &h, const OracleOptions &opt = {}) {
    h.validate();
    if (h.n_sites > opt.grid_max_qubits) {
        throw ConfigError("grid oracle supports at most " + std::to_string(opt.grid_max_qubits) + " qubits");
    }
    auto res = detail::grid_maximize(h.to_observable().scaled(-1.0), opt);
    res.value = -res.value;
    return res;
}

}  // namespace sv
