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
/// The cluster scheme's success operator at delta = 1/3 (every cluster must pass):
/// Pi = mean over regular partitions of prod_s sum_m p_m (1 + S_{s,m})/2,
/// where S_{s,m} is the stabilizer measured by setting m on cluster s.
/// P[success] = <psi|Pi|psi> for any input.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "sv/dense.hpp"
#include "sv/partitions.hpp"
#include "sv/protocols.hpp"

namespace sv {

namespace detail {

/// The three stabilizers of the cluster starting at 1-based `start`.
inline std::array<PauliString, 3> cluster_stabilizers(std::size_t n, std::size_t start) {
    const auto qs = Cluster{start}.qubits(n);
    std::array<PauliString, 3> out;
    for (std::size_t m = 0; m < 3; ++m) {
        PauliString p(n);
        for (std::size_t j = 0; j < kClusterSize; ++j) {
            p.ops[qs[j]] = pauli_from_char(kClusterSettings[m][j]);
        }
        // The measured stabilizer ignores the Z on the cluster end that is
        // not part of the checked parity.
        if (m == 0) {
            p.ops[qs[3]] = Pauli::I;
        } else if (m == 1) {
            p.ops[qs[0]] = Pauli::I;
        }
        out[m] = std::move(p);
    }
    return out;
}

}  // namespace detail

/// Pi |v> without forming Pi.
inline std::vector<cplx> apply_success_operator(std::size_t n, std::size_t l, std::span<const cplx> v,
                                                const std::array<double, 3> &probs = {1.0 / 3, 1.0 / 3, 1.0 / 3}) {
    const auto parts = enumerate_regular(n, l);
    if (parts.empty()) {
        throw ConfigError("apply_success_operator: no regular partitions");
    }
    std::vector<cplx> out(v.size(), 0.0);
    std::vector<cplx> cur;
    std::vector<cplx> tmp(v.size());
    for (const auto &part : parts) {
        cur.assign(v.begin(), v.end());
        for (std::size_t t : part.starts) {
            const auto stabs = detail::cluster_stabilizers(n, t);
            std::vector<cplx> acc(v.size());
            for (std::size_t i = 0; i < acc.size(); ++i) {
                acc[i] = 0.5 * cur[i];
            }
            for (std::size_t m = 0; m < 3; ++m) {
                apply_pauli(stabs[m], cur, tmp);
                for (std::size_t i = 0; i < acc.size(); ++i) {
                    acc[i] += 0.5 * probs[m] * tmp[i];
                }
            }
            cur = std::move(acc);
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += cur[i];
        }
    }
    const double inv = 1.0 / static_cast<double>(parts.size());
    for (auto &x : out) {
        x *= inv;
    }
    return out;
}

/// Exact success probability <psi|Pi|psi> of the cluster scheme at delta = 1/3.
inline double success_probability_exact(std::size_t l, const PureState &state) {
    const auto pv = apply_success_operator(state.num_qubits(), l, state.amplitudes());
    return inner_product(state.amplitudes(), pv).real();
}

/// Pi as a dense real matrix (all cluster stabilizers are real).
inline Eigen::MatrixXd success_operator_matrix(std::size_t n, std::size_t l) {
    require_dense(n);
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXd m(dim, dim);
    std::vector<cplx> e(dim, 0.0);
    for (std::size_t c = 0; c < dim; ++c) {
        e[c] = 1.0;
        const auto col = apply_success_operator(n, l, e);
        for (std::size_t r = 0; r < dim; ++r) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r].real();
        }
        e[c] = 0.0;
    }
    return m;
}

struct SpectralReport {
    double max_eigenvalue = 0.0;
    double min_eigenvalue = 0.0;
    /// Eigenvalues within 1e-9 of the top one.
    std::size_t top_multiplicity = 0;
    double lcs_expectation = 0.0;
    /// True when the clusters of all regular partitions together cover every
    /// generator Z_{k-1} X_k Z_{k+1}, so that the ring cluster state is the
    /// only state passing with certainty.
    bool stabilizers_covered = false;
};

inline SpectralReport success_operator_check(std::size_t n, std::size_t l) {
    const Eigen::MatrixXd pi = success_operator_matrix(n, l);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(pi, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    SpectralReport rep;
    rep.min_eigenvalue = ev(0);
    rep.max_eigenvalue = ev(ev.size() - 1);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > rep.max_eigenvalue - 1e-9) {
            ++rep.top_multiplicity;
        }
    }
    rep.lcs_expectation = success_probability_exact(l, make_lcs_dense(n));

    // Cluster at t (1-based) measures generators centred on positions t+1, t+2.
    std::vector<bool> covered(n, false);
    for (const auto &part : enumerate_regular(n, l)) {
        for (std::size_t t : part.starts) {
            covered[ring_position(n, t, 1) - 1] = true;
            covered[ring_position(n, t, 2) - 1] = true;
        }
    }
    rep.stabilizers_covered = true;
    for (bool c : covered) {
        rep.stabilizers_covered = rep.stabilizers_covered && c;
    }
    return rep;
}

}  // namespace sv
