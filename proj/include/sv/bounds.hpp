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
/// Certificate mathematics: how likely a separable input is to pass a test.
///
/// All logarithms are natural.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "sv/common.hpp"

namespace sv {

/// Per-unit success ceiling of separable inputs in the singlet and cluster schemes.
inline constexpr double kSeparableCeiling = 2.0 / 3.0;

/// Binary relative entropy D(x||y) with 0 log 0 = 0.
inline double kl_divergence(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ConfigError("kl_divergence: x must lie in [0, 1]");
    }
    if (!(y > 0.0 && y < 1.0)) {
        throw ConfigError("kl_divergence: y must lie in (0, 1)");
    }
    double d = 0.0;
    if (x > 0.0) {
        d += x * std::log(x / y);
    }
    if (x < 1.0) {
        d += (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
    }
    return d < 0.0 ? 0.0 : d;
}

/// exp(-D(p+delta||p) k): the largest probability that k independent 0/1
/// variables, each with mean at most p, sum to at least (p + delta) k.
inline double chernoff_separable_bound(double delta, long long k, double p = kSeparableCeiling) {
    if (!(delta > 0.0)) {
        throw ConfigError("chernoff_separable_bound: delta must be positive");
    }
    if (k < 1) {
        throw ConfigError("chernoff_separable_bound: k must be positive");
    }
    // Tolerate rounding in p + delta that lands a few ulps above 1.
    double q = p + delta;
    if (q > 1.0 + 1e-12) {
        throw ConfigError("chernoff_separable_bound: p + delta exceeds 1");
    }
    q = std::min(q, 1.0);
    return clamp01(std::exp(-kl_divergence(q, p) * static_cast<double>(k)));
}

/// kappa^2 = 1 / (2 M^{2L} L^2 h_max^2).
inline double mcdiarmid_constants(long long m_settings, long long locality, double h_max) {
    if (m_settings < 1 || locality < 1 || !(h_max > 0.0)) {
        throw ConfigError("mcdiarmid_constants: arguments must be positive");
    }
    const double m2l = std::pow(static_cast<double>(m_settings), 2.0 * static_cast<double>(locality));
    const double l = static_cast<double>(locality);
    return 1.0 / (2.0 * m2l * l * l * h_max * h_max);
}

/// exp(-n kappa^2 delta^2).
inline double mcdiarmid_separable_bound(long long n, double delta, double kappa2) {
    if (!(delta > 0.0)) {
        throw ConfigError("mcdiarmid_separable_bound: delta must be positive");
    }
    if (n < 1 || !(kappa2 > 0.0)) {
        throw ConfigError("mcdiarmid_separable_bound: n and kappa^2 must be positive");
    }
    return clamp01(std::exp(-static_cast<double>(n) * kappa2 * delta * delta));
}

/// beta^2 = 2L (M^{2L} A^2 + B^2), the per-site variance bound of the energy estimator.
inline double beta_squared(long long m_settings, long long locality, double a, double b) {
    if (m_settings < 1 || locality < 1) {
        throw ConfigError("beta_squared: M and L must be positive");
    }
    const double m2l = std::pow(static_cast<double>(m_settings), 2.0 * static_cast<double>(locality));
    return 2.0 * static_cast<double>(locality) * (m2l * a * a + b * b);
}

/// Chebyshev lower bound max(0, 1 - beta^2 / (n (g_e - delta)^2)) on the
/// ground state's success probability.
inline double ground_state_success_bound(double n, double g_e, double delta, double beta2) {
    if (!(delta > 0.0 && delta < g_e)) {
        throw ConfigError("ground_state_success_bound: delta must lie in (0, g_e)");
    }
    if (!(n > 0.0) || beta2 < 0.0) {
        throw ConfigError("ground_state_success_bound: n must be positive and beta^2 nonnegative");
    }
    const double gap = g_e - delta;
    return clamp01(1.0 - beta2 / (n * gap * gap));
}

enum class Scheme { singlet, lcs, hamiltonian };

inline std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::singlet:
            return "singlet";
        case Scheme::lcs:
            return "lcs";
        default:
            return "hamiltonian";
    }
}

inline Scheme scheme_from_string(const std::string &s) {
    if (s == "singlet") {
        return Scheme::singlet;
    }
    if (s == "lcs") {
        return Scheme::lcs;
    }
    if (s == "hamiltonian") {
        return Scheme::hamiltonian;
    }
    throw ConfigError("unknown scheme '" + s + "'");
}

/// A statement that separable inputs pass with probability at most `bound`.
struct Certificate {
    Scheme scheme = Scheme::singlet;
    double delta = 0.0;
    long long k_or_n = 0;
    double bound = 1.0;
    double confidence = 0.0;
    std::map<std::string, double> constants;
};

/// Certificate for the binary-cost schemes. A nonpositive delta certifies nothing.
inline Certificate make_chernoff_certificate(Scheme scheme, double delta, long long k, double p = kSeparableCeiling) {
    Certificate c;
    c.scheme = scheme;
    c.delta = delta;
    c.k_or_n = k;
    c.bound = delta > 0.0 ? chernoff_separable_bound(delta, k, p) : 1.0;
    c.confidence = 1.0 - c.bound;
    c.constants["p"] = p;
    return c;
}

/// Certificate for the energy scheme; the Chebyshev ground-state bound is
/// reported alongside when delta lies below the gap.
inline Certificate make_mcdiarmid_certificate(long long n, double delta, double kappa2, double beta2, double g_e,
                                              double n_effective) {
    Certificate c;
    c.scheme = Scheme::hamiltonian;
    c.delta = delta;
    c.k_or_n = n;
    c.bound = delta > 0.0 ? mcdiarmid_separable_bound(n, delta, kappa2) : 1.0;
    c.confidence = 1.0 - c.bound;
    c.constants["kappa2"] = kappa2;
    c.constants["beta2"] = beta2;
    c.constants["g_e"] = g_e;
    if (delta > 0.0 && delta < g_e) {
        c.constants["ground_state_success_lower"] = ground_state_success_bound(n_effective, g_e, delta, beta2);
    }
    return c;
}

}  // namespace sv
