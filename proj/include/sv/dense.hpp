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
/// Exact statevector simulation of small registers.
///
/// Amplitude ordering: qubit 0 is the most significant bit of the basis
/// index, so |q0 q1 ... q_{n-1}> sits at index q0*2^{n-1} + ... + q_{n-1}.
/// Measurement outcome bit 0 is the +1 eigenvalue, bit 1 is -1.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sv/common.hpp"
#include "sv/pauli.hpp"
#include "sv/rng.hpp"

namespace sv {

using cplx = std::complex<double>;

inline constexpr double kNormTolerance = 1e-10;

class PureState {
   public:
    PureState() = default;

    /// Takes ownership of `amplitudes`; the vector must have length 2^n and unit norm.
    PureState(std::size_t num_qubits, std::vector<cplx> amplitudes)
        : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
        if (num_qubits_ == 0) {
            throw ConfigError("PureState: need at least one qubit");
        }
        require_dense(num_qubits_);
        if (amps_.size() != (std::size_t{1} << num_qubits_)) {
            throw ConfigError("PureState: amplitude count is not 2^num_qubits");
        }
        if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
            throw ConfigError("PureState: amplitudes are not normalized");
        }
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    static PureState normalized(std::size_t num_qubits, std::vector<cplx> amplitudes) {
        double s = 0.0;
        for (const auto &a : amplitudes) {
            s += std::norm(a);
        }
        if (!(s > 0.0)) {
            throw ConfigError("PureState::normalized: zero vector");
        }
        const double inv = 1.0 / std::sqrt(s);
        for (auto &a : amplitudes) {
            a *= inv;
        }
        return PureState(num_qubits, std::move(amplitudes));
    }

    static PureState basis(std::size_t num_qubits, uint64_t index) {
        require_dense(num_qubits);
        std::vector<cplx> a(std::size_t{1} << num_qubits);
        if (index >= a.size()) {
            throw ConfigError("PureState::basis: index out of range");
        }
        a[index] = 1.0;
        return PureState(num_qubits, std::move(a));
    }

    /// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
    static PureState from_bloch(double theta, double phi) {
        return PureState(1, {cplx(std::cos(theta / 2), 0.0), std::polar(std::sin(theta / 2), phi)});
    }

    /// Single-qubit eigenstate of `basis` with eigenvalue (-1)^bit.
    static PureState eigenstate(Pauli basis, int bit) {
        const double r = 1.0 / std::sqrt(2.0);
        const double s = bit ? -1.0 : 1.0;
        switch (basis) {
            case Pauli::X:
                return PureState(1, {r, s * r});
            case Pauli::Y:
                return PureState(1, {r, cplx(0.0, s * r)});
            case Pauli::Z:
                return basis_state_1q(bit);
            default:
                throw ConfigError("eigenstate: identity has no eigenbasis");
        }
    }

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t dim() const {
        return amps_.size();
    }
    std::span<const cplx> amplitudes() const {
        return amps_;
    }
    std::span<cplx> mutable_amplitudes() {
        return amps_;
    }
    cplx operator[](std::size_t i) const {
        return amps_[i];
    }

    double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

   private:
    static PureState basis_state_1q(int bit) {
        return bit ? PureState(1, {0.0, 1.0}) : PureState(1, {1.0, 0.0});
    }

    std::size_t num_qubits_ = 0;
    std::vector<cplx> amps_;
};

namespace detail {

inline std::size_t qubit_bit(std::size_t num_qubits, std::size_t qubit) {
    return num_qubits - 1 - qubit;
}

/// Components of (a0, a1) along the +1 / -1 eigenvectors of `basis`.
inline std::pair<cplx, cplx> basis_components(Pauli basis, cplx a0, cplx a1) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (basis) {
        case Pauli::Z:
            return {a0, a1};
        case Pauli::X:
            return {r * (a0 + a1), r * (a0 - a1)};
        case Pauli::Y:
            // <y+| = (1, -i)/sqrt2, <y-| = (1, i)/sqrt2
            return {r * (a0 - cplx(0, 1) * a1), r * (a0 + cplx(0, 1) * a1)};
        default:
            throw ConfigError("identity is not a measurement basis");
    }
}

/// Inverse of basis_components: c * |eigenvector(bit)> as (a0, a1).
inline std::pair<cplx, cplx> from_component(Pauli basis, int bit, cplx c) {
    const double r = 1.0 / std::sqrt(2.0);
    const double s = bit ? -1.0 : 1.0;
    switch (basis) {
        case Pauli::Z:
            return bit ? std::pair<cplx, cplx>{0.0, c} : std::pair<cplx, cplx>{c, 0.0};
        case Pauli::X:
            return {r * c, s * r * c};
        case Pauli::Y:
            return {r * c, cplx(0, s * r) * c};
        default:
            throw ConfigError("identity is not a measurement basis");
    }
}

template <typename F>
void for_each_pair(std::size_t num_qubits, std::size_t qubit, F &&f) {
    const std::size_t step = std::size_t{1} << qubit_bit(num_qubits, qubit);
    const std::size_t dim = std::size_t{1} << num_qubits;
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t j = base; j < base + step; ++j) {
            f(j, j + step);
        }
    }
}

inline void check_qubit(std::size_t num_qubits, std::size_t qubit) {
    if (qubit >= num_qubits) {
        throw ConfigError("invalid qubit index " + std::to_string(qubit) + " for " +
                          std::to_string(num_qubits) + " qubits");
    }
}

}  // namespace detail

/// out = P in, for a Pauli string P on the register of `in`.
inline void apply_pauli(const PauliString &p, std::span<const cplx> in, std::span<cplx> out) {
    const std::size_t n = p.size();
    uint64_t xmask = 0;
    uint64_t zmask = 0;
    int ny = 0;
    for (std::size_t q = 0; q < n; ++q) {
        const uint64_t bit = uint64_t{1} << detail::qubit_bit(n, q);
        switch (p[q]) {
            case Pauli::X:
                xmask |= bit;
                break;
            case Pauli::Y:
                xmask |= bit;
                zmask |= bit;
                ++ny;
                break;
            case Pauli::Z:
                zmask |= bit;
                break;
            default:
                break;
        }
    }
    // Y|b> = i (-1)^b |b^1>, so P|b> = i^{ny} (-1)^{|b & zmask|} |b ^ xmask>.
    static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx phase = kIPow[ny & 3];
    for (std::size_t b = 0; b < in.size(); ++b) {
        const double sign = (std::popcount(b & zmask) & 1) ? -1.0 : 1.0;
        out[b ^ xmask] = phase * sign * in[b];
    }
}

inline std::vector<cplx> apply_pauli(const PauliString &p, std::span<const cplx> in) {
    std::vector<cplx> out(in.size());
    apply_pauli(p, in, out);
    return out;
}

inline cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

/// Exact <psi|P|psi> for a single Pauli string.
inline double expectation(const PureState &state, const PauliString &p) {
    if (p.size() != state.num_qubits()) {
        throw ConfigError("expectation: observable acts on " + std::to_string(p.size()) + " qubits, state has " +
                          std::to_string(state.num_qubits()));
    }
    if (p.is_identity()) {
        return 1.0;
    }
    const auto v = apply_pauli(p, state.amplitudes());
    return inner_product(state.amplitudes(), v).real();
}

/// Exact <psi|O|psi>.
inline double expectation(const PureState &state, const PauliObservable &obs) {
    if (obs.num_qubits != state.num_qubits()) {
        throw ConfigError("expectation: observable acts on " + std::to_string(obs.num_qubits) +
                          " qubits, state has " + std::to_string(state.num_qubits()));
    }
    double s = 0.0;
    for (const auto &t : obs.terms) {
        s += t.coefficient * expectation(state, t.ops);
    }
    return s;
}

/// Tensor product in the given order (first factor holds the lowest qubit indices).
inline PureState make_product(const std::vector<PureState> &factors) {
    if (factors.empty()) {
        throw ConfigError("make_product: no factors");
    }
    std::size_t total = 0;
    for (const auto &f : factors) {
        total += f.num_qubits();
    }
    require_dense(total);
    std::vector<cplx> acc{1.0};
    for (const auto &f : factors) {
        std::vector<cplx> next(acc.size() * f.dim());
        for (std::size_t i = 0; i < acc.size(); ++i) {
            for (std::size_t j = 0; j < f.dim(); ++j) {
                next[i * f.dim() + j] = acc[i] * f[j];
            }
        }
        acc = std::move(next);
    }
    return PureState::normalized(total, std::move(acc));
}

/// (|01> - |10>)/sqrt2.
inline PureState make_singlet() {
    const double r = 1.0 / std::sqrt(2.0);
    return PureState(2, {0.0, r, -r, 0.0});
}

/// Ring cluster state: the +1 eigenstate of every Z_{k-1} X_k Z_{k+1}, indices mod n.
/// Built as prod_k CZ_{k,k+1} |+>^n, i.e. amplitude (-1)^{sum_k b_k b_{k+1}} / 2^{n/2}.
inline PureState make_lcs_dense(std::size_t n) {
    if (n < 3) {
        throw ConfigError("make_lcs_dense: need n >= 3");
    }
    require_dense(n);
    const std::size_t dim = std::size_t{1} << n;
    const double a = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<cplx> amps(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        int parity = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t k1 = (k + 1) % n;
            const int bk = static_cast<int>((b >> detail::qubit_bit(n, k)) & 1);
            const int bk1 = static_cast<int>((b >> detail::qubit_bit(n, k1)) & 1);
            parity ^= bk & bk1;
        }
        amps[b] = parity ? -a : a;
    }
    return PureState(n, std::move(amps));
}

/// Generator Z_{k-1} X_k Z_{k+1} of the ring cluster state, 0-based k, indices mod n.
inline PauliString lcs_generator(std::size_t n, std::size_t k) {
    PauliString g(n);
    g.ops[(k + n - 1) % n] = Pauli::Z;
    g.ops[(k + 1) % n] = Pauli::Z;
    g.ops[k] = Pauli::X;
    return g;
}

/// The state fixed by the given signed generators, found by projecting
/// computational basis states with prod (1 + s P)/2. Generators must commute
/// and pin down a unique state.
inline PureState stabilizer_state_dense(std::size_t n, const std::vector<std::pair<int, PauliString>> &generators) {
    require_dense(n);
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t start = 0; start < dim; ++start) {
        std::vector<cplx> v(dim);
        v[start] = 1.0;
        for (const auto &[sign, p] : generators) {
            if (p.size() != n) {
                throw ConfigError("stabilizer_state_dense: generator size mismatch");
            }
            auto pv = apply_pauli(p, v);
            for (std::size_t i = 0; i < dim; ++i) {
                v[i] = 0.5 * (v[i] + static_cast<double>(sign) * pv[i]);
            }
        }
        double s = 0.0;
        for (const auto &a : v) {
            s += std::norm(a);
        }
        if (s > 1e-12) {
            return PureState::normalized(n, std::move(v));
        }
    }
    throw ConfigError("stabilizer_state_dense: generators have no common +1 eigenvector");
}

/// Probability that measuring `qubit` in `basis` yields bit 0.
inline double outcome_probability(const PureState &state, std::size_t qubit, Pauli basis) {
    detail::check_qubit(state.num_qubits(), qubit);
    require_basis(basis);
    const auto a = state.amplitudes();
    double p0 = 0.0;
    detail::for_each_pair(state.num_qubits(), qubit, [&](std::size_t i0, std::size_t i1) {
        p0 += std::norm(detail::basis_components(basis, a[i0], a[i1]).first);
    });
    return p0;
}

/// Projects `qubit` onto the eigenvector of `basis` labelled `bit` and
/// renormalizes. Returns the probability of that branch; throws if it is zero.
inline double collapse(PureState &state, std::size_t qubit, Pauli basis, int bit) {
    detail::check_qubit(state.num_qubits(), qubit);
    require_basis(basis);
    auto a = state.mutable_amplitudes();
    double p = 0.0;
    detail::for_each_pair(state.num_qubits(), qubit, [&](std::size_t i0, std::size_t i1) {
        const auto [cp, cm] = detail::basis_components(basis, a[i0], a[i1]);
        const cplx c = bit ? cm : cp;
        p += std::norm(c);
        const auto [b0, b1] = detail::from_component(basis, bit, c);
        a[i0] = b0;
        a[i1] = b1;
    });
    if (!(p > 1e-300)) {
        throw ConfigError("collapse: outcome has zero probability");
    }
    const double inv = 1.0 / std::sqrt(p);
    for (auto &x : a) {
        x *= inv;
    }
    return p;
}

/// Born-rule measurement in place. Consumes exactly one uniform draw.
inline int measure_in_place(PureState &state, std::size_t qubit, Pauli basis, RandomStream &rng) {
    const double p0 = outcome_probability(state, qubit, basis);
    const int bit = rng.uniform() < p0 ? 0 : 1;
    collapse(state, qubit, basis, bit);
    return bit;
}

struct Measurement {
    int bit;
    PureState state;
};

inline Measurement measure_qubit(const PureState &state, std::size_t qubit, Pauli basis, RandomStream &rng) {
    PureState post = state;
    const int bit = measure_in_place(post, qubit, basis, rng);
    return {bit, std::move(post)};
}

/// Exact joint distribution of the outcome string when every qubit q is
/// measured in bases[q]. Entry b has qubit 0's bit as its most significant bit.
inline std::vector<double> born_distribution(const PureState &state, const PauliString &bases) {
    if (bases.size() != state.num_qubits()) {
        throw ConfigError("born_distribution: setting length mismatch");
    }
    std::vector<cplx> v(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t q = 0; q < bases.size(); ++q) {
        require_basis(bases[q]);
        detail::for_each_pair(state.num_qubits(), q, [&](std::size_t i0, std::size_t i1) {
            const auto [cp, cm] = detail::basis_components(bases[q], v[i0], v[i1]);
            v[i0] = cp;
            v[i1] = cm;
        });
    }
    std::vector<double> p(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        p[i] = std::norm(v[i]);
    }
    return p;
}

}  // namespace sv
