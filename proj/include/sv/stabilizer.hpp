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
/// Stabilizer tableau with destabilizers, bit-packed into 64-bit words.
///
/// Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizer generators. A row is
/// a Hermitian Pauli string encoded as (x, z) bits per qubit with (1, 1) = Y,
/// plus a sign bit (1 means -1).

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sv/common.hpp"
#include "sv/pauli.hpp"
#include "sv/rng.hpp"

namespace sv {

class StabilizerTableau {
   public:
    StabilizerTableau() = default;

    /// |0...0>: stabilizers Z_k, destabilizers X_k.
    static StabilizerTableau zero_state(std::size_t n) {
        StabilizerTableau t(n);
        for (std::size_t k = 0; k < n; ++k) {
            t.set(k, k, Pauli::X);
            t.set(n + k, k, Pauli::Z);
        }
        return t;
    }

    /// Product of single-qubit Pauli eigenstates; qubit k is the (-1)^bits[k]
    /// eigenstate of bases[k].
    static StabilizerTableau pauli_product(const PauliString &bases, const std::vector<int> &bits) {
        const std::size_t n = bases.size();
        if (bits.size() != n) {
            throw ConfigError("pauli_product: bases and bits differ in length");
        }
        StabilizerTableau t(n);
        for (std::size_t k = 0; k < n; ++k) {
            require_basis(bases[k]);
            t.set(n + k, k, bases[k]);
            t.sign_[n + k] = static_cast<uint8_t>(bits[k] & 1);
            t.set(k, k, bases[k] == Pauli::Z ? Pauli::X : Pauli::Z);
        }
        return t;
    }

    std::size_t num_qubits() const {
        return n_;
    }

    /// Pauli of stabilizer generator `row` (0-based among generators) on `qubit`.
    Pauli stabilizer_pauli(std::size_t row, std::size_t qubit) const {
        return get(n_ + row, qubit);
    }

    int stabilizer_sign(std::size_t row) const {
        return sign_[n_ + row];
    }

    /// Generator `row` as a string such as "+ZXZI".
    std::string stabilizer_string(std::size_t row) const {
        std::string s(1, sign_[n_ + row] ? '-' : '+');
        for (std::size_t q = 0; q < n_; ++q) {
            s.push_back(to_char(get(n_ + row, q)));
        }
        return s;
    }

    /// True when measuring `basis` on `qubit` has a fixed outcome.
    bool is_deterministic(std::size_t qubit, Pauli basis) const {
        check(qubit, basis);
        for (std::size_t r = n_; r < 2 * n_; ++r) {
            if (anticommutes(r, qubit, basis)) {
                return false;
            }
        }
        return true;
    }

    /// The fixed outcome, or nullopt when the measurement is random.
    std::optional<int> peek(std::size_t qubit, Pauli basis) const {
        if (!is_deterministic(qubit, basis)) {
            return std::nullopt;
        }
        return deterministic_outcome(qubit, basis);
    }

    /// Measures `basis` on `qubit`, updating the tableau. A random outcome
    /// consumes one coin flip from `rng`; a fixed outcome consumes nothing.
    int measure(std::size_t qubit, Pauli basis, RandomStream &rng) {
        check(qubit, basis);
        std::size_t p = 2 * n_;
        for (std::size_t r = n_; r < 2 * n_; ++r) {
            if (anticommutes(r, qubit, basis)) {
                p = r;
                break;
            }
        }
        if (p == 2 * n_) {
            return deterministic_outcome(qubit, basis);
        }
        for (std::size_t r = 0; r < 2 * n_; ++r) {
            if (r != p && anticommutes(r, qubit, basis)) {
                multiply_into(r, p);
            }
        }
        copy_row(p - n_, p);
        clear_row(p);
        set(p, qubit, basis);
        const int bit = rng.coin() ? 1 : 0;
        sign_[p] = static_cast<uint8_t>(bit);
        return bit;
    }

    /// Generators pairwise commute, have rank n over GF(2), and each
    /// destabilizer anticommutes with exactly its own generator.
    bool check_invariants() const {
        for (std::size_t a = n_; a < 2 * n_; ++a) {
            for (std::size_t b = a + 1; b < 2 * n_; ++b) {
                if (symplectic(a, b)) {
                    return false;
                }
            }
        }
        for (std::size_t d = 0; d < n_; ++d) {
            for (std::size_t s = 0; s < n_; ++s) {
                if (symplectic(d, n_ + s) != (d == s)) {
                    return false;
                }
            }
        }
        return stabilizer_rank() == n_;
    }

    /// Rank of the generator rows over GF(2).
    std::size_t stabilizer_rank() const {
        std::vector<std::vector<uint64_t>> rows;
        rows.reserve(n_);
        for (std::size_t r = n_; r < 2 * n_; ++r) {
            std::vector<uint64_t> v(2 * words_);
            for (std::size_t w = 0; w < words_; ++w) {
                v[w] = xs_[r * words_ + w];
                v[words_ + w] = zs_[r * words_ + w];
            }
            rows.push_back(std::move(v));
        }
        std::size_t rank = 0;
        for (std::size_t col = 0; col < 2 * words_ * 64 && rank < rows.size(); ++col) {
            const std::size_t w = col / 64;
            const uint64_t m = uint64_t{1} << (col % 64);
            std::size_t piv = rank;
            while (piv < rows.size() && !(rows[piv][w] & m)) {
                ++piv;
            }
            if (piv == rows.size()) {
                continue;
            }
            std::swap(rows[piv], rows[rank]);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r != rank && (rows[r][w] & m)) {
                    for (std::size_t k = 0; k < rows[r].size(); ++k) {
                        rows[r][k] ^= rows[rank][k];
                    }
                }
            }
            ++rank;
        }
        return rank;
    }

    /// Signed product a*b of two Hermitian Pauli rows, written as i^k times a
    /// Hermitian row; returns k mod 4. Exposed for testing the phase rule.
    static int product_phase(std::vector<uint64_t> &x1, std::vector<uint64_t> &z1, const std::vector<uint64_t> &x2,
                             const std::vector<uint64_t> &z2) {
        uint64_t cnt1 = 0;
        uint64_t cnt2 = 0;
        int acc = 0;
        for (std::size_t w = 0; w < x1.size(); ++w) {
            mul_word(x1[w], z1[w], x2[w], z2[w], cnt1, cnt2);
            acc += std::popcount(cnt1) + 2 * std::popcount(cnt2);
            cnt1 = cnt2 = 0;
        }
        return acc & 3;
    }

   private:
    explicit StabilizerTableau(std::size_t n)
        : n_(n), words_((n + 63) / 64), xs_(2 * n * words_), zs_(2 * n * words_), sign_(2 * n) {
        if (n == 0) {
            throw ConfigError("StabilizerTableau: need at least one qubit");
        }
    }

    friend StabilizerTableau init_lcs(std::size_t n);

    /// One word of the in-place product (x1,z1) <- (x1,z1)*(x2,z2). Per bit
    /// lane, (cnt1 + 2 cnt2) accumulates the power of i picked up mod 4.
    static void mul_word(uint64_t &x1, uint64_t &z1, uint64_t x2, uint64_t z2, uint64_t &cnt1, uint64_t &cnt2) {
        const uint64_t old_x1 = x1;
        const uint64_t old_z1 = z1;
        x1 ^= x2;
        z1 ^= z2;
        const uint64_t x1z2 = old_x1 & z2;
        const uint64_t anti = (x2 & old_z1) ^ x1z2;
        cnt2 ^= (cnt1 ^ x1 ^ z1 ^ x1z2) & anti;
        cnt1 ^= anti;
    }

    void check(std::size_t qubit, Pauli basis) const {
        if (qubit >= n_) {
            throw ConfigError("invalid qubit index " + std::to_string(qubit));
        }
        require_basis(basis);
    }

    Pauli get(std::size_t row, std::size_t q) const {
        const std::size_t w = row * words_ + q / 64;
        const uint64_t m = uint64_t{1} << (q % 64);
        const bool x = xs_[w] & m;
        const bool z = zs_[w] & m;
        return x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
    }

    void set(std::size_t row, std::size_t q, Pauli p) {
        const std::size_t w = row * words_ + q / 64;
        const uint64_t m = uint64_t{1} << (q % 64);
        xs_[w] &= ~m;
        zs_[w] &= ~m;
        if (p == Pauli::X || p == Pauli::Y) {
            xs_[w] |= m;
        }
        if (p == Pauli::Z || p == Pauli::Y) {
            zs_[w] |= m;
        }
    }

    bool anticommutes(std::size_t row, std::size_t q, Pauli basis) const {
        const std::size_t w = row * words_ + q / 64;
        const unsigned s = q % 64;
        const unsigned x = (xs_[w] >> s) & 1;
        const unsigned z = (zs_[w] >> s) & 1;
        switch (basis) {
            case Pauli::Z:
                return x;
            case Pauli::X:
                return z;
            default:
                return x ^ z;
        }
    }

    bool symplectic(std::size_t a, std::size_t b) const {
        uint64_t acc = 0;
        for (std::size_t w = 0; w < words_; ++w) {
            acc ^= (xs_[a * words_ + w] & zs_[b * words_ + w]) ^ (zs_[a * words_ + w] & xs_[b * words_ + w]);
        }
        return std::popcount(acc) & 1;
    }

    /// row[target] <- row[target] * row[source], sign included.
    void multiply_into(std::size_t target, std::size_t source) {
        uint64_t cnt1 = 0;
        uint64_t cnt2 = 0;
        uint64_t *xt = &xs_[target * words_];
        uint64_t *zt = &zs_[target * words_];
        const uint64_t *xsrc = &xs_[source * words_];
        const uint64_t *zsrc = &zs_[source * words_];
        int log_i = 0;
        for (std::size_t w = 0; w < words_; ++w) {
            mul_word(xt[w], zt[w], xsrc[w], zsrc[w], cnt1, cnt2);
        }
        log_i = std::popcount(cnt1) + 2 * std::popcount(cnt2);
        sign_[target] ^= sign_[source] ^ static_cast<uint8_t>((log_i >> 1) & 1);
    }

    void copy_row(std::size_t dst, std::size_t src) {
        for (std::size_t w = 0; w < words_; ++w) {
            xs_[dst * words_ + w] = xs_[src * words_ + w];
            zs_[dst * words_ + w] = zs_[src * words_ + w];
        }
        sign_[dst] = sign_[src];
    }

    void clear_row(std::size_t r) {
        for (std::size_t w = 0; w < words_; ++w) {
            xs_[r * words_ + w] = 0;
            zs_[r * words_ + w] = 0;
        }
        sign_[r] = 0;
    }

    /// The measured Pauli is, up to sign, the product of the generators whose
    /// destabilizers anticommute with it; that sign is the outcome.
    int deterministic_outcome(std::size_t qubit, Pauli basis) const {
        std::vector<uint64_t> x(words_, 0);
        std::vector<uint64_t> z(words_, 0);
        int sign = 0;
        int log_i = 0;
        for (std::size_t d = 0; d < n_; ++d) {
            if (!anticommutes(d, qubit, basis)) {
                continue;
            }
            const std::size_t s = n_ + d;
            uint64_t cnt1 = 0;
            uint64_t cnt2 = 0;
            for (std::size_t w = 0; w < words_; ++w) {
                mul_word(x[w], z[w], xs_[s * words_ + w], zs_[s * words_ + w], cnt1, cnt2);
            }
            log_i += std::popcount(cnt1) + 2 * std::popcount(cnt2);
            sign ^= sign_[s];
        }
        return sign ^ ((log_i >> 1) & 1);
    }

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint8_t> sign_;
};

/// Ring cluster state: generators Z_{k-1} X_k Z_{k+1} (indices mod n), all
/// signs +, destabilizers Z_k.
inline StabilizerTableau init_lcs(std::size_t n) {
    if (n < 3) {
        throw ConfigError("init_lcs: need n >= 3");
    }
    StabilizerTableau t(n);
    for (std::size_t k = 0; k < n; ++k) {
        t.set(k, k, Pauli::Z);
        t.set(n + k, (k + n - 1) % n, Pauli::Z);
        t.set(n + k, (k + 1) % n, Pauli::Z);
        t.set(n + k, k, Pauli::X);
    }
    return t;
}

}  // namespace sv
