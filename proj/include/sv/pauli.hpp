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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sv/common.hpp"

namespace sv {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char to_char(Pauli p) {
    return "IXYZ"[static_cast<int>(p)];
}

inline Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I':
        case '_':
            return Pauli::I;
        case 'X':
            return Pauli::X;
        case 'Y':
            return Pauli::Y;
        case 'Z':
            return Pauli::Z;
        default:
            throw ConfigError(std::string("not a Pauli symbol: '") + c + "'");
    }
}

/// A measurement basis must be one of X, Y, Z.
inline void require_basis(Pauli p) {
    if (p == Pauli::I) {
        throw ConfigError("identity is not a measurement basis");
    }
}

/// Position of a basis in the fixed setting order X, Y, Z.
inline std::size_t basis_index(Pauli p) {
    require_basis(p);
    return static_cast<std::size_t>(p) - 1;
}

inline Pauli basis_from_index(std::size_t m) {
    return static_cast<Pauli>(m + 1);
}

/// Tensor product of single-qubit Paulis, qubit 0 first. No phase.
struct PauliString {
    std::vector<Pauli> ops;

    PauliString() = default;
    explicit PauliString(std::size_t n) : ops(n, Pauli::I) {
    }
    explicit PauliString(std::vector<Pauli> o) : ops(std::move(o)) {
    }

    static PauliString parse(std::string_view text) {
        PauliString s;
        s.ops.reserve(text.size());
        for (char c : text) {
            s.ops.push_back(pauli_from_char(c));
        }
        return s;
    }

    /// `ops` placed on `qubits` of an n-qubit register, identity elsewhere.
    static PauliString embed(std::size_t n, const std::vector<std::size_t> &qubits, const PauliString &local) {
        if (qubits.size() != local.size()) {
            throw ConfigError("PauliString::embed: support and operator sizes differ");
        }
        PauliString s(n);
        for (std::size_t j = 0; j < qubits.size(); ++j) {
            if (qubits[j] >= n) {
                throw ConfigError("PauliString::embed: qubit index out of range");
            }
            s.ops[qubits[j]] = local.ops[j];
        }
        return s;
    }

    std::size_t size() const {
        return ops.size();
    }

    Pauli operator[](std::size_t q) const {
        return ops[q];
    }

    bool is_identity() const {
        for (Pauli p : ops) {
            if (p != Pauli::I) {
                return false;
            }
        }
        return true;
    }

    std::string str() const {
        std::string out;
        out.reserve(ops.size());
        for (Pauli p : ops) {
            out.push_back(to_char(p));
        }
        return out;
    }

    bool operator==(const PauliString &) const = default;
};

struct PauliTerm {
    double coefficient = 0.0;
    PauliString ops;
};

/// Real linear combination of Pauli strings; Hermitian by construction.
struct PauliObservable {
    std::size_t num_qubits = 0;
    std::vector<PauliTerm> terms;

    PauliObservable() = default;
    explicit PauliObservable(std::size_t n) : num_qubits(n) {
    }

    static PauliObservable identity(std::size_t n, double c = 1.0) {
        PauliObservable o(n);
        o.add(c, PauliString(n));
        return o;
    }

    PauliObservable &add(double c, PauliString s) {
        if (s.size() != num_qubits) {
            throw ConfigError("PauliObservable::add: string length " + std::to_string(s.size()) +
                              " does not match " + std::to_string(num_qubits) + " qubits");
        }
        terms.push_back({c, std::move(s)});
        return *this;
    }

    PauliObservable &add(double c, std::string_view s) {
        return add(c, PauliString::parse(s));
    }

    PauliObservable &operator+=(const PauliObservable &o) {
        if (o.num_qubits != num_qubits) {
            throw ConfigError("PauliObservable: qubit counts differ");
        }
        terms.insert(terms.end(), o.terms.begin(), o.terms.end());
        return *this;
    }

    PauliObservable scaled(double c) const {
        PauliObservable o = *this;
        for (auto &t : o.terms) {
            t.coefficient *= c;
        }
        return o;
    }
};

}  // namespace sv
