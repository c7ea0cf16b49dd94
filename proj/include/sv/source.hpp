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
/// Preparable quantum sources. A StateHandle describes what is prepared; each
/// trial calls prepare() to get its own single copy and measures it qubit by
/// qubit. Mixed sources are classical mixtures resolved once per preparation.

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sv/dense.hpp"
#include "sv/stabilizer.hpp"

namespace sv {

struct DenseSource {
    PureState state;
};

/// Tensor product of small dense blocks, block 0 on the lowest qubits.
/// Scales to any register size as long as each block is small.
struct ProductSource {
    std::vector<PureState> blocks;
};

struct TableauSource {
    StabilizerTableau tableau;
};

/// The maximally mixed state: every Pauli measurement is a fair coin.
struct WhiteNoiseSource {
    std::size_t num_qubits = 0;
};

class StateHandle;

/// With probability lambda the noise preparation, otherwise the target.
struct MixtureSource {
    double lambda = 0.0;
    std::shared_ptr<const StateHandle> noise;
    std::shared_ptr<const StateHandle> target;
};

class Preparation;

class StateHandle {
   public:
    using Variant = std::variant<DenseSource, ProductSource, TableauSource, WhiteNoiseSource, MixtureSource>;

    StateHandle(DenseSource s) : v_(std::move(s)) {
        init();
    }
    StateHandle(ProductSource s) : v_(std::move(s)) {
        init();
    }
    StateHandle(TableauSource s) : v_(std::move(s)) {
        init();
    }
    StateHandle(WhiteNoiseSource s) : v_(std::move(s)) {
        init();
    }
    StateHandle(MixtureSource s) : v_(std::move(s)) {
        init();
    }

    static StateHandle dense(PureState s) {
        return StateHandle(DenseSource{std::move(s)});
    }
    static StateHandle product(std::vector<PureState> blocks) {
        return StateHandle(ProductSource{std::move(blocks)});
    }
    static StateHandle tableau(StabilizerTableau t) {
        return StateHandle(TableauSource{std::move(t)});
    }
    static StateHandle white_noise(std::size_t n) {
        return StateHandle(WhiteNoiseSource{n});
    }
    static StateHandle mixture(double lambda, StateHandle noise, StateHandle target) {
        return StateHandle(MixtureSource{lambda, std::make_shared<const StateHandle>(std::move(noise)),
                                         std::make_shared<const StateHandle>(std::move(target))});
    }

    std::size_t num_qubits() const {
        return num_qubits_;
    }

    const Variant &variant() const {
        return v_;
    }

    /// One fresh copy; draws the mixture branch (one uniform) when mixed.
    Preparation prepare(RandomStream &rng) const;

   private:
    void init() {
        num_qubits_ = std::visit(
            [this](const auto &s) -> std::size_t {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, DenseSource>) {
                    return s.state.num_qubits();
                } else if constexpr (std::is_same_v<T, ProductSource>) {
                    if (s.blocks.empty()) {
                        throw ConfigError("ProductSource: no blocks");
                    }
                    std::size_t n = 0;
                    block_of_.clear();
                    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
                        for (std::size_t j = 0; j < s.blocks[b].num_qubits(); ++j) {
                            block_of_.push_back({b, j});
                        }
                        n += s.blocks[b].num_qubits();
                    }
                    return n;
                } else if constexpr (std::is_same_v<T, TableauSource>) {
                    return s.tableau.num_qubits();
                } else if constexpr (std::is_same_v<T, WhiteNoiseSource>) {
                    if (s.num_qubits == 0) {
                        throw ConfigError("WhiteNoiseSource: need at least one qubit");
                    }
                    return s.num_qubits;
                } else {
                    if (!(s.lambda >= 0.0 && s.lambda <= 1.0)) {
                        throw ConfigError("MixtureSource: lambda must lie in [0, 1]");
                    }
                    if (!s.noise || !s.target || s.noise->num_qubits() != s.target->num_qubits()) {
                        throw ConfigError("MixtureSource: branches must have equal qubit counts");
                    }
                    return s.target->num_qubits();
                }
            },
            v_);
    }

    friend class Preparation;

    Variant v_;
    std::size_t num_qubits_ = 0;
    // Product sources only: qubit -> (block, index inside block).
    std::vector<std::pair<std::size_t, std::size_t>> block_of_;
};

/// A single prepared copy, consumed by measurement.
class Preparation {
   public:
    /// Measures `basis` on `qubit`; bit 0 is eigenvalue +1.
    int measure(std::size_t qubit, Pauli basis, RandomStream &rng) {
        if (qubit >= num_qubits_) {
            throw ConfigError("Preparation::measure: invalid qubit index " + std::to_string(qubit));
        }
        require_basis(basis);
        return std::visit(
            [&](auto &s) -> int {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, PureState>) {
                    return measure_in_place(s, qubit, basis, rng);
                } else if constexpr (std::is_same_v<T, std::vector<PureState>>) {
                    const auto [b, j] = (*block_of_)[qubit];
                    return measure_in_place(s[b], j, basis, rng);
                } else if constexpr (std::is_same_v<T, StabilizerTableau>) {
                    return s.measure(qubit, basis, rng);
                } else {
                    return rng.coin() ? 1 : 0;
                }
            },
            state_);
    }

    std::size_t num_qubits() const {
        return num_qubits_;
    }

    /// "target" or "noise" for mixture preparations, empty otherwise. Diagnostic only.
    const std::string &branch() const {
        return branch_;
    }

   private:
    friend class StateHandle;
    struct White {};
    using State = std::variant<PureState, std::vector<PureState>, StabilizerTableau, White>;

    State state_;
    std::size_t num_qubits_ = 0;
    const std::vector<std::pair<std::size_t, std::size_t>> *block_of_ = nullptr;
    std::string branch_;
};

inline Preparation StateHandle::prepare(RandomStream &rng) const {
    if (const auto *m = std::get_if<MixtureSource>(&v_)) {
        const bool noisy = rng.uniform() < m->lambda;
        Preparation p = noisy ? m->noise->prepare(rng) : m->target->prepare(rng);
        p.branch_ = noisy ? "noise" : "target";
        return p;
    }
    Preparation p;
    p.num_qubits_ = num_qubits_;
    std::visit(
        [&](const auto &s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DenseSource>) {
                p.state_ = s.state;
            } else if constexpr (std::is_same_v<T, ProductSource>) {
                p.state_ = s.blocks;
                p.block_of_ = &block_of_;
            } else if constexpr (std::is_same_v<T, TableauSource>) {
                p.state_ = s.tableau;
            } else if constexpr (std::is_same_v<T, WhiteNoiseSource>) {
                p.state_ = Preparation::White{};
            }
        },
        v_);
    return p;
}

/// Product of single-qubit states given by symbols: 0 1 (Z), + - (X), r l (Y).
inline std::vector<PureState> single_qubit_states(const std::string &symbols) {
    std::vector<PureState> out;
    for (char c : symbols) {
        switch (c) {
            case '0':
                out.push_back(PureState::eigenstate(Pauli::Z, 0));
                break;
            case '1':
                out.push_back(PureState::eigenstate(Pauli::Z, 1));
                break;
            case '+':
                out.push_back(PureState::eigenstate(Pauli::X, 0));
                break;
            case '-':
                out.push_back(PureState::eigenstate(Pauli::X, 1));
                break;
            case 'r':
                out.push_back(PureState::eigenstate(Pauli::Y, 0));
                break;
            case 'l':
                out.push_back(PureState::eigenstate(Pauli::Y, 1));
                break;
            default:
                throw ConfigError(std::string("unknown single-qubit state symbol '") + c + "'");
        }
    }
    return out;
}

/// `pattern` repeated cyclically over n qubits.
inline StateHandle tiled_product(const std::vector<PureState> &pattern, std::size_t n) {
    if (pattern.empty()) {
        throw ConfigError("tiled_product: empty pattern");
    }
    std::vector<PureState> blocks;
    std::size_t covered = 0;
    for (std::size_t i = 0; covered < n; ++i) {
        const auto &b = pattern[i % pattern.size()];
        covered += b.num_qubits();
        blocks.push_back(b);
    }
    if (covered != n) {
        throw ConfigError("tiled_product: pattern blocks do not tile " + std::to_string(n) + " qubits");
    }
    return StateHandle::product(std::move(blocks));
}

}  // namespace sv
