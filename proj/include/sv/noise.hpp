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
/// Separable noise: lambda rho_noise + (1 - lambda) rho_target, simulated by
/// drawing the branch once per trial. Every statistic of the schemes is linear
/// in the state, so this is exact.

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sv/dense.hpp"
#include "sv/hamiltonian.hpp"
#include "sv/protocols.hpp"
#include "sv/source.hpp"

namespace sv {

enum class NoiseKind { white, colored_product };

struct NoiseModel {
    double lambda = 0.0;
    NoiseKind kind = NoiseKind::white;
    /// Single-qubit states tiled over the register (colored noise only).
    std::vector<PureState> colored;

    void validate() const {
        if (!(lambda >= 0.0 && lambda <= 1.0)) {
            throw ConfigError("noise lambda must lie in [0, 1]");
        }
        if (kind == NoiseKind::colored_product) {
            if (colored.empty()) {
                throw ConfigError("colored noise needs at least one single-qubit state");
            }
            for (const auto &s : colored) {
                if (s.num_qubits() != 1) {
                    throw ConfigError("colored noise states must be single-qubit");
                }
            }
        }
    }

    static NoiseModel white(double lambda) {
        NoiseModel m{lambda, NoiseKind::white, {}};
        m.validate();
        return m;
    }

    static NoiseModel colored_product(double lambda, std::vector<PureState> states) {
        NoiseModel m{lambda, NoiseKind::colored_product, std::move(states)};
        m.validate();
        return m;
    }

    /// Reads {"qubits": [{"theta": t, "phi": p}, ...]}.
    static NoiseModel load_colored(double lambda, const std::string &path) {
        std::ifstream in(path);
        if (!in) {
            throw IoError("cannot open noise file '" + path + "'");
        }
        std::vector<PureState> states;
        try {
            const auto j = nlohmann::json::parse(in);
            for (const auto &q : j.at("qubits")) {
                states.push_back(PureState::from_bloch(q.at("theta").get<double>(), q.at("phi").get<double>()));
            }
        } catch (const nlohmann::json::exception &e) {
            throw ConfigError("malformed noise file '" + path + "': " + e.what());
        }
        return colored_product(lambda, std::move(states));
    }
};

/// The noise branch on n qubits.
inline StateHandle noise_source(const NoiseModel &model, std::size_t n) {
    model.validate();
    if (model.kind == NoiseKind::white) {
        return StateHandle::white_noise(n);
    }
    return tiled_product(model.colored, n);
}

inline StateHandle make_noisy_source(const NoiseModel &model, const StateHandle &target) {
    return StateHandle::mixture(model.lambda, noise_source(model, target.num_qubits()), target);
}

/// Scheme configuration for a noisy trial.
struct NoisyScheme {
    Scheme scheme = Scheme::singlet;
    SingletTrialConfig singlet;
    LcsTrialConfig lcs;
    const HamiltonianScheme *hamiltonian = nullptr;
    double delta = 1.0 / 3.0;
};

/// One trial on lambda noise + (1 - lambda) target; the record carries the branch.
inline TrialRecord sample_noisy_trial(const NoiseModel &model, const StateHandle &target, const NoisyScheme &cfg,
                                      RandomStream &rng) {
    const StateHandle source = make_noisy_source(model, target);
    switch (cfg.scheme) {
        case Scheme::singlet:
            return run_singlet_trial(cfg.singlet, source, rng);
        case Scheme::lcs:
            return run_lcs_trial(cfg.lcs, source, rng);
        default:
            if (cfg.hamiltonian == nullptr) {
                throw ConfigError("sample_noisy_trial: energy scheme not configured");
            }
            return run_hamiltonian_trial(*cfg.hamiltonian, source, cfg.delta, rng);
    }
}

/// Average number of preparations until the target branch passes: 1 / ((1 - lambda) p0).
inline double expected_copies(double p0, double lambda) {
    const double d = (1.0 - lambda) * p0;
    if (!(d > 0.0)) {
        throw ConfigError("expected_copies: (1 - lambda) p0 must be positive");
    }
    return 1.0 / d;
}

/// <1 - G_k - G_{k+1}> on lambda (maximally mixed) + (1 - lambda) |LCS>.
inline double lcs_witness_expectation(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw ConfigError("lcs_witness_expectation: lambda must lie in [0, 1]");
    }
    return 1.0 - 2.0 * (1.0 - lambda);
}

/// The witness 1 - G_k - G_{k+1} on an n-qubit ring (k 0-based).
inline PauliObservable lcs_witness(std::size_t n, std::size_t k) {
    PauliObservable w = PauliObservable::identity(n);
    w.add(-1.0, lcs_generator(n, k));
    w.add(-1.0, lcs_generator(n, (k + 1) % n));
    return w;
}

/// Dense evaluation of the same mixture: lambda tr(W)/2^n + (1 - lambda) <LCS|W|LCS>.
inline double lcs_witness_expectation_dense(std::size_t n, double lambda, std::size_t k = 0) {
    const PauliObservable w = lcs_witness(n, k);
    double trace_part = 0.0;
    for (const auto &t : w.terms) {
        if (t.ops.is_identity()) {
            trace_part += t.coefficient;
        }
    }
    return lambda * trace_part + (1.0 - lambda) * expectation(make_lcs_dense(n), w);
}

}  // namespace sv
