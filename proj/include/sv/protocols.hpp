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
/// Single-copy trial procedures for the singlet-pair and ring-cluster schemes.
///
/// A trial draws settings, measures every qubit of one prepared copy exactly
/// once (in qubit order), and scores each unit (pair or cluster) with a 0/1
/// local cost. The pass/fail verdict compares R = sum of local costs to
/// (2/3 + delta) K, with delta supplied at scoring time.

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "sv/bounds.hpp"
#include "sv/partitions.hpp"
#include "sv/source.hpp"

namespace sv {

/// Slack for comparing R against (2/3 + delta) K in floating point.
inline constexpr double kThresholdSlack = 1e-9;

struct TrialRecord {
    uint64_t trial = 0;
    Scheme scheme = Scheme::singlet;
    /// Cluster starts, 1-based (cluster scheme only).
    std::vector<std::size_t> partition;
    /// One setting string per unit: "XX" per pair, "ZXZZ" per cluster, "X" per site.
    std::vector<std::string> settings;
    /// Measured basis per qubit, one character each.
    std::string bases;
    /// Outcome bit per qubit, '0' or '1'.
    std::string outcomes;
    /// F per unit (binary schemes only).
    std::vector<int> local_costs;
    /// R, the number of units that succeeded.
    long long aggregate = 0;
    /// Energy estimate H_[N] (energy scheme only).
    double energy = 0.0;
    double delta_hat = 0.0;
    bool success = false;
    /// Mixture branch, for diagnostics; never used by certificates.
    std::string branch;

    std::size_t units() const {
        return local_costs.size();
    }

    bool operator==(const TrialRecord &) const = default;
};

inline constexpr std::array<const char *, 3> kSingletSettings = {"XX", "YY", "ZZ"};
inline constexpr std::array<const char *, 3> kClusterSettings = {"ZXZZ", "ZZXZ", "ZYYZ"};

namespace detail {

inline void check_distribution(const std::array<double, 3> &p) {
    double s = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) {
            throw ConfigError("setting distribution has a negative entry");
        }
        s += x;
    }
    if (std::abs(s - 1.0) > 1e-12) {
        throw ConfigError("setting distribution does not sum to 1");
    }
}

inline std::size_t draw_setting(const std::array<double, 3> &p, RandomStream &rng) {
    const double u = rng.uniform();
    if (u < p[0]) {
        return 0;
    }
    if (u < p[0] + p[1]) {
        return 1;
    }
    return 2;
}

}  // namespace detail

struct SingletTrialConfig {
    /// Number of pairs K; the register has 2K qubits, pair k = qubits (2k, 2k+1).
    std::size_t num_pairs = 8;
    /// Probabilities of XX, YY, ZZ.
    std::array<double, 3> setting_distribution = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    /// Threshold used to fill TrialRecord::success.
    double delta = 1.0 / 3.0;

    void validate() const {
        if (num_pairs == 0) {
            throw ConfigError("singlet scheme needs at least one pair");
        }
        detail::check_distribution(setting_distribution);
    }
};

struct LcsTrialConfig {
    std::size_t num_qubits = 24;
    std::size_t num_clusters = 8;
    /// Probabilities of ZXZZ, ZZXZ, ZYYZ.
    std::array<double, 3> setting_distribution = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    double delta = 1.0 / 3.0;

    void validate() const {
        if (count_regular(num_qubits, num_clusters) == 0) {
            throw ConfigError("no regular partition of " + std::to_string(num_qubits) + " qubits into " +
                              std::to_string(num_clusters) + " clusters");
        }
        detail::check_distribution(setting_distribution);
    }
};

/// 1 iff R >= (2/3 + delta) K.
inline bool evaluate_cost(const TrialRecord &record, double threshold_delta) {
    if (record.scheme == Scheme::hamiltonian) {
        throw ConfigError("evaluate_cost: energy records have no binary local costs");
    }
    const double k = static_cast<double>(record.units());
    return static_cast<double>(record.aggregate) >= (kSeparableCeiling + threshold_delta) * k - kThresholdSlack;
}

namespace detail {

inline void finish_binary_record(TrialRecord &r, double delta) {
    long long sum = 0;
    for (int f : r.local_costs) {
        sum += f;
    }
    r.aggregate = sum;
    r.delta_hat = static_cast<double>(sum) / static_cast<double>(r.units()) - kSeparableCeiling;
    r.success = evaluate_cost(r, delta);
}

inline int parity(int a) {
    return a & 1;
}

}  // namespace detail

/// Pairs of qubits measured in a shared random basis; F_k = 1 iff the two
/// outcomes differ.
inline TrialRecord run_singlet_trial(const SingletTrialConfig &cfg, const StateHandle &source, RandomStream &rng) {
    cfg.validate();
    const std::size_t n = 2 * cfg.num_pairs;
    if (source.num_qubits() != n) {
        throw ConfigError("singlet trial: source has " + std::to_string(source.num_qubits()) + " qubits, need " +
                          std::to_string(n));
    }
    TrialRecord r;
    r.scheme = Scheme::singlet;
    r.bases.assign(n, 'Z');
    std::vector<Pauli> basis(n, Pauli::Z);
    for (std::size_t k = 0; k < cfg.num_pairs; ++k) {
        const std::size_t m = detail::draw_setting(cfg.setting_distribution, rng);
        r.settings.emplace_back(kSingletSettings[m]);
        basis[2 * k] = basis[2 * k + 1] = basis_from_index(m);
        r.bases[2 * k] = r.bases[2 * k + 1] = kSingletSettings[m][0];
    }
    Preparation prep = source.prepare(rng);
    r.branch = prep.branch();
    std::vector<int> bits(n);
    r.outcomes.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        bits[q] = prep.measure(q, basis[q], rng);
        r.outcomes[q] = static_cast<char>('0' + bits[q]);
    }
    for (std::size_t k = 0; k < cfg.num_pairs; ++k) {
        r.local_costs.push_back(bits[2 * k] ^ bits[2 * k + 1]);
    }
    detail::finish_binary_record(r, cfg.delta);
    return r;
}

/// Cluster success bit for one setting index and the four member outcomes.
inline int cluster_cost(std::size_t setting, const std::array<int, 4> &i) {
    switch (setting) {
        case 0:
            return 1 - detail::parity(i[0] + i[1] + i[2]);
        case 1:
            return 1 - detail::parity(i[1] + i[2] + i[3]);
        default:
            return 1 - detail::parity(i[0] + i[1] + i[2] + i[3]);
    }
}

/// Random regular partition, one random stabilizer setting per cluster. Border
/// qubits shared by adjacent clusters are Z in both settings and are measured
/// once; qubits outside every cluster are measured in Z and ignored.
inline TrialRecord run_lcs_trial(const LcsTrialConfig &cfg, const StateHandle &source, RandomStream &rng) {
    cfg.validate();
    const std::size_t n = cfg.num_qubits;
    if (source.num_qubits() != n) {
        throw ConfigError("cluster trial: source has " + std::to_string(source.num_qubits()) + " qubits, need " +
                          std::to_string(n));
    }
    TrialRecord r;
    r.scheme = Scheme::lcs;
    const RegularPartition part = sample_regular(n, cfg.num_clusters, rng);
    r.partition = part.starts;
    r.bases.assign(n, 'Z');
    std::vector<std::size_t> setting_of(part.size());
    for (std::size_t s = 0; s < part.size(); ++s) {
        setting_of[s] = detail::draw_setting(cfg.setting_distribution, rng);
        r.settings.emplace_back(kClusterSettings[setting_of[s]]);
        const auto qs = Cluster{part.starts[s]}.qubits(n);
        for (std::size_t j = 0; j < kClusterSize; ++j) {
            r.bases[qs[j]] = kClusterSettings[setting_of[s]][j];
        }
    }
    Preparation prep = source.prepare(rng);
    r.branch = prep.branch();
    std::vector<int> bits(n);
    r.outcomes.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        bits[q] = prep.measure(q, pauli_from_char(r.bases[q]), rng);
        r.outcomes[q] = static_cast<char>('0' + bits[q]);
    }
    for (std::size_t s = 0; s < part.size(); ++s) {
        const auto qs = Cluster{part.starts[s]}.qubits(n);
        r.local_costs.push_back(cluster_cost(setting_of[s], {bits[qs[0]], bits[qs[1]], bits[qs[2]], bits[qs[3]]}));
    }
    detail::finish_binary_record(r, cfg.delta);
    return r;
}

/// Pooled sum(R) / sum(K) - 2/3 over binary-scheme records.
inline double post_hoc_delta(const std::vector<TrialRecord> &records) {
    if (records.empty()) {
        throw ConfigError("post_hoc_delta: no records");
    }
    long long r = 0;
    long long k = 0;
    for (const auto &rec : records) {
        if (rec.scheme != records.front().scheme) {
            throw ConfigError("post_hoc_delta: records mix schemes");
        }
        if (rec.scheme == Scheme::hamiltonian) {
            throw ConfigError("post_hoc_delta: energy records have no binary local costs");
        }
        r += rec.aggregate;
        k += static_cast<long long>(rec.units());
    }
    if (k == 0) {
        throw ConfigError("post_hoc_delta: records have no units");
    }
    return static_cast<double>(r) / static_cast<double>(k) - kSeparableCeiling;
}

/// (Q + W + R)/3 for a qubit pair: 1/2 - (XX + YY + ZZ)/6.
inline PauliObservable singlet_success_observable() {
    PauliObservable o(2);
    o.add(0.5, "II").add(-1.0 / 6.0, "XX").add(-1.0 / 6.0, "YY").add(-1.0 / 6.0, "ZZ");
    return o;
}

/// Average of the three cluster stabilizer projectors on four qubits:
/// 1/2 + (ZXZI + IZXZ + ZYYZ)/6.
inline PauliObservable cluster_success_observable() {
    PauliObservable o(4);
    o.add(0.5, "IIII").add(1.0 / 6.0, "ZXZI").add(1.0 / 6.0, "IZXZ").add(1.0 / 6.0, "ZYYZ");
    return o;
}

/// Four-qubit state with ZXZI = IZXZ = ZYYZ = +1 (and Z on both ends +1).
inline PureState cluster_block_state() {
    return stabilizer_state_dense(4, {{1, PauliString::parse("ZXZI")},
                                      {1, PauliString::parse("IZXZ")},
                                      {1, PauliString::parse("ZIII")},
                                      {1, PauliString::parse("IIIZ")}});
}

/// Block-product source holding cluster_block_state() on every cluster of
/// `fixed` and |0> elsewhere. Passes every cluster of `fixed` with certainty
/// but contains entanglement only inside blocks of four.
inline StateHandle cluster_block_product(const RegularPartition &fixed) {
    std::vector<PureState> blocks;
    std::size_t q = 1;
    for (std::size_t t : fixed.starts) {
        if (t < q || t + kClusterSize - 1 > fixed.n) {
            throw ConfigError("cluster_block_product: clusters must be disjoint and must not wrap");
        }
        for (; q < t; ++q) {
            blocks.push_back(PureState::eigenstate(Pauli::Z, 0));
        }
        blocks.push_back(cluster_block_state());
        q = t + kClusterSize;
    }
    for (; q <= fixed.n; ++q) {
        blocks.push_back(PureState::eigenstate(Pauli::Z, 0));
    }
    return StateHandle::product(std::move(blocks));
}

}  // namespace sv
