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
/// Regular partitions of an n-qubit ring into four-qubit clusters.
///
/// Ring positions are 1-based here (1..n). A cluster starting at t covers
/// {t, t+1, t+2, t+3} mod n. A set of starts t_1 < ... < t_L is regular when
/// every cyclic gap, including the wrap-around gap t_1 + n - t_L, is at least
/// 3, so adjacent clusters share at most one border position.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "sv/common.hpp"
#include "sv/rng.hpp"

namespace sv {

inline constexpr std::size_t kClusterSize = 4;
inline constexpr std::size_t kMinGap = 3;

/// 1-based ring position reached by stepping `offset` from `start`.
inline std::size_t ring_position(std::size_t n, std::size_t start, std::size_t offset) {
    return (start - 1 + offset) % n + 1;
}

struct Cluster {
    std::size_t start = 1;

    /// Member positions, 1-based, in cluster order.
    std::array<std::size_t, kClusterSize> members(std::size_t n) const {
        return {ring_position(n, start, 0), ring_position(n, start, 1), ring_position(n, start, 2),
                ring_position(n, start, 3)};
    }

    /// Member qubit indices, 0-based, in cluster order.
    std::array<std::size_t, kClusterSize> qubits(std::size_t n) const {
        auto m = members(n);
        for (auto &q : m) {
            --q;
        }
        return m;
    }
};

struct RegularPartition {
    std::size_t n = 0;
    std::vector<std::size_t> starts;

    std::size_t size() const {
        return starts.size();
    }

    std::vector<Cluster> clusters() const {
        std::vector<Cluster> out;
        out.reserve(starts.size());
        for (auto t : starts) {
            out.push_back({t});
        }
        return out;
    }

    /// Strictly increasing starts in 1..n with every cyclic gap >= 3.
    bool is_regular() const {
        if (starts.empty() || n < kMinGap) {
            return false;
        }
        for (std::size_t s = 0; s < starts.size(); ++s) {
            if (starts[s] < 1 || starts[s] > n) {
                return false;
            }
            if (s + 1 < starts.size() && starts[s + 1] < starts[s] + kMinGap) {
                return false;
            }
        }
        return starts.front() + n >= starts.back() + kMinGap;
    }

    bool operator==(const RegularPartition &) const = default;
    auto operator<=>(const RegularPartition &) const = default;
};

namespace detail {

inline void enumerate_rec(std::size_t n, std::size_t l, std::vector<std::size_t> &cur,
                          std::vector<RegularPartition> &out) {
    if (cur.size() == l) {
        if (cur.front() + n >= cur.back() + kMinGap) {
            out.push_back({n, cur});
        }
        return;
    }
    const std::size_t lo = cur.empty() ? 1 : cur.back() + kMinGap;
    // Each remaining start needs 3 more positions before the wrap-around gap closes.
    for (std::size_t t = lo; t <= n; ++t) {
        if (!cur.empty()) {
            const std::size_t remaining = l - cur.size();
            if (t + kMinGap * (remaining - 1) + kMinGap > cur.front() + n) {
                break;
            }
        }
        cur.push_back(t);
        enumerate_rec(n, l, cur, out);
        cur.pop_back();
    }
}

/// Binomial coefficient; throws when the result does not fit in 64 bits.
inline uint64_t binomial(uint64_t n, uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) {
            throw ConfigError("binomial coefficient overflows 64 bits");
        }
    }
    return static_cast<uint64_t>(r);
}

}  // namespace detail

/// All regular partitions of size l, sorted lexicographically by starts.
inline std::vector<RegularPartition> enumerate_regular(std::size_t n, std::size_t l) {
    std::vector<RegularPartition> out;
    if (l == 0 || n < kMinGap * l) {
        return out;
    }
    std::vector<std::size_t> cur;
    cur.reserve(l);
    detail::enumerate_rec(n, l, cur, out);
    return out;
}

/// Number of regular partitions: the gaps form a composition of n into l
/// parts >= 3 (C(n-2l-1, l-1) of them), anchored at one of n positions; each
/// partition is counted once per choice of anchor cluster, hence the 1/l.
inline uint64_t count_regular(std::size_t n, std::size_t l) {
    if (l == 0 || n < kMinGap * l) {
        return 0;
    }
    const uint64_t compositions = detail::binomial(n - 2 * l - 1, l - 1);
    const unsigned __int128 total = static_cast<unsigned __int128>(n) * compositions / l;
    if (total > UINT64_MAX) {
        throw ConfigError("count_regular overflows 64 bits");
    }
    return static_cast<uint64_t>(total);
}

/// Exactly uniform draw from the regular partitions of size l.
///
/// Draws a uniform anchor position and a uniform gap composition (stars and
/// bars over the n - 3l surplus positions). Every partition arises from
/// exactly l (anchor, composition) pairs, so the result is uniform.
inline RegularPartition sample_regular(std::size_t n, std::size_t l, RandomStream &rng) {
    if (count_regular(n, l) == 0) {
        throw ConfigError("sample_regular: no regular partition for n=" + std::to_string(n) +
                          ", l=" + std::to_string(l));
    }
    // Choose l-1 bar slots out of (surplus + l - 1), Floyd's algorithm.
    const std::size_t surplus = n - kMinGap * l;
    const std::size_t slots = surplus + l - 1;
    std::vector<std::size_t> bars;
    bars.reserve(l - 1);
    for (std::size_t j = slots - (l - 1); j < slots; ++j) {
        const std::size_t t = static_cast<std::size_t>(rng.index(j + 1));
        if (std::find(bars.begin(), bars.end(), t) == bars.end()) {
            bars.push_back(t);
        } else {
            bars.push_back(j);
        }
    }
    std::sort(bars.begin(), bars.end());
    std::vector<std::size_t> extra(l, 0);
    std::size_t part = 0;
    std::size_t prev = 0;
    for (std::size_t b : bars) {
        // Stars between consecutive bars; bar j sits at slot b, j bars precede it.
        extra[part] = b - prev;
        prev = b + 1;
        ++part;
    }
    extra[part] = slots - prev;

    const std::size_t anchor = static_cast<std::size_t>(rng.index(n)) + 1;
    RegularPartition p{n, {}};
    p.starts.reserve(l);
    std::size_t pos = anchor;
    for (std::size_t s = 0; s < l; ++s) {
        p.starts.push_back(pos);
        pos = ring_position(n, pos, kMinGap + extra[s]);
    }
    std::sort(p.starts.begin(), p.starts.end());
    return p;
}

}  // namespace sv
