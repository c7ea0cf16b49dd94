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

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "sv/common.hpp"

namespace sv {

/// SplitMix64 finalizer. Used only to derive seeds, never as the sampling engine.
constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of trial `index` in a campaign with `master_seed`:
/// splitmix64(splitmix64(master_seed) ^ splitmix64(index ^ 0xD1B54A32D192ED03)).
/// The value depends only on the pair, so any thread may run any trial.
constexpr uint64_t derive_trial_seed(uint64_t master_seed, uint64_t index) {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL));
}

/// A seeded stream of random draws. One stream belongs to one trial.
///
/// All conversions from raw 64-bit words are written out here instead of
/// going through <random> distributions, whose output is implementation
/// defined; record files must be identical across standard libraries.
class RandomStream {
   public:
    explicit RandomStream(uint64_t seed) : engine_(seed) {
    }

    static RandomStream for_trial(uint64_t master_seed, uint64_t index) {
        return RandomStream(derive_trial_seed(master_seed, index));
    }

    uint64_t next_u64() {
        return engine_();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

    bool coin() {
        return (engine_() >> 63) != 0;
    }

    /// Unbiased integer in [0, n). Rejection on the top of the 64-bit range.
    uint64_t index(uint64_t n) {
        if (n == 0) {
            throw ConfigError("RandomStream::index: empty range");
        }
        const uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
        uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % n;
    }

    /// Point drawn uniformly from the unit sphere, as (theta, phi).
    std::pair<double, double> sphere_angles() {
        const double cos_theta = 1.0 - 2.0 * uniform();
        const double phi = 2.0 * 3.14159265358979323846 * uniform();
        return {std::acos(cos_theta), phi};
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace sv
