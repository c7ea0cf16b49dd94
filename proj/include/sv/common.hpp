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

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sv {

/// Invalid arguments, violated preconditions and malformed configuration.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// File-system failures while reading or writing campaign artifacts.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
inline std::atomic<std::size_t> &dense_limit_storage() {
    static std::atomic<std::size_t> limit{20};
    return limit;
}
}  // namespace detail

/// Largest qubit count any dense (statevector) object may have.
inline std::size_t dense_limit() {
    return detail::dense_limit_storage().load(std::memory_order_relaxed);
}

inline void set_dense_limit(std::size_t qubits) {
    if (qubits == 0 || qubits > 30) {
        throw ConfigError("dense limit must lie in [1, 30]");
    }
    detail::dense_limit_storage().store(qubits, std::memory_order_relaxed);
}

inline void require_dense(std::size_t qubits) {
    if (qubits > dense_limit()) {
        throw ConfigError("dense limit exceeded: " + std::to_string(qubits) + " qubits > " +
                          std::to_string(dense_limit()));
    }
}

/// Rounds to 12 significant digits; every number the tools print goes through this.
inline double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) {
        return x;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

inline std::string format12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

/// Clamps a probability bound to [0, 1]; NaN maps to the vacuous bound 1.
inline double clamp01(double x) {
    if (std::isnan(x)) {
        return 1.0;
    }
    if (x < 0.0) {
        return 0.0;
    }
    return x > 1.0 ? 1.0 : x;
}

}  // namespace sv
