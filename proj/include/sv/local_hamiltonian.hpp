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

#include <algorithm>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "sv/common.hpp"
#include "sv/pauli.hpp"

namespace sv {

/// One local term: real Pauli coefficients over an ordered support of sites.
struct LocalTerm {
    std::vector<std::size_t> sites;
    /// Pauli string over `sites` (same length) -> coefficient.
    std::map<std::string, double> paulis;
};

/// H = sum_k H^(k) on n_sites qubits, each term acting on at most `locality` sites.
/// Sites are 0-based.
struct LocalHamiltonian {
    std::size_t n_sites = 0;
    std::size_t locality = 0;
    std::vector<LocalTerm> terms;

    void validate() const {
        if (n_sites == 0 || locality == 0) {
            throw ConfigError("LocalHamiltonian: n and L must be positive");
        }
        if (terms.empty()) {
            throw ConfigError("LocalHamiltonian: no terms");
        }
        for (const auto &t : terms) {
            if (t.sites.empty() || t.sites.size() > locality) {
                throw ConfigError("LocalHamiltonian: term support size must lie in [1, L]");
            }
            auto sorted = t.sites;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                throw ConfigError("LocalHamiltonian: repeated site in a term support");
            }
            for (auto s : t.sites) {
                if (s >= n_sites) {
                    throw ConfigError("LocalHamiltonian: site index " + std::to_string(s) + " out of range");
                }
            }
            for (const auto &[p, c] : t.paulis) {
                if (p.size() != t.sites.size()) {
                    throw ConfigError("LocalHamiltonian: Pauli string '" + p + "' does not match its support");
                }
                (void)PauliString::parse(p);
                if (!std::isfinite(c)) {
                    throw ConfigError("LocalHamiltonian: non-finite coefficient");
                }
            }
        }
    }

    /// Row k lists the sites of term k (the neighbouring matrix).
    std::vector<std::vector<std::size_t>> neighbour_matrix() const {
        std::vector<std::vector<std::size_t>> m;
        m.reserve(terms.size());
        for (const auto &t : terms) {
            m.push_back(t.sites);
        }
        return m;
    }

    /// Largest number of terms touching one site.
    std::size_t max_site_degree() const {
        std::vector<std::size_t> deg(n_sites, 0);
        for (const auto &t : terms) {
            for (auto s : t.sites) {
                ++deg[s];
            }
        }
        return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    }

    PauliObservable term_observable(std::size_t k) const {
        PauliObservable o(n_sites);
        for (const auto &[p, c] : terms.at(k).paulis) {
            o.add(c, PauliString::embed(n_sites, terms[k].sites, PauliString::parse(p)));
        }
        return o;
    }

    PauliObservable to_observable() const {
        PauliObservable o(n_sites);
        for (std::size_t k = 0; k < terms.size(); ++k) {
            o += term_observable(k);
        }
        return o;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["n"] = n_sites;
        j["L"] = locality;
        j["terms"] = nlohmann::ordered_json::array();
        for (const auto &t : terms) {
            nlohmann::ordered_json jt;
            jt["sites"] = t.sites;
            jt["paulis"] = nlohmann::ordered_json::object();
            for (const auto &[p, c] : t.paulis) {
                jt["paulis"][p] = c;
            }
            j["terms"].push_back(jt);
        }
        return j;
    }

    static LocalHamiltonian from_json(const nlohmann::json &j) {
        LocalHamiltonian h;
        try {
            h.n_sites = j.at("n").get<std::size_t>();
            h.locality = j.at("L").get<std::size_t>();
            for (const auto &jt : j.at("terms")) {
                LocalTerm t;
                t.sites = jt.at("sites").get<std::vector<std::size_t>>();
                for (const auto &[k, v] : jt.at("paulis").items()) {
                    t.paulis[k] = v.get<double>();
                }
                h.terms.push_back(std::move(t));
            }
        } catch (const nlohmann::json::exception &e) {
            throw ConfigError(std::string("malformed Hamiltonian JSON: ") + e.what());
        }
        h.validate();
        return h;
    }

    static LocalHamiltonian load(const std::string &path) {
        std::ifstream in(path);
        if (!in) {
            throw IoError("cannot open Hamiltonian file '" + path + "'");
        }
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception &e) {
            throw ConfigError("cannot parse Hamiltonian file '" + path + "': " + e.what());
        }
        return from_json(j);
    }
};

/// Periodic Heisenberg ring, J (XX + YY + ZZ) on every bond (k, k+1 mod n).
/// J = 1/4 gives the spin-1/2 normalization S.S.
inline LocalHamiltonian heisenberg_ring(std::size_t n, double j = 0.25) {
    if (n < 3) {
        throw ConfigError("heisenberg_ring: need n >= 3");
    }
    LocalHamiltonian h{n, 2, {}};
    for (std::size_t k = 0; k < n; ++k) {
        h.terms.push_back({{k, (k + 1) % n}, {{"XX", j}, {"YY", j}, {"ZZ", j}}});
    }
    return h;
}

/// -sum_k Z_{k-1} X_k Z_{k+1}: its ground state is the ring cluster state.
inline LocalHamiltonian lcs_parent(std::size_t n) {
    if (n < 3) {
        throw ConfigError("lcs_parent: need n >= 3");
    }
    LocalHamiltonian h{n, 3, {}};
    for (std::size_t k = 0; k < n; ++k) {
        h.terms.push_back({{(k + n - 1) % n, k, (k + 1) % n}, {{"ZXZ", -1.0}}});
    }
    return h;
}

/// c sum_k Z_k.
inline LocalHamiltonian z_field(std::size_t n, double c = 1.0) {
    LocalHamiltonian h{n, 1, {}};
    for (std::size_t k = 0; k < n; ++k) {
        h.terms.push_back({{k}, {{"Z", c}}});
    }
    return h;
}

}  // namespace sv
