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
/// Campaigns: many independent trials under one configuration, aggregated into
/// a success frequency and a certificate, with records persisted as JSON lines
/// (canonical) or CSV (lossy).
///
/// Trial i always draws from RandomStream::for_trial(master_seed, i), whatever
/// the thread count, and results are reduced in trial order, so a campaign's
/// record file depends only on its configuration.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "sv/bounds.hpp"
#include "sv/hamiltonian.hpp"
#include "sv/noise.hpp"
#include "sv/protocols.hpp"
#include "sv/sep_oracle.hpp"
#include "sv/stabilizer.hpp"

namespace sv {

enum class DeltaPolicy { fixed, posthoc };
enum class RecordFormat { json_lines, csv };
enum class Engine { stabilizer, dense };

inline RecordFormat format_from_string(const std::string &s) {
    if (s == "jsonl" || s == "json-lines" || s == "json") {
        return RecordFormat::json_lines;
    }
    if (s == "csv") {
        return RecordFormat::csv;
    }
    throw ConfigError("unknown record format '" + s + "'");
}

/// Parsed state specification:
///   target              the scheme's ideal state
///   product:<symbols>   single-qubit states 0 1 + - r l, tiled over the register
///   product:oracle      the product state maximizing the per-unit success (or
///                       minimizing the energy), tiled
///   noisy:<lambda>      lambda white noise + (1 - lambda) target
struct StateSpec {
    enum class Kind { target, product, product_oracle, noisy };
    Kind kind = Kind::target;
    std::string symbols;
    double lambda = 0.0;

    static StateSpec parse(const std::string &text) {
        StateSpec s;
        if (text == "target") {
            return s;
        }
        if (text == "product:oracle") {
            s.kind = Kind::product_oracle;
            return s;
        }
        if (text.rfind("product:", 0) == 0) {
            s.kind = Kind::product;
            s.symbols = text.substr(8);
            (void)single_qubit_states(s.symbols);
            if (s.symbols.empty()) {
                throw ConfigError("state spec 'product:' needs symbols");
            }
            return s;
        }
        if (text.rfind("noisy:", 0) == 0) {
            s.kind = Kind::noisy;
            try {
                std::size_t used = 0;
                s.lambda = std::stod(text.substr(6), &used);
                if (used != text.size() - 6) {
                    throw std::invalid_argument("trailing characters");
                }
            } catch (const std::exception &) {
                throw ConfigError("bad noise level in state spec '" + text + "'");
            }
            if (!(s.lambda >= 0.0 && s.lambda <= 1.0)) {
                throw ConfigError("noise level must lie in [0, 1]");
            }
            return s;
        }
        throw ConfigError("unknown state spec '" + text + "'");
    }
};

struct CampaignConfig {
    Scheme scheme = Scheme::singlet;
    /// Singlet scheme: number of pairs K.
    std::size_t num_pairs = 8;
    /// Cluster scheme: ring size and cluster count.
    std::size_t num_qubits = 24;
    std::size_t num_clusters = 8;
    /// Energy scheme.
    std::optional<LocalHamiltonian> hamiltonian;
    std::size_t oracle_restarts = 64;

    std::array<double, 3> setting_distribution = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    uint64_t trials = 1;
    uint64_t master_seed = 0;
    std::string state = "target";
    /// Overrides the state's noise: lambda noise + (1 - lambda) state.
    std::optional<NoiseModel> noise;
    Engine engine = Engine::stabilizer;

    DeltaPolicy delta_policy = DeltaPolicy::fixed;
    /// Threshold for the fixed policy. Unset means 1/3 for the binary schemes
    /// and g_E / 2 for the energy scheme.
    std::optional<double> delta;

    /// 0 picks SV_THREADS, then the hardware concurrency.
    std::size_t threads = 0;
    std::string out_path;
    RecordFormat format = RecordFormat::json_lines;

    void validate() const {
        if (trials < 1) {
            throw ConfigError("trial count must be at least 1");
        }
        (void)StateSpec::parse(state);
        if (delta && !std::isfinite(*delta)) {
            throw ConfigError("delta must be finite");
        }
        if (noise) {
            noise->validate();
        }
        switch (scheme) {
            case Scheme::singlet:
                SingletTrialConfig{num_pairs, setting_distribution, 1.0 / 3.0}.validate();
                break;
            case Scheme::lcs:
                LcsTrialConfig{num_qubits, num_clusters, setting_distribution, 1.0 / 3.0}.validate();
                break;
            case Scheme::hamiltonian:
                if (!hamiltonian) {
                    throw ConfigError("energy scheme needs a Hamiltonian");
                }
                hamiltonian->validate();
                break;
        }
    }
};

struct CampaignSummary {
    Scheme scheme = Scheme::singlet;
    uint64_t trials = 0;
    uint64_t successes = 0;
    double frequency = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 1.0;
    /// Pooled delta-hat over all records.
    double pooled_delta_hat = 0.0;
    /// Threshold at which `successes` was scored.
    double delta = 0.0;
    Certificate certificate;
    std::optional<GapReport> gap;
    double mean_energy = 0.0;
    double wall_seconds = 0.0;
    std::size_t threads = 1;
};

inline constexpr double kWilsonZ95 = 1.959963984540054;

/// Wilson score interval for k successes in n trials.
inline std::pair<double, double> wilson_interval(uint64_t k, uint64_t n, double z = kWilsonZ95) {
    if (n == 0) {
        throw ConfigError("wilson_interval: no trials");
    }
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, std::min(p, centre - half)), std::min(1.0, std::max(p, centre + half))};
}

inline std::size_t default_thread_count() {
    if (const char *env = std::getenv("SV_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
        throw ConfigError("SV_THREADS must be a positive integer");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, count) on `threads` workers. The first exception wins.
template <typename Fn>
void parallel_for(uint64_t count, std::size_t threads, Fn &&fn) {
    threads = std::max<std::size_t>(1, std::min<uint64_t>(threads, count));
    if (threads == 1) {
        for (uint64_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const uint64_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                    failed = true;
                }
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

/// Product state on two qubits maximizing the pair success probability, tiled.
inline StateHandle singlet_oracle_product(std::size_t num_pairs, RandomStream &rng) {
    const auto res = max_product_expectation(singlet_success_observable(), OracleMethod::seesaw, rng);
    return tiled_product(res.maximizer.states(), 2 * num_pairs);
}

namespace detail {

inline uint64_t oracle_seed(uint64_t master_seed) {
    return splitmix64(master_seed ^ 0x6F7261636C65ULL);
}

inline StateHandle target_source(const CampaignConfig &cfg, const std::optional<GroundState> &gs) {
    switch (cfg.scheme) {
        case Scheme::singlet:
            return StateHandle::product(std::vector<PureState>(cfg.num_pairs, make_singlet()));
        case Scheme::lcs:
            if (cfg.engine == Engine::dense) {
                return StateHandle::dense(make_lcs_dense(cfg.num_qubits));
            }
            return StateHandle::tableau(init_lcs(cfg.num_qubits));
        default:
            return StateHandle::dense(gs->state);
    }
}

inline std::size_t register_size(const CampaignConfig &cfg) {
    switch (cfg.scheme) {
        case Scheme::singlet:
            return 2 * cfg.num_pairs;
        case Scheme::lcs:
            return cfg.num_qubits;
        default:
            return cfg.hamiltonian->n_sites;
    }
}

}  // namespace detail

/// Everything a campaign needs before its trials run.
struct PreparedCampaign {
    CampaignConfig cfg;
    StateHandle source = StateHandle::white_noise(1);
    std::optional<HamiltonianScheme> energy;
    double run_delta = 1.0 / 3.0;
};

inline PreparedCampaign prepare_campaign(const CampaignConfig &cfg) {
    cfg.validate();
    PreparedCampaign p;
    p.cfg = cfg;
    RandomStream oracle_rng(detail::oracle_seed(cfg.master_seed));
    std::optional<GroundState> gs;
    if (cfg.scheme == Scheme::hamiltonian) {
        gs = ground_state(*cfg.hamiltonian);
        HamiltonianScheme hs;
        hs.h = *cfg.hamiltonian;
        hs.tensors = decompose(hs.h);
        hs.gap = compute_gap_report(hs.h, oracle_rng, gs->state, cfg.oracle_restarts);
        p.energy = std::move(hs);
    }
    const StateSpec spec = StateSpec::parse(cfg.state);
    const std::size_t n = detail::register_size(cfg);
    switch (spec.kind) {
        case StateSpec::Kind::target:
            p.source = detail::target_source(cfg, gs);
            break;
        case StateSpec::Kind::product:
            p.source = tiled_product(single_qubit_states(spec.symbols), n);
            break;
        case StateSpec::Kind::product_oracle:
            if (cfg.scheme == Scheme::singlet) {
                p.source = singlet_oracle_product(cfg.num_pairs, oracle_rng);
            } else if (cfg.scheme == Scheme::hamiltonian) {
                p.source = StateHandle::product(p.energy->gap.separable_minimizer.states());
            } else {
                throw ConfigError("state 'product:oracle' is available for the singlet and energy schemes");
            }
            break;
        case StateSpec::Kind::noisy:
            p.source = make_noisy_source(NoiseModel::white(spec.lambda), detail::target_source(cfg, gs));
            break;
    }
    if (cfg.noise) {
        p.source = make_noisy_source(*cfg.noise, p.source);
    }
    if (cfg.scheme == Scheme::hamiltonian) {
        const double g = p.energy->gap.g_e;
        if (!(g > 0.0)) {
            throw ConfigError("Hamiltonian has no entanglement gap (g_E = " + format12(g) + ")");
        }
        p.run_delta = cfg.delta_policy == DeltaPolicy::fixed && cfg.delta ? *cfg.delta : g / 2.0;
    } else {
        p.run_delta = cfg.delta_policy == DeltaPolicy::fixed && cfg.delta ? *cfg.delta : 1.0 / 3.0;
    }
    return p;
}

/// Rounds floating-point record fields to 12 significant digits, the precision
/// of every exported file.
inline void normalize_record(TrialRecord &r) {
    r.energy = round12(r.energy);
    r.delta_hat = round12(r.delta_hat);
}

inline TrialRecord run_trial(const PreparedCampaign &p, uint64_t index) {
    RandomStream rng = RandomStream::for_trial(p.cfg.master_seed, index);
    TrialRecord r;
    switch (p.cfg.scheme) {
        case Scheme::singlet:
            r = run_singlet_trial({p.cfg.num_pairs, p.cfg.setting_distribution, p.run_delta}, p.source, rng);
            break;
        case Scheme::lcs:
            r = run_lcs_trial({p.cfg.num_qubits, p.cfg.num_clusters, p.cfg.setting_distribution, p.run_delta},
                              p.source, rng);
            break;
        case Scheme::hamiltonian:
            r = run_hamiltonian_trial(*p.energy, p.source, p.run_delta, rng);
            break;
    }
    r.trial = index;
    normalize_record(r);
    return r;
}

/// Pooled delta-hat: sum R / sum K - 2/3, or eps_s - mean(H) / n for energies.
inline double pooled_delta_hat(const std::vector<TrialRecord> &records, const std::optional<GapReport> &gap) {
    if (records.empty()) {
        throw ConfigError("pooled_delta_hat: no records");
    }
    if (records.front().scheme != Scheme::hamiltonian) {
        return post_hoc_delta(records);
    }
    if (!gap) {
        throw ConfigError("pooled_delta_hat: energy records need a gap report");
    }
    double sum = 0.0;
    for (const auto &r : records) {
        sum += r.energy;
    }
    return gap->epsilon_s - sum / static_cast<double>(records.size()) / static_cast<double>(gap->n_sites);
}

/// Success of a record re-scored at `delta`.
inline bool rescore(const TrialRecord &r, double delta, const std::optional<GapReport> &gap) {
    if (r.scheme != Scheme::hamiltonian) {
        return evaluate_cost(r, delta);
    }
    return r.energy <= static_cast<double>(gap->n_sites) * (gap->epsilon_s - delta) + kThresholdSlack;
}

/// Certificate for records scored at `delta`.
inline Certificate certify_records(const std::vector<TrialRecord> &records, double delta,
                                   const std::optional<GapReport> &gap) {
    if (records.empty()) {
        throw ConfigError("certify_records: no records");
    }
    const Scheme s = records.front().scheme;
    if (s == Scheme::hamiltonian) {
        if (!gap) {
            throw ConfigError("certify_records: energy records need a gap report");
        }
        return make_mcdiarmid_certificate(static_cast<long long>(gap->n_sites), delta, gap->kappa2, gap->beta2,
                                          gap->g_e, gap->effective_size());
    }
    return make_chernoff_certificate(s, delta, static_cast<long long>(records.front().units()));
}

/// Aggregates records, re-scoring each at the fixed `delta` or, under the
/// posthoc policy, at the pooled delta-hat.
inline CampaignSummary summarize(std::vector<TrialRecord> &records, DeltaPolicy policy, double delta,
                                 const std::optional<GapReport> &gap) {
    if (records.empty()) {
        throw ConfigError("summarize: no records");
    }
    CampaignSummary s;
    s.scheme = records.front().scheme;
    s.trials = records.size();
    s.gap = gap;
    s.pooled_delta_hat = round12(pooled_delta_hat(records, gap));
    s.delta = policy == DeltaPolicy::posthoc ? s.pooled_delta_hat : delta;
    double energy = 0.0;
    for (auto &r : records) {
        r.success = rescore(r, s.delta, gap);
        s.successes += r.success ? 1 : 0;
        energy += r.energy;
    }
    s.mean_energy = energy / static_cast<double>(records.size());
    s.frequency = static_cast<double>(s.successes) / static_cast<double>(s.trials);
    std::tie(s.wilson_low, s.wilson_high) = wilson_interval(s.successes, s.trials);
    s.certificate = certify_records(records, s.delta, gap);
    return s;
}

// Persistence.

inline nlohmann::ordered_json record_to_json(const TrialRecord &r) {
    nlohmann::ordered_json j;
    j["trial"] = r.trial;
    j["scheme"] = to_string(r.scheme);
    if (r.scheme == Scheme::lcs) {
        j["partition"] = r.partition;
    }
    j["settings"] = r.settings;
    j["bases"] = r.bases;
    j["outcomes"] = r.outcomes;
    if (r.scheme == Scheme::hamiltonian) {
        j["H"] = round12(r.energy);
    } else {
        j["local_costs"] = r.local_costs;
        j["R"] = r.aggregate;
    }
    j["delta_hat"] = round12(r.delta_hat);
    j["success"] = r.success;
    if (!r.branch.empty()) {
        j["branch"] = r.branch;
    }
    return j;
}

inline TrialRecord record_from_json(const nlohmann::json &j) {
    TrialRecord r;
    try {
        r.trial = j.at("trial").get<uint64_t>();
        r.scheme = scheme_from_string(j.at("scheme").get<std::string>());
        if (j.contains("partition")) {
            r.partition = j.at("partition").get<std::vector<std::size_t>>();
        }
        r.settings = j.at("settings").get<std::vector<std::string>>();
        r.bases = j.at("bases").get<std::string>();
        r.outcomes = j.at("outcomes").get<std::string>();
        if (r.scheme == Scheme::hamiltonian) {
            r.energy = j.at("H").get<double>();
        } else {
            r.local_costs = j.at("local_costs").get<std::vector<int>>();
            r.aggregate = j.at("R").get<long long>();
        }
        r.delta_hat = j.at("delta_hat").get<double>();
        r.success = j.at("success").get<bool>();
        if (j.contains("branch")) {
            r.branch = j.at("branch").get<std::string>();
        }
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("malformed record: ") + e.what());
    }
    return r;
}

inline constexpr const char *kCsvHeader = "trial,scheme,settings,bases,outcomes,local_costs,R,H,delta_hat,success,branch";

inline std::string record_to_csv(const TrialRecord &r) {
    std::ostringstream out;
    out << r.trial << ',' << to_string(r.scheme) << ',';
    for (std::size_t i = 0; i < r.settings.size(); ++i) {
        out << (i ? ";" : "") << r.settings[i];
    }
    out << ',' << r.bases << ',' << r.outcomes << ',';
    for (int f : r.local_costs) {
        out << f;
    }
    out << ',';
    if (r.scheme == Scheme::hamiltonian) {
        out << ',' << format12(r.energy);
    } else {
        out << r.aggregate << ',';
    }
    out << ',' << format12(r.delta_hat) << ',' << (r.success ? 1 : 0) << ',' << r.branch;
    return out.str();
}

inline void write_records(const std::vector<TrialRecord> &records, std::ostream &out, RecordFormat format) {
    if (format == RecordFormat::csv) {
        out << kCsvHeader << '\n';
        for (const auto &r : records) {
            out << record_to_csv(r) << '\n';
        }
        return;
    }
    for (const auto &r : records) {
        out << record_to_json(r).dump() << '\n';
    }
}

inline void export_records(const std::vector<TrialRecord> &records, const std::string &path, RecordFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_records(records, out, format);
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

/// Reads a JSON-lines record file; blank lines are skipped.
inline std::vector<TrialRecord> import_records(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::vector<TrialRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            records.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception &e) {
            throw ConfigError("'" + path + "' line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

struct CampaignResult {
    CampaignSummary summary;
    std::vector<TrialRecord> records;
};

inline CampaignResult run_campaign(const CampaignConfig &cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const PreparedCampaign p = prepare_campaign(cfg);
    const std::size_t threads = cfg.threads ? cfg.threads : default_thread_count();
    CampaignResult res;
    res.records.resize(cfg.trials);
    parallel_for(cfg.trials, threads, [&](uint64_t i) { res.records[i] = run_trial(p, i); });
    std::optional<GapReport> gap;
    if (p.energy) {
        gap = p.energy->gap;
    }
    res.summary = summarize(res.records, cfg.delta_policy, p.run_delta, gap);
    if (!cfg.out_path.empty()) {
        export_records(res.records, cfg.out_path, cfg.format);
    }
    res.summary.threads = std::max<std::size_t>(1, std::min<uint64_t>(threads, cfg.trials));
    res.summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline nlohmann::ordered_json certificate_to_json(const Certificate &c) {
    nlohmann::ordered_json j;
    j["scheme"] = to_string(c.scheme);
    j["delta"] = round12(c.delta);
    j["k_or_n"] = c.k_or_n;
    j["bound"] = round12(c.bound);
    j["confidence"] = round12(c.confidence);
    for (const auto &[k, v] : c.constants) {
        j["constants"][k] = round12(v);
    }
    return j;
}

inline nlohmann::ordered_json gap_to_json(const GapReport &g) {
    nlohmann::ordered_json j;
    j["epsilon_0"] = round12(g.epsilon0);
    j["epsilon_s"] = round12(g.epsilon_s);
    j["g_e"] = round12(g.g_e);
    j["A"] = round12(g.a);
    j["B"] = round12(g.b);
    j["h_max"] = round12(g.h_max);
    j["kappa2"] = round12(g.kappa2);
    j["beta2"] = round12(g.beta2);
    j["n_terms"] = g.n_terms;
    return j;
}

inline nlohmann::ordered_json summary_to_json(const CampaignSummary &s) {
    nlohmann::ordered_json j;
    j["scheme"] = to_string(s.scheme);
    j["trials"] = s.trials;
    j["successes"] = s.successes;
    j["frequency"] = round12(s.frequency);
    j["wilson95"] = {round12(s.wilson_low), round12(s.wilson_high)};
    j["pooled_delta_hat"] = round12(s.pooled_delta_hat);
    j["delta"] = round12(s.delta);
    if (s.scheme == Scheme::hamiltonian) {
        j["mean_H"] = round12(s.mean_energy);
    }
    j["certificate"] = certificate_to_json(s.certificate);
    if (s.gap) {
        j["gap"] = gap_to_json(*s.gap);
    }
    j["threads"] = s.threads;
    j["wall_seconds"] = round12(s.wall_seconds);
    return j;
}

}  // namespace sv
