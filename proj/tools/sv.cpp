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

// Command-line front end. Exit codes: 0 ok, 2 configuration error, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sv/sv.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct GlobalOptions {
    uint64_t seed = 0;
    uint64_t trials = 1;
    std::string out;
    std::string format = "jsonl";
    std::size_t threads = 0;
};

struct SchemeOptions {
    std::size_t pairs = 8;
    std::size_t n = 24;
    std::size_t l = 8;
    std::string file;
    std::size_t heisenberg = 0;
    std::size_t restarts = 64;
    std::string state = "target";
    std::string engine = "stabilizer";
    double delta = 0.0;
    bool posthoc = false;
};

void add_scheme_options(CLI::App *cmd, SchemeOptions &o, sv::Scheme scheme, bool any_scheme = false) {
    if (any_scheme || scheme == sv::Scheme::singlet) {
        cmd->add_option("--pairs", o.pairs, "Number of singlet pairs K")->capture_default_str();
    }
    if (any_scheme || scheme == sv::Scheme::lcs) {
        cmd->add_option("--n", o.n, "Ring size")->capture_default_str();
        cmd->add_option("--l", o.l, "Clusters per partition")->capture_default_str();
        cmd->add_option("--engine", o.engine, "Target simulator: stabilizer | dense")->capture_default_str();
    }
    if (any_scheme || scheme == sv::Scheme::hamiltonian) {
        cmd->add_option("--file", o.file, "Hamiltonian JSON file");
        cmd->add_option("--heisenberg", o.heisenberg, "Built-in Heisenberg ring of this size");
        cmd->add_option("--restarts", o.restarts, "See-saw restarts for eps_s")->capture_default_str();
    }
    cmd->add_option("--state", o.state,
                    "target | product:<0 1 + - r l> | product:oracle | noisy:<lambda>")
        ->capture_default_str();
    cmd->add_option("--delta", o.delta, "Fixed threshold delta (default 1/3, or g_E/2 for energies)");
    cmd->add_flag("--posthoc", o.posthoc, "Score at the pooled delta-hat instead of a fixed delta");
}

sv::LocalHamiltonian load_hamiltonian(const SchemeOptions &o) {
    if (!o.file.empty() && o.heisenberg != 0) {
        throw sv::ConfigError("give either --file or --heisenberg, not both");
    }
    if (!o.file.empty()) {
        return sv::LocalHamiltonian::load(o.file);
    }
    if (o.heisenberg != 0) {
        return sv::heisenberg_ring(o.heisenberg);
    }
    throw sv::ConfigError("energy scheme needs --file or --heisenberg");
}

sv::CampaignConfig make_config(sv::Scheme scheme, const GlobalOptions &g, const SchemeOptions &o,
                               const CLI::App *cmd) {
    sv::CampaignConfig cfg;
    cfg.scheme = scheme;
    cfg.num_pairs = o.pairs;
    cfg.num_qubits = o.n;
    cfg.num_clusters = o.l;
    cfg.oracle_restarts = o.restarts;
    if (o.engine == "dense") {
        cfg.engine = sv::Engine::dense;
    } else if (o.engine != "stabilizer") {
        throw sv::ConfigError("unknown engine '" + o.engine + "'");
    }
    if (scheme == sv::Scheme::hamiltonian) {
        cfg.hamiltonian = load_hamiltonian(o);
    }
    cfg.trials = g.trials;
    cfg.master_seed = g.seed;
    cfg.state = o.state;
    cfg.threads = g.threads;
    cfg.out_path = g.out;
    cfg.format = sv::format_from_string(g.format);
    const bool has_delta = cmd->count("--delta") > 0;
    if (o.posthoc && has_delta) {
        throw sv::ConfigError("--delta and --posthoc are exclusive");
    }
    cfg.delta_policy = o.posthoc ? sv::DeltaPolicy::posthoc : sv::DeltaPolicy::fixed;
    if (has_delta) {
        cfg.delta = o.delta;
    }
    return cfg;
}

void print_summary(const sv::CampaignSummary &s) {
    std::cout << sv::summary_to_json(s).dump(2) << '\n';
}

sv::PauliObservable load_observable(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw sv::IoError("cannot open observable file '" + path + "'");
    }
    try {
        const auto j = nlohmann::json::parse(in);
        sv::PauliObservable obs(j.at("n").get<std::size_t>());
        for (const auto &t : j.at("terms")) {
            obs.add(t.at("coef").get<double>(), t.at("paulis").get<std::string>());
        }
        return obs;
    } catch (const nlohmann::json::exception &e) {
        throw sv::ConfigError("malformed observable file '" + path + "': " + e.what());
    }
}

int run(int argc, char **argv) {
    CLI::App app{"Single-copy entanglement detection campaigns"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
    app.add_option("--trials", g.trials, "Number of trials")->capture_default_str();
    app.add_option("--out", g.out, "Record file");
    app.add_option("--format", g.format, "Record format: jsonl | csv")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (default: SV_THREADS, then all cores)");
    app.fallthrough();

    SchemeOptions singlet_o;
    SchemeOptions lcs_o;
    SchemeOptions ham_o;
    SchemeOptions noise_o;
    auto *singlet = app.add_subcommand("singlet", "Singlet-pair scheme");
    add_scheme_options(singlet, singlet_o, sv::Scheme::singlet);
    auto *lcs = app.add_subcommand("lcs", "Ring cluster-state scheme");
    add_scheme_options(lcs, lcs_o, sv::Scheme::lcs);
    auto *ham = app.add_subcommand("hamiltonian", "Local-Hamiltonian energy scheme");
    add_scheme_options(ham, ham_o, sv::Scheme::hamiltonian);

    auto *noise = app.add_subcommand("noise", "Scheme run on lambda noise + (1 - lambda) state");
    add_scheme_options(noise, noise_o, sv::Scheme::singlet, true);
    double lambda = 0.0;
    std::string kind = "white";
    std::string noise_scheme = "lcs";
    noise->add_option("--lambda", lambda, "Noise weight")->required();
    noise->add_option("--kind", kind, "white | colored:<file>")->capture_default_str();
    noise->add_option("--scheme", noise_scheme, "singlet | lcs | hamiltonian")->capture_default_str();

    auto *parts = app.add_subcommand("partitions", "Count or list regular partitions");
    std::size_t pn = 8;
    std::size_t pl = 2;
    bool list = false;
    parts->add_option("--n", pn, "Ring size")->capture_default_str();
    parts->add_option("--l", pl, "Clusters")->capture_default_str();
    parts->add_flag("--list", list, "Print every partition");

    auto *oracle = app.add_subcommand("oracle", "Maximize an observable over product states");
    std::string obs_file;
    std::string builtin;
    std::string method = "seesaw";
    oracle->add_option("--obs", obs_file, "Observable JSON file");
    oracle->add_option("--builtin", builtin, "singlet | cluster");
    oracle->add_option("--method", method, "grid | seesaw")->capture_default_str();

    auto *certify = app.add_subcommand("certify", "Certificate recomputed from a record file");
    std::string in_path;
    SchemeOptions cert_o;
    certify->add_option("--in", in_path, "JSON-lines record file")->required();
    certify->add_option("--delta", cert_o.delta, "Threshold (default: pooled delta-hat)");
    certify->add_option("--file", cert_o.file, "Hamiltonian JSON file (energy records)");
    certify->add_option("--heisenberg", cert_o.heisenberg, "Built-in Heisenberg ring (energy records)");
    certify->add_option("--restarts", cert_o.restarts, "See-saw restarts for eps_s")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (singlet->parsed()) {
        print_summary(sv::run_campaign(make_config(sv::Scheme::singlet, g, singlet_o, singlet)).summary);
    } else if (lcs->parsed()) {
        print_summary(sv::run_campaign(make_config(sv::Scheme::lcs, g, lcs_o, lcs)).summary);
    } else if (ham->parsed()) {
        print_summary(sv::run_campaign(make_config(sv::Scheme::hamiltonian, g, ham_o, ham)).summary);
    } else if (noise->parsed()) {
        auto cfg = make_config(sv::scheme_from_string(noise_scheme), g, noise_o, noise);
        if (kind == "white") {
            cfg.noise = sv::NoiseModel::white(lambda);
        } else if (kind.rfind("colored:", 0) == 0) {
            cfg.noise = sv::NoiseModel::load_colored(lambda, kind.substr(8));
        } else {
            throw sv::ConfigError("unknown noise kind '" + kind + "'");
        }
        print_summary(sv::run_campaign(cfg).summary);
    } else if (parts->parsed()) {
        nlohmann::ordered_json j;
        j["n"] = pn;
        j["l"] = pl;
        j["count"] = sv::count_regular(pn, pl);
        if (list) {
            j["partitions"] = nlohmann::ordered_json::array();
            for (const auto &p : sv::enumerate_regular(pn, pl)) {
                j["partitions"].push_back(p.starts);
            }
        }
        std::cout << j.dump() << '\n';
    } else if (oracle->parsed()) {
        sv::PauliObservable obs;
        if (!obs_file.empty() && !builtin.empty()) {
            throw sv::ConfigError("give either --obs or --builtin, not both");
        }
        if (builtin == "singlet") {
            obs = sv::singlet_success_observable();
        } else if (builtin == "cluster") {
            obs = sv::cluster_success_observable();
        } else if (!builtin.empty()) {
            throw sv::ConfigError("unknown builtin observable '" + builtin + "'");
        } else if (!obs_file.empty()) {
            obs = load_observable(obs_file);
        } else {
            throw sv::ConfigError("oracle needs --obs or --builtin");
        }
        sv::OracleMethod m;
        if (method == "grid") {
            m = sv::OracleMethod::grid;
        } else if (method == "seesaw") {
            m = sv::OracleMethod::seesaw;
        } else {
            throw sv::ConfigError("unknown oracle method '" + method + "'");
        }
        sv::RandomStream rng(g.seed);
        const auto res = sv::max_product_expectation(obs, m, rng);
        nlohmann::ordered_json j;
        j["method"] = method;
        j["value"] = sv::round12(res.value);
        j["maximizer"] = nlohmann::ordered_json::array();
        for (std::size_t q = 0; q < res.maximizer.size(); ++q) {
            j["maximizer"].push_back(
                {{"theta", sv::round12(res.maximizer.theta[q])}, {"phi", sv::round12(res.maximizer.phi[q])}});
        }
        std::cout << j.dump(2) << '\n';
    } else if (certify->parsed()) {
        auto records = sv::import_records(in_path);
        if (records.empty()) {
            throw sv::ConfigError("record file '" + in_path + "' is empty");
        }
        std::optional<sv::GapReport> gap;
        if (records.front().scheme == sv::Scheme::hamiltonian) {
            const auto h = load_hamiltonian(cert_o);
            sv::RandomStream rng(sv::detail::oracle_seed(g.seed));
            const auto gs = sv::ground_state(h);
            gap = sv::compute_gap_report(h, rng, gs.state, cert_o.restarts);
        }
        const bool fixed = certify->count("--delta") > 0;
        const auto s = sv::summarize(records, fixed ? sv::DeltaPolicy::fixed : sv::DeltaPolicy::posthoc,
                                     cert_o.delta, gap);
        nlohmann::ordered_json j;
        j["trials"] = s.trials;
        j["pooled_delta_hat"] = sv::round12(s.pooled_delta_hat);
        j["certificate"] = sv::certificate_to_json(s.certificate);
        std::cout << j.dump(2) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const sv::ConfigError &e) {
        std::cerr << "sv: " << e.what() << '\n';
        return kExitConfig;
    } catch (const sv::IoError &e) {
        std::cerr << "sv: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception &e) {
        std::cerr << "sv: " << e.what() << '\n';
        return 1;
    }
}
