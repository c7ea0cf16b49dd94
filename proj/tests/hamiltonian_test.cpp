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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "sv/hamiltonian.hpp"

using namespace sv;

namespace {

// Ground energies of the periodic ring with (XX + YY + ZZ)/4 per bond, from an
// independent sparse Lanczos run.
constexpr double kRingE0[] = {-2.0, -2.802775637731993, -3.6510934089371663, -4.515446354492037};
constexpr double kRingE0Twelve = -5.387390917445196;

LocalHamiltonian random_two_local(std::size_t n, RandomStream &rng) {
    LocalHamiltonian h{n, 2, {}};
    const char *names = "IXYZ";
    for (std::size_t k = 0; k < n; ++k) {
        LocalTerm t;
        const std::size_t a = rng.index(n);
        std::size_t b = rng.index(n - 1);
        b += b >= a;
        t.sites = {a, b};
        for (int j = 0; j < 3; ++j) {
            std::string p{names[rng.index(4)], names[rng.index(4)]};
            t.paulis[p] += rng.uniform() * 2.0 - 1.0;
        }
        h.terms.push_back(t);
    }
    h.terms.push_back({{rng.index(n)}, {{"Y", 0.3}}});
    return h;
}

PureState random_state(std::size_t n, RandomStream &rng) {
    std::vector<cplx> a(std::size_t{1} << n);
    for (auto &x : a) {
        x = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
    return PureState::normalized(n, std::move(a));
}

// E[H_N] by summing over every setting string and outcome string.
double exact_estimator_mean(const std::vector<DecompositionTensor> &tensors, const PureState &s) {
    const std::size_t n = s.num_qubits();
    std::size_t settings = 1;
    for (std::size_t q = 0; q < n; ++q) {
        settings *= 3;
    }
    double mean = 0.0;
    for (std::size_t code = 0; code < settings; ++code) {
        PauliString bases(n);
        std::vector<SiteOutcome> out(n);
        std::size_t c = code;
        for (std::size_t q = 0; q < n; ++q) {
            out[q].setting = c % 3;
            c /= 3;
            bases.ops[q] = basis_from_index(out[q].setting);
        }
        const auto p = born_distribution(s, bases);
        for (std::size_t b = 0; b < p.size(); ++b) {
            for (std::size_t q = 0; q < n; ++q) {
                out[q].bit = static_cast<int>((b >> (n - 1 - q)) & 1);
            }
            mean += p[b] * eval_estimator(tensors, out);
        }
    }
    return mean / static_cast<double>(settings);
}

}  // namespace

TEST(Decompose, SingleZ) {
    const auto t = decompose_term({{0}, {{"Z", 1.0}}});
    ASSERT_EQ(t.h.size(), 6u);
    EXPECT_EQ(t.h, (std::vector<double>{0, 0, 0, 0, 1, -1}));
}

TEST(Decompose, Identity) {
    const auto t = decompose_term({{0}, {{"I", 1.0}}});
    for (double v : t.h) {
        EXPECT_NEAR(v, 1.0 / 3.0, 1e-16);
    }
}

TEST(Decompose, HeisenbergBondReconstructs) {
    const LocalTerm term{{0, 1}, {{"XX", 1.0}, {"YY", 1.0}, {"ZZ", 1.0}}};
    const auto t = decompose_term(term);
    EXPECT_LT((reconstruct(t) - term_matrix(term)).norm(), 1e-10);
    EXPECT_EQ(t.at({0, 0}), 1.0);
    EXPECT_EQ(t.at({0, 1}), -1.0);
    EXPECT_EQ(t.at({0, 2}), 0.0);
    EXPECT_EQ(t.max_abs(), 1.0);
}

TEST(Decompose, RandomTermsReconstruct) {
    RandomStream rng(31);
    const char *names = "IXYZ";
    for (std::size_t s = 1; s <= 3; ++s) {
        for (int rep = 0; rep < 10; ++rep) {
            LocalTerm term;
            for (std::size_t j = 0; j < s; ++j) {
                term.sites.push_back(j);
            }
            for (int k = 0; k < 5; ++k) {
                std::string p;
                for (std::size_t j = 0; j < s; ++j) {
                    p.push_back(names[rng.index(4)]);
                }
                term.paulis[p] += rng.uniform() - 0.5;
            }
            const auto t = decompose_term(term);
            EXPECT_LT((reconstruct(t) - term_matrix(term)).operatorNorm(), 1e-10);
        }
    }
}

TEST(Decompose, RejectsMismatchedStrings) {
    EXPECT_THROW(decompose_term({{0, 1}, {{"X", 1.0}}}), ConfigError);
    EXPECT_THROW(decompose_term({{0}, {{"Q", 1.0}}}), ConfigError);
}

TEST(Estimator, SingleSite) {
    const std::vector<DecompositionTensor> z = {decompose_term({{0}, {{"Z", 1.0}}})};
    EXPECT_EQ(eval_estimator(z, std::vector<SiteOutcome>{{2, 0}}), 3.0);
    EXPECT_EQ(eval_estimator(z, std::vector<SiteOutcome>{{2, 1}}), -3.0);
    EXPECT_EQ(eval_estimator(z, std::vector<SiteOutcome>{{0, 1}}), 0.0);
    const std::vector<DecompositionTensor> zero = {{{0}, std::vector<double>(6, 0.0)}};
    EXPECT_EQ(eval_estimator(zero, std::vector<SiteOutcome>{{1, 1}}), 0.0);
    EXPECT_THROW(eval_estimator(z, std::vector<std::optional<SiteOutcome>>{std::nullopt}), ConfigError);
    EXPECT_THROW(eval_estimator(z, std::vector<SiteOutcome>{}), ConfigError);
}

TEST(Estimator, FieldOnOnesIsMinusThreePerZSetting) {
    const auto tensors = decompose(z_field(4));
    std::vector<SiteOutcome> out(4, SiteOutcome{2, 1});
    EXPECT_EQ(eval_estimator(tensors, out), -12.0);
    out[1] = {0, 1};
    EXPECT_EQ(eval_estimator(tensors, out), -9.0);
}

TEST(Estimator, ExactlyUnbiased) {
    RandomStream rng(41);
    for (int h_rep = 0; h_rep < 20; ++h_rep) {
        const std::size_t n = 3 + rng.index(3);
        const auto h = random_two_local(n, rng);
        const auto tensors = decompose(h);
        const auto obs = h.to_observable();
        for (int s_rep = 0; s_rep < 10; ++s_rep) {
            const auto s = random_state(n, rng);
            ASSERT_NEAR(exact_estimator_mean(tensors, s), expectation(s, obs), 1e-10);
        }
    }
}

TEST(Estimator, MonteCarloMeanMatchesExpectation) {
    RandomStream rng(43);
    for (int h_rep = 0; h_rep < 20; ++h_rep) {
        const std::size_t n = 2 + rng.index(5);
        const auto h = random_two_local(n, rng);
        HamiltonianScheme scheme;
        scheme.h = h;
        scheme.tensors = decompose(h);
        scheme.gap.epsilon_s = 1e6;
        scheme.gap.g_e = 1e6;
        const auto s = random_state(n, rng);
        const auto src = StateHandle::dense(s);
        const int trials = 100000;
        double sum = 0.0;
        double sq = 0.0;
        for (int t = 0; t < trials; ++t) {
            RandomStream trng = RandomStream::for_trial(h_rep, t);
            const double e = run_hamiltonian_trial(scheme, src, 1.0, trng).energy;
            sum += e;
            sq += e * e;
        }
        const double mean = sum / trials;
        const double se = std::sqrt((sq / trials - mean * mean) / trials);
        EXPECT_NEAR(mean, expectation(s, h.to_observable()), 4.0 * se) << "instance " << h_rep;
    }
}

TEST(GroundState, ClusterParent) {
    const auto g = ground_state(lcs_parent(6));
    EXPECT_NEAR(g.energy, -6.0, 1e-10);
    EXPECT_NEAR(std::abs(inner_product(g.state.amplitudes(), make_lcs_dense(6).amplitudes())), 1.0, 1e-10);
}

TEST(GroundState, Field) {
    const auto g = ground_state(z_field(3));
    EXPECT_NEAR(g.energy, -3.0, 1e-12);
    EXPECT_NEAR(g.epsilon0, -1.0, 1e-12);
    EXPECT_NEAR(std::abs(g.state[7]), 1.0, 1e-12);
}

TEST(GroundState, HeisenbergRingReference) {
    for (std::size_t i = 0; i < 4; ++i) {
        const std::size_t n = 4 + 2 * i;
        const auto dense = ground_state_dense(heisenberg_ring(n));
        const auto lanczos = ground_state_lanczos(heisenberg_ring(n));
        EXPECT_NEAR(dense.energy, kRingE0[i], 1e-9) << n;
        EXPECT_NEAR(lanczos.energy, kRingE0[i], 1e-9) << n;
        EXPECT_NEAR(std::abs(inner_product(dense.state.amplitudes(), lanczos.state.amplitudes())), 1.0, 1e-6);
    }
    EXPECT_NEAR(ground_state(heisenberg_ring(12)).energy, kRingE0Twelve, 1e-9);
}

TEST(SeparableEnergy, HeisenbergRing) {
    RandomStream rng(5);
    for (std::size_t n : {4, 6, 8, 10}) {
        EXPECT_NEAR(separable_energy(heisenberg_ring(n), rng), -0.25, 1e-9) << n;
    }
    EXPECT_NEAR(separable_energy(z_field(4), rng), -1.0, 1e-12);
}

TEST(GapReport, HeisenbergRingConstants) {
    RandomStream rng(6);
    for (std::size_t i = 0; i < 4; ++i) {
        const std::size_t n = 4 + 2 * i;
        const auto r = compute_gap_report(heisenberg_ring(n), rng);
        const double eps0 = kRingE0[i] / n;
        EXPECT_NEAR(r.epsilon0, eps0, 1e-9);
        EXPECT_NEAR(r.epsilon_s, -0.25, 1e-9);
        EXPECT_NEAR(r.g_e, -0.25 - eps0, 1e-9);
        EXPECT_GT(r.g_e, 0.0);
        EXPECT_NEAR(r.a, 0.25, 1e-15);
        EXPECT_NEAR(r.h_max, 0.25, 1e-15);
        // Every bond carries the same energy in the translation-invariant ground state.
        EXPECT_NEAR(r.b, -eps0, 1e-9);
        EXPECT_NEAR(r.kappa2, 2.0 / 81.0, 1e-15);
        EXPECT_NEAR(r.beta2, 4.0 * (81.0 / 16.0 + eps0 * eps0), 1e-9);
        EXPECT_EQ(r.n_terms, n);
        EXPECT_NEAR(r.effective_size(), double(n), 1e-12);
    }
}

TEST(GapReport, PaddingShortTerms) {
    // A one-site term in an L = 2 model: entries are scaled by 1/3 when padded.
    LocalHamiltonian h{3, 2, {{{0, 1}, {{"ZZ", 1.0}}}, {{2}, {{"X", 0.9}}}}};
    RandomStream rng(7);
    const auto r = compute_gap_report(h, rng);
    EXPECT_NEAR(r.a, 1.0, 1e-15);
    LocalHamiltonian g{3, 2, {{{0, 1}, {{"ZZ", 0.1}}}, {{2}, {{"X", 0.9}}}}};
    EXPECT_NEAR(compute_gap_report(g, rng).a, 0.3, 1e-15);
}

TEST(GapReport, KappaUsesSiteDegrees) {
    // Star: site 0 sits in three bonds, the leaves in one each.
    LocalHamiltonian h{4, 2, {{{0, 1}, {{"ZZ", 1.0}}}, {{0, 2}, {{"ZZ", 1.0}}}, {{0, 3}, {{"ZZ", 1.0}}}}};
    const double k2 = kappa_squared(h, 1.0);
    EXPECT_NEAR(k2, 4.0 / (2.0 * 81.0 * (9.0 + 3.0)), 1e-15);
}

TEST(HamiltonianTrial, DeltaMustLieInsideGap) {
    RandomStream rng(8);
    const auto scheme = HamiltonianScheme::build(heisenberg_ring(4), rng);
    const auto src = StateHandle::dense(ground_state(heisenberg_ring(4)).state);
    EXPECT_THROW(run_hamiltonian_trial(scheme, src, 0.0, rng), ConfigError);
    EXPECT_THROW(run_hamiltonian_trial(scheme, src, scheme.gap.g_e, rng), ConfigError);
    const auto r = run_hamiltonian_trial(scheme, src, scheme.gap.g_e / 2, rng);
    EXPECT_EQ(r.scheme, Scheme::hamiltonian);
    EXPECT_EQ(r.settings.size(), 4u);
    EXPECT_EQ(r.outcomes.size(), 4u);
    EXPECT_NEAR(r.delta_hat, scheme.gap.epsilon_s - r.energy / 4.0, 1e-15);
    EXPECT_EQ(r.success, r.energy <= 4.0 * (scheme.gap.epsilon_s - scheme.gap.g_e / 2) + 1e-9);
}

TEST(HamiltonianTrial, VarianceWithinBetaBound) {
    RandomStream rng(9);
    for (std::size_t n : {4, 6, 8, 10}) {
        const auto h = heisenberg_ring(n);
        const auto scheme = HamiltonianScheme::build(h, rng);
        const auto src = StateHandle::dense(ground_state(h).state);
        const int trials = 20000;
        double sum = 0.0;
        double sq = 0.0;
        for (int t = 0; t < trials; ++t) {
            RandomStream trng = RandomStream::for_trial(n, t);
            const double e = run_hamiltonian_trial(scheme, src, scheme.gap.g_e / 2, trng).energy;
            sum += e;
            sq += e * e;
        }
        const double mean = sum / trials;
        const double var = sq / trials - mean * mean;
        EXPECT_LE(var, scheme.gap.beta2 * n) << n;
    }
}

TEST(HamiltonianTrial, ProductStateObeysMcDiarmid) {
    RandomStream rng(10);
    const auto h = heisenberg_ring(8);
    const auto scheme = HamiltonianScheme::build(h, rng);
    const auto src = tiled_product(single_qubit_states("0"), 8);
    for (double delta : {scheme.gap.g_e / 4, scheme.gap.g_e / 2}) {
        const int trials = 10000;
        int pass = 0;
        for (int t = 0; t < trials; ++t) {
            RandomStream trng = RandomStream::for_trial(99, t);
            pass += run_hamiltonian_trial(scheme, src, delta, trng).success;
        }
        const double bound = mcdiarmid_separable_bound(8, delta, scheme.gap.kappa2);
        const double sigma = std::sqrt(bound * (1.0 - bound) / trials);
        EXPECT_LE(pass / double(trials), bound + 3.0 * sigma + 1e-12);
    }
}

TEST(HamiltonianTrial, GroundStateMeetsChebyshevBound) {
    RandomStream rng(11);
    const auto h = heisenberg_ring(8);
    const auto scheme = HamiltonianScheme::build(h, rng);
    const auto src = StateHandle::dense(ground_state(h).state);
    const double delta = scheme.gap.g_e / 2;
    const int trials = 10000;
    int pass = 0;
    for (int t = 0; t < trials; ++t) {
        RandomStream trng = RandomStream::for_trial(7, t);
        pass += run_hamiltonian_trial(scheme, src, delta, trng).success;
    }
    const double bound = ground_state_success_bound(scheme.gap.effective_size(), scheme.gap.g_e, delta, scheme.gap.beta2);
    EXPECT_GE(pass / double(trials), bound);
}

TEST(LocalHamiltonianIo, JsonRoundTrip) {
    const auto h = heisenberg_ring(5);
    const auto back = LocalHamiltonian::from_json(nlohmann::json::parse(h.to_json().dump()));
    EXPECT_EQ(back.n_sites, 5u);
    EXPECT_EQ(back.locality, 2u);
    EXPECT_EQ(back.neighbour_matrix(), h.neighbour_matrix());
    EXPECT_EQ(back.terms[4].sites, (std::vector<std::size_t>{4, 0}));
    EXPECT_EQ(back.terms[4].paulis.at("YY"), 0.25);
    EXPECT_EQ(h.max_site_degree(), 2u);
}

TEST(LocalHamiltonianIo, Errors) {
    EXPECT_THROW(LocalHamiltonian::load("/nonexistent/h.json"), IoError);
    EXPECT_THROW(LocalHamiltonian::from_json(nlohmann::json::parse(R"({"n": 2})")), ConfigError);
    EXPECT_THROW(LocalHamiltonian::from_json(
                     nlohmann::json::parse(R"({"n": 2, "L": 1, "terms": [{"sites": [0, 1], "paulis": {"XX": 1}}]})")),
                 ConfigError);
    EXPECT_THROW(LocalHamiltonian::from_json(
                     nlohmann::json::parse(R"({"n": 2, "L": 2, "terms": [{"sites": [0, 2], "paulis": {"XX": 1}}]})")),
                 ConfigError);
    EXPECT_THROW(LocalHamiltonian::from_json(
                     nlohmann::json::parse(R"({"n": 2, "L": 2, "terms": [{"sites": [0, 0], "paulis": {"XX": 1}}]})")),
                 ConfigError);
    const std::string path = testing::TempDir() + "bad_h.json";
    std::ofstream(path) << "{ not json";
    EXPECT_THROW(LocalHamiltonian::load(path), ConfigError);
    std::remove(path.c_str());
}
