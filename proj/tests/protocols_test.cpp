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

#include "sv/protocols.hpp"
#include "sv/sep_oracle.hpp"
#include "sv/success_operator.hpp"

using namespace sv;

namespace {

StateHandle singlets(std::size_t k) {
    return StateHandle::product(std::vector<PureState>(k, make_singlet()));
}

StateHandle optimal_pair_product(std::size_t k) {
    RandomStream rng(12);
    const auto res = max_product_expectation(singlet_success_observable(), OracleMethod::seesaw, rng);
    return tiled_product(res.maximizer.states(), 2 * k);
}

double sigma(double p, int n) {
    return std::sqrt(p * (1.0 - p) / n);
}

}  // namespace

TEST(SingletTrial, TargetAlwaysPasses) {
    const auto src = singlets(8);
    SingletTrialConfig cfg;
    for (uint64_t seed = 0; seed < 1000; ++seed) {
        RandomStream rng = RandomStream::for_trial(42, seed);
        const auto r = run_singlet_trial(cfg, src, rng);
        ASSERT_EQ(r.aggregate, 8);
        ASSERT_EQ(r.local_costs, std::vector<int>(8, 1));
        ASSERT_NEAR(r.delta_hat, 1.0 / 3.0, 1e-15);
        ASSERT_TRUE(r.success);
        ASSERT_EQ(r.bases.size(), 16u);
        ASSERT_EQ(r.outcomes.size(), 16u);
        for (std::size_t k = 0; k < 8; ++k) {
            ASSERT_EQ(r.bases[2 * k], r.settings[k][0]);
            ASSERT_EQ(r.bases[2 * k + 1], r.settings[k][1]);
        }
    }
}

TEST(SingletTrial, CorrelatedZerosFailUnderZZ) {
    const auto src = tiled_product(single_qubit_states("0"), 8);
    SingletTrialConfig cfg{4, {0.0, 0.0, 1.0}, 1.0 / 3.0};
    for (uint64_t seed = 0; seed < 100; ++seed) {
        RandomStream rng(seed);
        const auto r = run_singlet_trial(cfg, src, rng);
        EXPECT_EQ(r.aggregate, 0);
        EXPECT_EQ(r.settings, std::vector<std::string>(4, "ZZ"));
        EXPECT_FALSE(r.success);
    }
}

TEST(SingletTrial, SourceSizeMismatchThrows) {
    RandomStream rng(1);
    EXPECT_THROW(run_singlet_trial({8}, singlets(7), rng), ConfigError);
    EXPECT_THROW(run_singlet_trial({0}, singlets(1), rng), ConfigError);
    EXPECT_THROW(run_singlet_trial({1, {0.5, 0.6, 0.0}}, singlets(1), rng), ConfigError);
}

TEST(SingletTrial, BestProductStateMeanStaysBelowCeiling) {
    const auto src = optimal_pair_product(8);
    SingletTrialConfig cfg;
    const int trials = 10000;
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        RandomStream rng = RandomStream::for_trial(9, t);
        sum += run_singlet_trial(cfg, src, rng).aggregate / 8.0;
    }
    const double se = std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / 8.0 / trials);
    EXPECT_LE(sum / trials, 2.0 / 3.0 + 3.0 * se);
    EXPECT_GE(sum / trials, 2.0 / 3.0 - 3.0 * se);
}

TEST(SingletTrial, ProductSourcesObeyChernoff) {
    const int trials = 100000;
    for (std::size_t k = 4; k <= 8; ++k) {
        const auto src = optimal_pair_product(k);
        SingletTrialConfig cfg{k, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1.0 / 3.0};
        int pass = 0;
        for (int t = 0; t < trials; ++t) {
            RandomStream rng = RandomStream::for_trial(1000 + k, t);
            pass += run_singlet_trial(cfg, src, rng).success;
        }
        const double bound = chernoff_separable_bound(1.0 / 3.0, static_cast<long long>(k));
        EXPECT_LE(pass / double(trials), bound + 3.0 * sigma(bound, trials)) << "K=" << k;
    }
}

TEST(LcsTrial, TargetAlwaysPasses) {
    const auto src = StateHandle::tableau(init_lcs(24));
    LcsTrialConfig cfg;
    for (uint64_t seed = 0; seed < 1000; ++seed) {
        RandomStream rng = RandomStream::for_trial(7, seed);
        const auto r = run_lcs_trial(cfg, src, rng);
        ASSERT_EQ(r.aggregate, 8);
        ASSERT_NEAR(r.delta_hat, 1.0 / 3.0, 1e-15);
        ASSERT_TRUE(r.success);
        ASSERT_EQ(r.partition.size(), 8u);
        ASSERT_EQ(r.bases.size(), 24u);
        ASSERT_EQ(r.outcomes.size(), 24u);
    }
}

TEST(LcsTrial, SharedBordersAreMeasuredOnceInZ) {
    const auto src = StateHandle::tableau(init_lcs(26));
    LcsTrialConfig cfg{26, 8, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1.0 / 3};
    for (uint64_t seed = 0; seed < 200; ++seed) {
        RandomStream rng(seed);
        const auto r = run_lcs_trial(cfg, src, rng);
        ASSERT_EQ(r.bases.size(), 26u);
        std::vector<int> cover(26, 0);
        for (std::size_t s = 0; s < r.partition.size(); ++s) {
            const auto qs = Cluster{r.partition[s]}.qubits(26);
            for (std::size_t j = 0; j < 4; ++j) {
                ++cover[qs[j]];
                ASSERT_EQ(r.bases[qs[j]], r.settings[s][j]);
            }
        }
        for (std::size_t q = 0; q < 26; ++q) {
            if (cover[q] != 1) {
                ASSERT_EQ(r.bases[q], 'Z');
            }
        }
    }
}

TEST(LcsTrial, ZeroStateGivesFairCoinUnderZxzz) {
    const auto src = tiled_product(single_qubit_states("0"), 8);
    LcsTrialConfig cfg{8, 2, {1.0, 0.0, 0.0}, 1.0 / 3};
    const int trials = 20000;
    double ones = 0.0;
    for (int t = 0; t < trials; ++t) {
        RandomStream rng = RandomStream::for_trial(3, t);
        const auto r = run_lcs_trial(cfg, src, rng);
        ones += r.local_costs[0];
    }
    EXPECT_NEAR(ones / trials, 0.5, 4.0 * sigma(0.5, trials));
    // Exact: the parity of the checked Z, X, Z outcomes is the uniform X outcome.
    const auto zero = make_product(single_qubit_states("00000000"));
    const auto p = born_distribution(zero, PauliString::parse("ZXZZZZZZ"));
    double pass = 0.0;
    for (std::size_t b = 0; b < p.size(); ++b) {
        const int i1 = (b >> 7) & 1, i2 = (b >> 6) & 1, i3 = (b >> 5) & 1, i4 = (b >> 4) & 1;
        pass += p[b] * cluster_cost(0, {i1, i2, i3, i4});
    }
    EXPECT_NEAR(pass, 0.5, 1e-12);
}

TEST(LcsTrial, BlockProductFailsSomePartitions) {
    // Cluster blocks on qubits 1-4 and 5-8 of a ten-qubit ring pass that partition
    // with certainty but not the others.
    const RegularPartition fixed{10, {1, 5}};
    const auto src = cluster_block_product(fixed);
    std::vector<PureState> blocks = {cluster_block_state(), cluster_block_state(),
                                     PureState::eigenstate(Pauli::Z, 0), PureState::eigenstate(Pauli::Z, 0)};
    const double exact = success_probability_exact(2, make_product(blocks));
    EXPECT_LT(exact, 0.9);
    EXPECT_GT(exact, 0.0);

    LcsTrialConfig cfg{10, 2, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1.0 / 3};
    const int trials = 50000;
    int pass = 0;
    for (int t = 0; t < trials; ++t) {
        RandomStream rng = RandomStream::for_trial(77, t);
        pass += run_lcs_trial(cfg, src, rng).success;
    }
    EXPECT_NEAR(pass / double(trials), exact, 4.0 * sigma(exact, trials));
    EXPECT_LT(pass / double(trials), 1.0 - 0.05);
}

TEST(LcsTrial, BlockStatePassesItsOwnClusters) {
    const auto s = cluster_block_state();
    EXPECT_NEAR(expectation(s, cluster_success_observable()), 1.0, 1e-12);
}

TEST(LcsTrial, InvalidSizesThrow) {
    RandomStream rng(1);
    EXPECT_THROW(run_lcs_trial({5, 2}, StateHandle::tableau(init_lcs(5)), rng), ConfigError);
    EXPECT_THROW(run_lcs_trial({24, 8}, StateHandle::tableau(init_lcs(25)), rng), ConfigError);
}

TEST(ClusterCost, ParityRules) {
    EXPECT_EQ(cluster_cost(0, {0, 0, 0, 1}), 1);
    EXPECT_EQ(cluster_cost(0, {1, 0, 0, 0}), 0);
    EXPECT_EQ(cluster_cost(1, {1, 0, 1, 1}), 1);
    EXPECT_EQ(cluster_cost(1, {0, 1, 0, 0}), 0);
    EXPECT_EQ(cluster_cost(2, {1, 1, 1, 1}), 1);
    EXPECT_EQ(cluster_cost(2, {1, 1, 1, 0}), 0);
}

TEST(EvaluateCost, Thresholds) {
    TrialRecord r;
    r.local_costs = std::vector<int>(8, 1);
    r.aggregate = 8;
    EXPECT_TRUE(evaluate_cost(r, 1.0 / 3.0));
    r.aggregate = 6;
    EXPECT_FALSE(evaluate_cost(r, 1.0 / 3.0));
    EXPECT_TRUE(evaluate_cost(r, 0.05));
    r.scheme = Scheme::hamiltonian;
    EXPECT_THROW(evaluate_cost(r, 0.1), ConfigError);
}

TEST(PostHocDelta, Pooling) {
    TrialRecord a;
    a.local_costs = std::vector<int>(8, 1);
    a.aggregate = 8;
    EXPECT_NEAR(post_hoc_delta({a}), 1.0 / 3.0, 1e-15);
    TrialRecord b = a;
    b.aggregate = 4;
    EXPECT_NEAR(post_hoc_delta({a, b}), 1.0 / 12.0, 1e-15);
    TrialRecord c;
    c.local_costs = std::vector<int>(3, 0);
    c.aggregate = 2;
    EXPECT_NEAR(post_hoc_delta({c}), 0.0, 1e-15);
    EXPECT_THROW(post_hoc_delta({}), ConfigError);
}

TEST(SuccessOperator, LcsIsUniqueMaximizer) {
    const auto rep = success_operator_check(8, 2);
    EXPECT_NEAR(rep.lcs_expectation, 1.0, 1e-12);
    EXPECT_NEAR(rep.max_eigenvalue, 1.0, 1e-10);
    EXPECT_GE(rep.min_eigenvalue, -1e-12);
    EXPECT_TRUE(rep.stabilizers_covered);
    EXPECT_EQ(rep.top_multiplicity, 1u);
}

TEST(SuccessOperator, EigenvaluesInUnitInterval) {
    for (auto [n, l] : {std::pair<std::size_t, std::size_t>{6, 2}, {7, 2}, {9, 3}}) {
        const auto rep = success_operator_check(n, l);
        EXPECT_LE(rep.max_eigenvalue, 1.0 + 1e-10);
        EXPECT_GE(rep.min_eigenvalue, -1e-10);
        EXPECT_NEAR(rep.lcs_expectation, 1.0, 1e-12);
        if (rep.stabilizers_covered) {
            EXPECT_EQ(rep.top_multiplicity, 1u) << n << "," << l;
        }
    }
}
