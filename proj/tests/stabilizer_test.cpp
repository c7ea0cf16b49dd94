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

#include <chrono>

#include "sv/dense.hpp"
#include "sv/protocols.hpp"
#include "sv/stabilizer.hpp"

using namespace sv;

TEST(Tableau, ZeroState) {
    auto t = StabilizerTableau::zero_state(3);
    EXPECT_TRUE(t.check_invariants());
    RandomStream rng(1);
    EXPECT_EQ(t.peek(0, Pauli::Z), 0);
    EXPECT_EQ(t.measure(0, Pauli::Z, rng), 0);
    EXPECT_FALSE(t.is_deterministic(1, Pauli::X));
    EXPECT_FALSE(t.is_deterministic(1, Pauli::Y));
    EXPECT_THROW(t.measure(3, Pauli::Z, rng), ConfigError);
    EXPECT_THROW(t.measure(0, Pauli::I, rng), ConfigError);
}

TEST(Tableau, PauliProductSigns) {
    auto t = StabilizerTableau::pauli_product(PauliString::parse("XYZ"), {1, 0, 1});
    EXPECT_TRUE(t.check_invariants());
    EXPECT_EQ(t.peek(0, Pauli::X), 1);
    EXPECT_EQ(t.peek(1, Pauli::Y), 0);
    EXPECT_EQ(t.peek(2, Pauli::Z), 1);
    EXPECT_EQ(t.stabilizer_string(0), "-XII");
}

TEST(Tableau, InitLcsGenerators) {
    const std::size_t n = 24;
    const auto t = init_lcs(n);
    EXPECT_TRUE(t.check_invariants());
    EXPECT_EQ(t.stabilizer_rank(), n);
    for (std::size_t k = 0; k < n; ++k) {
        EXPECT_EQ(t.stabilizer_sign(k), 0);
        EXPECT_EQ(t.stabilizer_pauli(k, k), Pauli::X);
        // Z on k-1 anticommutes with X_{k-1}.
        EXPECT_EQ(t.stabilizer_pauli(k, (k + n - 1) % n), Pauli::Z);
        EXPECT_EQ(t.stabilizer_pauli(k, (k + 1) % n), Pauli::Z);
    }
    EXPECT_EQ(init_lcs(4).stabilizer_string(0), "+XZIZ");
}

TEST(Tableau, ClusterParitiesAreFixed) {
    for (uint64_t seed = 0; seed < 500; ++seed) {
        RandomStream rng(seed);
        auto t = init_lcs(10);
        const int i1 = t.measure(0, Pauli::Z, rng);
        const int i2 = t.measure(1, Pauli::X, rng);
        const int i3 = t.measure(2, Pauli::Z, rng);
        const int i4 = t.measure(3, Pauli::Z, rng);
        (void)i4;
        EXPECT_EQ((i1 + i2 + i3) & 1, 0);
        EXPECT_TRUE(t.check_invariants());

        auto u = init_lcs(24);
        const int j1 = u.measure(0, Pauli::Z, rng);
        const int j2 = u.measure(1, Pauli::Y, rng);
        const int j3 = u.measure(2, Pauli::Y, rng);
        const int j4 = u.measure(3, Pauli::Z, rng);
        EXPECT_EQ((j1 + j2 + j3 + j4) & 1, 0);
    }
}

TEST(Tableau, SingleXOnClusterIsFair) {
    RandomStream rng(77);
    const int trials = 100000;
    int ones = 0;
    const auto base = init_lcs(6);
    for (int t = 0; t < trials; ++t) {
        auto c = base;
        ones += c.measure(1, Pauli::X, rng);
    }
    EXPECT_NEAR(ones / double(trials), 0.5, 0.005);
}

TEST(Tableau, ProductPhaseRule) {
    // Single qubit: X Z = -i Y, Z X = +i Y, X Y = i Z, Y Y = 1.
    auto check = [](uint64_t ax, uint64_t az, uint64_t bx, uint64_t bz, int expected) {
        std::vector<uint64_t> x1{ax}, z1{az};
        EXPECT_EQ(StabilizerTableau::product_phase(x1, z1, {bx}, {bz}), expected);
    };
    check(1, 0, 0, 1, 3);
    check(0, 1, 1, 0, 1);
    check(1, 0, 1, 1, 1);
    check(1, 1, 1, 1, 0);
}

TEST(Tableau, ProductPhaseMatchesDense) {
    RandomStream rng(4);
    const std::size_t n = 5;
    for (int rep = 0; rep < 200; ++rep) {
        PauliString a(n), b(n);
        std::vector<uint64_t> ax{0}, az{0}, bx{0}, bz{0};
        for (std::size_t q = 0; q < n; ++q) {
            a.ops[q] = static_cast<Pauli>(rng.index(4));
            b.ops[q] = static_cast<Pauli>(rng.index(4));
            auto bits = [&](Pauli p, std::vector<uint64_t> &x, std::vector<uint64_t> &z) {
                if (p == Pauli::X || p == Pauli::Y) x[0] |= uint64_t{1} << q;
                if (p == Pauli::Z || p == Pauli::Y) z[0] |= uint64_t{1} << q;
            };
            bits(a.ops[q], ax, az);
            bits(b.ops[q], bx, bz);
        }
        const int k = StabilizerTableau::product_phase(ax, az, bx, bz);
        PauliString c(n);
        for (std::size_t q = 0; q < n; ++q) {
            const bool x = (ax[0] >> q) & 1;
            const bool z = (az[0] >> q) & 1;
            c.ops[q] = x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
        }
        std::vector<cplx> v(32);
        for (auto &e : v) {
            e = cplx(rng.uniform(), rng.uniform());
        }
        const auto lhs = apply_pauli(a, apply_pauli(b, v));
        const auto rhs = apply_pauli(c, v);
        const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        for (std::size_t i = 0; i < v.size(); ++i) {
            ASSERT_NEAR(std::abs(lhs[i] - ipow[k] * rhs[i]), 0.0, 1e-12) << a.str() << " * " << b.str();
        }
    }
}

TEST(Tableau, AgreesWithDenseAlongRandomMeasurementSequences) {
    RandomStream rng(2024);
    for (std::size_t n : {3, 5, 8, 12}) {
        for (int rep = 0; rep < 6; ++rep) {
            auto tab = init_lcs(n);
            PureState dense = make_lcs_dense(n);
            for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
                const std::size_t q = rng.index(n);
                const Pauli b = basis_from_index(rng.index(3));
                for (std::size_t p = 0; p < n; ++p) {
                    for (Pauli c : {Pauli::X, Pauli::Y, Pauli::Z}) {
                        PauliString s(n);
                        s.ops[p] = c;
                        const double e = expectation(dense, s);
                        const auto peek = tab.peek(p, c);
                        if (peek) {
                            ASSERT_NEAR(e, *peek ? -1.0 : 1.0, 1e-9);
                        } else {
                            ASSERT_LT(std::abs(e), 1.0 - 1e-9);
                        }
                    }
                }
                const int bit = tab.measure(q, b, rng);
                ASSERT_TRUE(tab.check_invariants());
                collapse(dense, q, b, bit);
            }
        }
    }
}

TEST(Tableau, LargeRingTrialIsFast) {
    const std::size_t n = 999;
    const StateHandle src = StateHandle::tableau(init_lcs(n));
    RandomStream rng(5);
    LcsTrialConfig cfg{n, 333, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1.0 / 3};
    const auto t0 = std::chrono::steady_clock::now();
    const int reps = 5;
    for (int r = 0; r < reps; ++r) {
        const auto rec = run_lcs_trial(cfg, src, rng);
        ASSERT_EQ(rec.aggregate, 333);
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() / reps;
    RecordProperty("ms_per_trial", std::to_string(ms));
    EXPECT_LT(ms, 50.0);
}
