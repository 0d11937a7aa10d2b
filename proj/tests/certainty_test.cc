// Copyright 2026 The mubkit Authors
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

#include "mubkit/certainty.h"

#include <gtest/gtest.h>

#include "mubkit/random.h"
#include "test_util.h"

using namespace mubkit;

namespace {

const MubSet &set_for(int d, int n) {
    static std::map<std::pair<int, int>, MubSet> cache;
    auto key = std::make_pair(d, n);
    if (!cache.count(key)) cache.emplace(key, build_complete_mub(PrimeDim(d, n)));
    return cache.at(key);
}

Basis computational(std::size_t m) { return Basis{Eigen::MatrixXcd::Identity(m, m), std::nullopt, std::nullopt}; }

}  // namespace

TEST(PureState, NormChecked) {
    Eigen::VectorXcd v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(PureState{v}, std::invalid_argument);
    PureState s = PureState::normalized(v);
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-15);
    EXPECT_THROW(PureState::normalized(Eigen::VectorXcd::Zero(3)), std::invalid_argument);
}

TEST(Probabilities, NamedCases) {
    Eigen::VectorXcd v(2);
    v << std::sqrt(0.36), std::sqrt(0.64);
    PureState s{v};
    auto p = probabilities(s, computational(2));
    EXPECT_NEAR(p(0), 0.36, 1e-12);
    EXPECT_NEAR(p(1), 0.64, 1e-12);
    EXPECT_NEAR(certainty(s, computational(2)), 0.5392, 1e-12);
    const MubSet &set = set_for(2, 2);
    PureState e = PureState::from_basis(set.bases[0], 2);
    auto pe = probabilities(e, set.bases[0]);
    EXPECT_NEAR(pe(2), 1.0, 1e-12);
    EXPECT_NEAR(pe.sum(), 1.0, 1e-12);
    auto pu = probabilities(e, set.bases[1]);
    for (int m = 0; m < 4; ++m) EXPECT_NEAR(pu(m), 0.25, 1e-12);
    EXPECT_NEAR(certainty(e, set.bases[0]), 1.0, 1e-12);
    EXPECT_NEAR(certainty(e, set.bases[1]), 0.25, 1e-12);
    EXPECT_THROW(probabilities(e, computational(2)), std::invalid_argument);
}

TEST(Certainty, RangeAndInvariances) {
    const MubSet &set = set_for(3, 2);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        PureState s = haar_random_state(9, rng);
        for (const auto &b : set.bases) {
            const double c = certainty(s, b);
            EXPECT_GE(c, 1.0 / 9 - 1e-12);
            EXPECT_LE(c, 1.0 + 1e-12);
            EXPECT_NEAR(probabilities(s, b).sum(), 1.0, 1e-10);
            PureState phased{s.amplitudes() * std::polar(1.0, 0.7 * i)};
            EXPECT_NEAR(certainty(phased, b), c, 1e-14);
            Basis reversed = b;
            reversed.vectors = b.vectors.rowwise().reverse().eval();
            EXPECT_NEAR(certainty(s, reversed), c, 1e-14);
        }
    }
}

TEST(HaarState, MomentsLookUniform) {
    // E|psi_0|^2 = 1/M and E|psi_0|^4 = 2/(M(M+1)) for Haar states.
    std::mt19937_64 rng(17);
    const int samples = 20000;
    double m2 = 0, m4 = 0;
    for (int i = 0; i < samples; ++i) {
        PureState s = haar_random_state(4, rng);
        const double p = std::norm(s.amplitudes()(0));
        m2 += p;
        m4 += p * p;
    }
    EXPECT_NEAR(m2 / samples, 0.25, 0.01);
    EXPECT_NEAR(m4 / samples, 0.1, 0.005);
}

TEST(CheckPair, EigenstateSaturatesAndUnbiasedState) {
    const MubSet &set = set_for(2, 2);
    auto r = check_pair(PureState::from_basis(set.bases[0], 1), set, 0, 1);
    EXPECT_NEAR(r.lhs, 1.25, 1e-12);
    EXPECT_NEAR(r.margin, 0.0, 1e-12);
    EXPECT_TRUE(r.guaranteed);
    // An eigenstate of a third basis is unbiased to both.
    auto u = check_pair(PureState::from_basis(set.bases[2], 0), set, 0, 1);
    EXPECT_NEAR(u.lhs, 0.5, 1e-12);
    EXPECT_NEAR(u.margin, 0.75, 1e-12);
}

TEST(CheckPair, UncertifiedPairIsFlagged) {
    const MubSet &set = set_for(2, 2);
    auto r = check_pair(PureState::from_basis(set.bases[0], 0), set.bases[0], set.bases[0]);
    EXPECT_FALSE(r.guaranteed);
    EXPECT_LT(r.margin, 0.0);
}

TEST(CheckSum, EigenstateSaturatesPrimeBound) {
    const MubSet &set = set_for(2, 3);
    for (std::size_t j = 2; j <= set.bases.size(); ++j) {
        std::vector<const Basis *> bases;
        for (std::size_t i = 0; i < j; ++i) bases.push_back(&set.bases[i]);
        auto r = check_sum(PureState::from_basis(set.bases[0], 3), bases, true, true);
        EXPECT_NEAR(r.lhs, 1.0 + (j - 1) / 8.0, 1e-12);
        EXPECT_NEAR(r.margin, 0.0, 1e-12);
        auto g = check_sum(PureState::from_basis(set.bases[0], 3), bases, false, true);
        EXPECT_NEAR(g.bound, 1.0 + (j - 1) / std::sqrt(8.0), 1e-12);
        EXPECT_GE(g.margin, r.margin);
    }
}

TEST(CheckSum, TwoBasesReduceToPair) {
    const MubSet &set = set_for(3, 2);
    std::mt19937_64 rng(4);
    PureState s = haar_random_state(9, rng);
    auto p = check_pair(s, set, 2, 5);
    auto q = check_sum(s, {&set.bases[2], &set.bases[5]}, true, true);
    EXPECT_NEAR(p.lhs, q.lhs, 1e-14);
    EXPECT_NEAR(p.bound, q.bound, 1e-14);
    EXPECT_NEAR(p.margin, q.margin, 1e-14);
}

TEST(CheckSum, RejectsSingleBasis) {
    const MubSet &set = set_for(2, 2);
    EXPECT_THROW(check_sum(PureState::from_basis(set.bases[0], 0), {&set.bases[0]}, true, true),
                 std::invalid_argument);
}

TEST(FullInvariant, EigenstatesAndRearrangement) {
    const MubSet &set = set_for(2, 2);
    for (const auto &b : set.bases) {
        auto f = check_full_invariant(PureState::from_basis(b, 0), set);
        EXPECT_NEAR(f.lhs, 2.0, 1e-12);
    }
    // Unbiased to basis 0: the other four sum to 2 - 1/4.
    PureState s = PureState::from_basis(set.bases[3], 2);
    double rest = 0.0;
    for (std::size_t i = 1; i < 5; ++i) rest += certainty(s, set.bases[i]);
    EXPECT_NEAR(rest, 1.75, 1e-12);
    MubSet partial = set;
    partial.bases.pop_back();
    try {
        check_full_invariant(s, partial);
        FAIL();
    } catch (const std::invalid_argument &e) {
        EXPECT_STREQ(e.what(), "full invariant requires M+1 bases");
    }
}

TEST(FullInvariant, RandomStates) {
    for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        const MubSet &set = set_for(d, n);
        std::mt19937_64 rng(21);
        for (int i = 0; i < 1000; ++i) {
            EXPECT_LT(check_full_invariant(haar_random_state(set.dim(), rng), set).deviation, 1e-8);
        }
    }
}

TEST(Bounds, GeneralBoundNeverBelowPrimeBound) {
    for (std::size_t m : {2u, 4u, 8u, 9u, 27u}) {
        for (std::size_t j = 2; j <= m + 1; ++j) {
            auto b = certainty_bounds(m, j);
            EXPECT_NEAR(b.pair, 1.0 + 1.0 / m, 1e-15);
            EXPECT_GE(b.general_j, b.prime_j);
            EXPECT_EQ(b.full, 2.0);
        }
    }
}

TEST(Report, SectionsFollowSetShape) {
    const MubSet &set = set_for(2, 2);
    MubSet two = set;
    two.bases.resize(2);
    std::mt19937_64 rng(5);
    PureState s = haar_random_state(4, rng);
    auto r2 = certainty_report(s, two);
    EXPECT_TRUE(r2.pair.has_value());
    EXPECT_TRUE(r2.general_j.has_value());
    EXPECT_FALSE(r2.prime_j.has_value());
    EXPECT_FALSE(r2.full.has_value());
    auto r5 = certainty_report(s, set);
    EXPECT_TRUE(r5.prime_j.has_value());
    ASSERT_TRUE(r5.full.has_value());
    EXPECT_NEAR(r5.full->lhs, 2.0, 1e-10);
    EXPECT_LT(r5.normalization_error, 1e-10);
    EXPECT_GE(r5.general_j->margin, r5.prime_j->margin);
}

TEST(MonteCarlo, MarginsNonNegativeForAllSmallCases) {
    for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        const MubSet &set = set_for(d, n);
        for (std::size_t j : {set.bases.size(), std::size_t{3}, std::size_t{2}}) {
            MubSet sub = set;
            sub.bases.resize(j);
            auto s = monte_carlo_sweep(sub, 10000, 31);
            EXPECT_EQ(s.states, 10000u);
            EXPECT_GE(*s.min_margin_pair, -1e-9);
            EXPECT_GE(*s.min_margin_general_j, -1e-9);
            if (j >= 3) EXPECT_GE(*s.min_margin_prime_j, -1e-9);
            if (j == set.bases.size()) EXPECT_LT(*s.max_invariant_deviation, 1e-8);
            EXPECT_GE(s.min_certainty, 1.0 / set.dim() - 1e-12);
        }
    }
}

TEST(MonteCarlo, ThreadCountDoesNotChangeSummary) {
    const MubSet &set = set_for(2, 3);
    auto a = monte_carlo_sweep(set, 3000, 8, 1);
    auto b = monte_carlo_sweep(set, 3000, 8, 3);
    EXPECT_EQ(*a.min_margin_pair, *b.min_margin_pair);
    EXPECT_EQ(*a.max_invariant_deviation, *b.max_invariant_deviation);
    EXPECT_EQ(a.max_certainty, b.max_certainty);
    // State i is reproducible on its own.
    std::mt19937_64 rng(derive_seed(8, 17));
    PureState s = haar_random_state(8, rng);
    EXPECT_LE(certainty(s, set.bases[0]), a.max_certainty);
}
