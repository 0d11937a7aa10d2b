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

#include "mubkit/weyl.h"

#include <random>

#include <gtest/gtest.h>

#include "mubkit/errors.h"
#include "test_util.h"

using namespace mubkit;

namespace {

WeylLabel random_label(const PrimeDim &dims, std::mt19937_64 &rng) {
    std::uniform_int_distribution<std::size_t> pick(0, dims.label_count() - 1);
    return WeylLabel::from_index(pick(rng), dims);
}

double max_abs(const Eigen::MatrixXcd &m) { return m.cwiseAbs().maxCoeff(); }

const std::vector<std::pair<int, int>> kSmall = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}};

}  // namespace

TEST(PrimeDim, RejectsCompositeAndOversized) {
    EXPECT_THROW(PrimeDim(4, 1), std::invalid_argument);
    EXPECT_THROW(PrimeDim(1, 1), std::invalid_argument);
    EXPECT_THROW(PrimeDim(2, 21), std::invalid_argument);
    EXPECT_THROW(PrimeDim(2, 0), std::invalid_argument);
    PrimeDim dims(3, 2);
    EXPECT_EQ(dims.m(), 9u);
    EXPECT_EQ(dims.label_count(), 81u);
}

TEST(WeylLabel, IndexRoundTrip) {
    PrimeDim dims(3, 2);
    for (std::size_t i = 0; i < dims.label_count(); ++i) {
        EXPECT_EQ(WeylLabel::from_index(i, dims).index(3), i);
    }
    EXPECT_EQ(WeylLabel::from_pauli_string("XYZ"), WeylLabel({1, 1, 0}, {0, 1, 1}));
}

TEST(SymplecticForm, QubitXZ) {
    EXPECT_EQ(symplectic_form(WeylLabel({1}, {0}), WeylLabel({0}, {1}), 2), 1);
    EXPECT_FALSE(commutes(WeylLabel({1}, {0}), WeylLabel({0}, {1}), 2));
    EXPECT_TRUE(commutes(WeylLabel::from_pauli_string("XX"), WeylLabel::from_pauli_string("ZZ"), 2));
    EXPECT_TRUE(commutes(WeylLabel({0, 0}, {0, 0}), WeylLabel::from_pauli_string("XY"), 2));
}

TEST(SymplecticForm, SizeMismatchThrows) {
    try {
        symplectic_form(WeylLabel({1}, {0}), WeylLabel({1, 0}, {0, 0}), 2);
        FAIL();
    } catch (const std::invalid_argument &e) {
        EXPECT_STREQ(e.what(), "incompatible labels");
    }
}

TEST(SymplecticForm, QutritExampleMatchesMatrixCommutator) {
    WeylLabel u({1, 2}, {0, 1});
    WeylLabel v({2, 0}, {1, 1});
    EXPECT_EQ(symplectic_form(u, v, 3), 0);
    const auto a = testing_oracles::explicit_weyl(3, u.x, u.z);
    const auto b = testing_oracles::explicit_weyl(3, v.x, v.z);
    EXPECT_LT(max_abs(a * b - b * a), 1e-10);
}

TEST(SymplecticForm, AntisymmetricAndSelfZero) {
    std::mt19937_64 rng(11);
    for (auto [d, n] : kSmall) {
        PrimeDim dims(d, n);
        for (int i = 0; i < 1000; ++i) {
            WeylLabel u = random_label(dims, rng), v = random_label(dims, rng);
            EXPECT_EQ((symplectic_form(u, v, d) + symplectic_form(v, u, d)) % d, 0);
            EXPECT_EQ(symplectic_form(u, u, d), 0);
        }
    }
}

TEST(SymplecticForm, DecidesMatrixCommutation) {
    std::mt19937_64 rng(12);
    for (auto [d, n] : kSmall) {
        PrimeDim dims(d, n);
        for (int i = 0; i < 100; ++i) {
            WeylLabel u = random_label(dims, rng), v = random_label(dims, rng);
            const auto a = testing_oracles::explicit_weyl(d, u.x, u.z);
            const auto b = testing_oracles::explicit_weyl(d, v.x, v.z);
            EXPECT_EQ(commutes(u, v, d), max_abs(a * b - b * a) < 1e-10);
        }
    }
}

TEST(WeylMatrix, MatchesExplicitKroneckerProduct) {
    for (auto [d, n] : kSmall) {
        PrimeDim dims(d, n);
        for (std::size_t i = 0; i < dims.label_count(); ++i) {
            WeylLabel u = WeylLabel::from_index(i, dims);
            EXPECT_LT(max_abs(weyl_matrix(u, dims) - testing_oracles::explicit_weyl(d, u.x, u.z)), 1e-12)
                << u.str(d);
        }
    }
}

TEST(WeylMatrix, NamedCases) {
    PrimeDim q(2, 1);
    EXPECT_LT(max_abs(weyl_matrix(WeylLabel({0}, {0}), q) - Eigen::MatrixXcd::Identity(2, 2)), 1e-15);
    Eigen::MatrixXcd flip(2, 2);
    flip << 0, 1, 1, 0;
    EXPECT_LT(max_abs(weyl_matrix(WeylLabel({1}, {0}), q) - flip), 1e-15);
    const std::complex<double> w = std::polar(1.0, 2 * std::acos(-1.0) / 3);
    Eigen::MatrixXcd zq = Eigen::MatrixXcd::Zero(3, 3);
    zq.diagonal() << 1.0, w, w * w;
    EXPECT_LT(max_abs(weyl_matrix(WeylLabel({0}, {1}), PrimeDim(3, 1)) - zq), 1e-12);
    // The qubit Y representative is Hermitian.
    auto y = weyl_matrix(WeylLabel({1}, {1}), q);
    EXPECT_LT(max_abs(y - y.adjoint()), 1e-15);
}

TEST(WeylMatrix, ProductIsSumUpToRootOfUnity) {
    std::mt19937_64 rng(13);
    for (auto [d, n] : kSmall) {
        PrimeDim dims(d, n);
        const int order = d == 2 ? 4 : d;
        for (int i = 0; i < 200; ++i) {
            WeylLabel u = random_label(dims, rng), v = random_label(dims, rng);
            Eigen::MatrixXcd prod = weyl_matrix(u, dims) * weyl_matrix(v, dims);
            Eigen::MatrixXcd sum = weyl_matrix(add(u, v, d), dims);
            // Both are monomial; the ratio on the first nonzero entry is the phase.
            Eigen::Index r = 0;
            sum.col(0).cwiseAbs().maxCoeff(&r);
            const std::complex<double> phase = prod(r, 0) / sum(r, 0);
            EXPECT_LT(max_abs(prod - phase * sum), 1e-10);
            EXPECT_LT(std::abs(std::pow(phase, order) - 1.0), 1e-10);
        }
    }
}

TEST(MonomialOperator, AgreesWithDense) {
    PrimeDim dims(3, 2);
    std::mt19937_64 rng(14);
    for (int i = 0; i < 50; ++i) {
        auto a = weyl_operator(random_label(dims, rng), dims);
        auto b = weyl_operator(random_label(dims, rng), dims);
        EXPECT_LT(max_abs((a * b).dense() - a.dense() * b.dense()), 1e-12);
        EXPECT_TRUE(a.pow(3).is_identity());
    }
}

TEST(Lagrangians, CountsMatchProductFormula) {
    for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}}) {
        PrimeDim dims(d, n);
        std::size_t expected = 1, p = 1;
        for (int i = 1; i <= n; ++i) {
            p *= d;
            expected *= p + 1;
        }
        EXPECT_EQ(enumerate_lagrangians(dims).size(), expected);
        EXPECT_EQ(lagrangian_count(dims), expected);
    }
}

TEST(Lagrangians, CountsMatchBruteForce) {
    EXPECT_EQ(testing_oracles::brute_force_lagrangian_count(2, 1), 3u);
    EXPECT_EQ(testing_oracles::brute_force_lagrangian_count(2, 2), enumerate_lagrangians(PrimeDim(2, 2)).size());
    EXPECT_EQ(testing_oracles::brute_force_lagrangian_count(2, 3), 135u);
    EXPECT_EQ(enumerate_lagrangians(PrimeDim(2, 3)).size(), 135u);
    EXPECT_EQ(testing_oracles::brute_force_lagrangian_count(3, 2), enumerate_lagrangians(PrimeDim(3, 2)).size());
}

TEST(Lagrangians, SingleQubitAxes) {
    PrimeDim dims(2, 1);
    auto classes = enumerate_lagrangians(dims);
    std::set<std::size_t> seen;
    for (const auto &c : classes) {
        ASSERT_EQ(c.member_indices().size(), 1u);
        seen.insert(c.member_indices()[0]);
    }
    // X, Z and XZ each form their own axis.
    EXPECT_EQ(seen, (std::set<std::size_t>{WeylLabel({1}, {0}).index(2), WeylLabel({0}, {1}).index(2),
                                           WeylLabel({1}, {1}).index(2)}));
}

TEST(Lagrangians, ClassesAreIsotropicClosedAndCommuteAsMatrices) {
    for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        PrimeDim dims(d, n);
        for (const auto &cls : enumerate_lagrangians(dims)) {
            const auto members = cls.members();
            ASSERT_EQ(members.size(), dims.m() - 1);
            std::vector<std::vector<int>> coords;
            for (const auto &u : members) coords.push_back(u.coords());
            // Span of members is exactly the members plus zero.
            EXPECT_EQ(testing_oracles::span_ranks(coords, d).size(), dims.m());
            for (std::size_t a = 0; a < members.size(); ++a) {
                for (std::size_t b = a + 1; b < members.size(); ++b) {
                    ASSERT_TRUE(commutes(members[a], members[b], d));
                }
            }
            if (d == 2 && n == 3) continue;  // matrix check on the smaller cases
            for (std::size_t a = 0; a < members.size(); ++a) {
                for (std::size_t b = a + 1; b < members.size(); ++b) {
                    auto A = weyl_matrix(members[a], dims), B = weyl_matrix(members[b], dims);
                    ASSERT_LT(max_abs(A * B - B * A), 1e-10);
                }
            }
        }
    }
}

TEST(CommutingClass, CanonicalFormIsUnique) {
    PrimeDim dims(2, 2);
    CommutingClass a({WeylLabel::from_pauli_string("XX"), WeylLabel::from_pauli_string("ZZ")}, dims);
    CommutingClass b({WeylLabel::from_pauli_string("YY"), WeylLabel::from_pauli_string("XX")}, dims);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(a.contains(WeylLabel::from_pauli_string("YY")));
    EXPECT_THROW(CommutingClass({WeylLabel::from_pauli_string("XI"), WeylLabel::from_pauli_string("ZI")}, dims),
                 std::invalid_argument);
    EXPECT_THROW(CommutingClass({WeylLabel::from_pauli_string("XI")}, dims), std::invalid_argument);
}

TEST(Lagrangians, RefusesHugeEnumeration) {
    try {
        enumerate_lagrangians(PrimeDim(2, 13));
        FAIL();
    } catch (const BudgetError &e) {
        EXPECT_STREQ(e.what(), "enumeration too large; use sampled mode");
    }
}
