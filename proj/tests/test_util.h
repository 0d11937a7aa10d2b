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

#ifndef MUBKIT_TESTS_TEST_UTIL_H
#define MUBKIT_TESTS_TEST_UTIL_H

// Independent reference computations. None of these reuse the library's
// finite-field or projector code paths.

#include <complex>
#include <cstdint>
#include <set>
#include <vector>

#include <Eigen/Dense>

namespace testing_oracles {

/// Number of N-dimensional isotropic subspaces of Z_d^{2N}, found by
/// spanning every N-tuple of nonzero vectors and deduplicating member sets.
std::size_t brute_force_lagrangian_count(int d, int n);

/// The member set (flat coordinate ranks) of the span of `vectors` over Z_d.
std::set<std::size_t> span_ranks(const std::vector<std::vector<int>> &vectors, int d);

/// Kronecker product of explicit single-particle X^x Z^z with the documented phase.
Eigen::MatrixXcd explicit_weyl(int d, const std::vector<int> &x, const std::vector<int> &z);

/// Joint eigenvectors of commuting Hermitian or unitary matrices via one
/// eigensolve of a generic combination.
Eigen::MatrixXcd joint_eigenvectors(const std::vector<Eigen::MatrixXcd> &ops);

/// Schmidt rank across (block, rest) by explicit index reshuffling and SVD.
int schmidt_rank(const Eigen::VectorXcd &psi, const std::vector<int> &dims, const std::vector<int> &block,
                 double cutoff = 1e-8);

/// True when every column of `a` matches some column of `b` up to a phase.
bool same_rays(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tol = 1e-9);

Eigen::VectorXcd random_vector(std::size_t dim, std::uint64_t seed);

}  // namespace testing_oracles

#endif
