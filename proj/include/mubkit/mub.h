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

#ifndef MUBKIT_MUB_H
#define MUBKIT_MUB_H

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mubkit/partition_search.h"
#include "mubkit/separability.h"
#include "mubkit/weyl.h"

namespace mubkit {

/// An orthonormal basis of C^M stored as the columns of `vectors`.
struct Basis {
    Eigen::MatrixXcd vectors;
    /// Commuting class whose joint eigenbasis this is, if any.
    std::optional<CommutingClass> source;
    /// Finest particle partition across which the basis vectors factorize, if known.
    std::optional<ParticlePartition> factorization;

    std::size_t dim() const { return static_cast<std::size_t>(vectors.rows()); }
};

/// Largest deviation of V^dagger V from the identity.
double orthonormality_error(const Basis &basis);

/// Largest off-diagonal magnitude of B^dagger W(g) B over every member g of the source class.
double diagonalization_error(const Basis &basis);

struct Certification {
    double max_dev = 0.0;
    bool pass = false;
};

/// max over all k, m of | |<a_k|b_m>|^2 - 1/M |.
Certification certify_unbiased(const Basis &a, const Basis &b, double tol = 1e-9);

struct MubSet {
    /// Local dimension of each particle; M is their product.
    std::vector<int> particle_dims;
    std::vector<Basis> bases;
    bool certified = false;
    double max_deviation = 0.0;
    /// True when unbiasedness was checked on sampled vector pairs only.
    bool sampled_certification = false;

    std::size_t dim() const;
    /// All particles share one prime dimension.
    bool prime_case() const;
    bool complete() const { return bases.size() == dim() + 1; }
};

struct CertifyOptions {
    double tol = 1e-9;
    /// Above this many inner products, each basis pair is checked on a random sample.
    std::uint64_t exhaustive_limit = 10'000'000;
    std::uint64_t samples_per_pair = 10'000;
    std::uint64_t seed = 7;
};

/// Checks every pair of bases and records the outcome on the set.
Certification certify_set(MubSet &set, const CertifyOptions &options = {});

/// Joint eigenbasis via character projectors of the lifted abelian group.
///
/// Vector t corresponds to the character k (k_1 most significant) under which
/// the i-th canonical generator acts as omega^{k_i}.
Basis eigenbasis_of_class(const CommutingClass &cls);

/// Bases for every class of the partition, labelled with their factorization.
MubSet mub_from_partition(const MubPartition &partition);

/// M+1 certified bases for N particles of prime dimension d.
MubSet build_complete_mub(const PrimeDim &dims);

using Pairing = std::vector<std::pair<std::size_t, std::size_t>>;

/// Pairs each basis of `a` with an unused basis of `b` of the same factorization
/// partition, falling back to the same category, then to any unused basis.
Pairing default_pairing(const MubSet &a, const MubSet &b);

/// Basis i of the result is {u (x) v} over the i-th pair. Equal particle counts
/// are interleaved, so particle k of the result has dimension a_k * b_k.
MubSet tensor_mub(const MubSet &a, const MubSet &b, const Pairing &pairing,
                  const CertifyOptions &options = {});

}  // namespace mubkit

#endif
