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

#ifndef MUBKIT_SEPARABILITY_H
#define MUBKIT_SEPARABILITY_H

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mubkit/weyl.h"

namespace mubkit {

struct MubPartition;

/// Disjoint blocks of 0-based particle indices covering {0..N-1}.
///
/// Kept canonical: each block ascending, blocks ordered by their first element.
class ParticlePartition {
   public:
    ParticlePartition() = default;
    /// Throws std::invalid_argument unless the blocks partition {0..n-1}.
    ParticlePartition(std::vector<std::vector<int>> blocks, int n);

    static ParticlePartition singletons(int n);
    static ParticlePartition whole(int n);

    const std::vector<std::vector<int>> &blocks() const { return blocks_; }
    int n() const { return n_; }
    /// Block sizes in descending order.
    std::vector<int> size_profile() const;
    /// Finest common coarsening.
    ParticlePartition join(const ParticlePartition &other) const;
    bool refines(const ParticlePartition &coarser) const;
    /// 1-based particle letters, e.g. "A(BC)" for {{0},{1,2}}.
    std::string str() const;

    bool operator==(const ParticlePartition &other) const = default;
    auto operator<=>(const ParticlePartition &other) const = default;

   private:
    std::vector<std::vector<int>> blocks_;
    int n_ = 0;
};

/// All set partitions of {0..n-1}, canonical order.
std::vector<ParticlePartition> all_particle_partitions(int n);

/// Block-size profiles (descending) ordered from most to least separable:
/// more blocks first, then lexicographically smaller profile first.
std::vector<std::vector<int>> category_profiles(int n);

/// Human-readable category name, e.g. "fully-separable", "biseparable-4x4".
std::string category_name(const std::vector<int> &profile, int d);

struct FactorizationClass {
    ParticlePartition partition;
    /// Index into category_profiles(n).
    int category = 0;
    std::string category_name;
};

/// Ordered per-category counts, most separable first.
struct StructureSignature {
    std::vector<int> counts;

    int total() const;
    /// Comma-joined tuple, e.g. "(2,3,4)".
    std::string str() const;
    static StructureSignature parse(const std::string &text);

    bool operator==(const StructureSignature &other) const = default;
    auto operator<=>(const StructureSignature &other) const = default;
};

/// dim(V intersect W_block) summed over blocks equals N, computed exactly over Z_d.
bool separable_across(const CommutingClass &cls, const ParticlePartition &partition);

/// Unique finest partition across which the class factorizes.
FactorizationClass finest_factorization(const CommutingClass &cls);

FactorizationClass factorization_from_partition(const ParticlePartition &partition, int d);

/// Throws std::invalid_argument("not a complete MUB partition") if incomplete.
StructureSignature structure_signature(const MubPartition &partition);
StructureSignature signature_from_categories(const std::vector<int> &categories, int n);

/// Number of singular values above `cutoff` when the state is reshaped across
/// (block, rest). Used as the numerical cross-check of separable_across.
int schmidt_rank(const Eigen::VectorXcd &state, const std::vector<int> &particle_dims,
                 const std::vector<int> &block, double cutoff = 1e-8);

}  // namespace mubkit

#endif
