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

#ifndef MUBKIT_PARTITION_SEARCH_H
#define MUBKIT_PARTITION_SEARCH_H

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mubkit/separability.h"
#include "mubkit/weyl.h"

namespace mubkit {

/// M+1 commuting classes that split the nonzero labels disjointly: a complete MUB structure.
struct MubPartition {
    PrimeDim dims;
    /// Sorted by canonical rows.
    std::vector<CommutingClass> classes;

    MubPartition(PrimeDim dims_in, std::vector<CommutingClass> classes_in);
};

struct PartitionValidation {
    bool valid = true;
    std::vector<std::string> reasons;
};

PartitionValidation validate_partition(const MubPartition &partition);

enum class SearchMode { kExhaustive, kSampled };

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t partitions_visited = 0;
    std::uint64_t restarts_run = 0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

struct Census {
    explicit Census(PrimeDim d) : dims(d) {}

    PrimeDim dims;
    SearchMode mode = SearchMode::kExhaustive;
    /// Partition count (exhaustive) or number of restarts yielding it (sampled).
    std::map<StructureSignature, std::uint64_t> signature_counts;
    std::map<StructureSignature, MubPartition> examples;
    SearchStats stats;
    std::optional<StructureSignature> target;
    /// Only meaningful when a target was given.
    bool target_found = false;
};

/// The precomputed exact-cover instance: every Lagrangian with its category.
class PartitionProblem {
   public:
    explicit PartitionProblem(const PrimeDim &dims);

    const PrimeDim &dims() const { return dims_; }
    const std::vector<CommutingClass> &classes() const { return classes_; }
    const std::vector<int> &categories() const { return categories_; }
    /// For each nonzero label index (offset by one), the classes containing it.
    const std::vector<std::vector<std::uint32_t>> &classes_of_point() const { return classes_of_point_; }
    std::size_t point_count() const { return classes_of_point_.size(); }
    std::size_t category_count() const { return category_count_; }

    MubPartition make_partition(const std::vector<std::uint32_t> &chosen) const;

   private:
    PrimeDim dims_;
    std::vector<CommutingClass> classes_;
    std::vector<int> categories_;
    std::vector<std::vector<std::uint32_t>> classes_of_point_;
    std::size_t category_count_ = 0;
};

struct ExhaustiveOptions {
    /// Largest M for which full enumeration is attempted (N = 1 is always allowed).
    std::size_t max_dimension = 9;
    unsigned threads = 0;  // 0: MUBKIT_THREADS or hardware concurrency
    /// Checkpoint file rewritten after every finished top-level branch; empty disables.
    std::string checkpoint_path;
    bool resume = false;
};

/// Partition visitor: return false to stop the enumeration.
using PartitionVisitor = std::function<bool(const MubPartition &, const StructureSignature &)>;

/// Visits every MUB partition exactly once. Throws BudgetError past the budget.
Census enumerate_partitions(const PrimeDim &dims, const ExhaustiveOptions &options = {},
                            const PartitionVisitor &visitor = {});

struct SampledOptions {
    std::optional<StructureSignature> target;
    std::uint64_t node_budget = 10'000'000;  // per restart
    std::uint64_t restarts = 100;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

/// Randomized exact cover with restarts. Deterministic given the seed.
Census sampled_search(const PrimeDim &dims, const SampledOptions &options = {});

/// First partition in canonical search order.
MubPartition find_partition(const PrimeDim &dims);

/// Worker count from MUBKIT_THREADS, falling back to hardware concurrency.
unsigned worker_threads(unsigned requested);

}  // namespace mubkit

#endif
