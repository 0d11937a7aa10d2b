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

#ifndef MUBKIT_FINITE_FIELD_H
#define MUBKIT_FINITE_FIELD_H

#include <vector>

namespace mubkit {

/// Row vectors over Z_d, d prime.
using ModMatrix = std::vector<std::vector<int>>;

inline int mod(long long v, int d) {
    long long r = v % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

/// Multiplicative inverse of a nonzero element of Z_d (d prime).
int inverse_mod(int a, int d);

/// Reduces in place to reduced row-echelon form, dropping zero rows. Returns the rank.
int row_reduce(ModMatrix &rows, int d);

/// Rank of the rows restricted to the given column subset.
int rank_on_columns(const ModMatrix &rows, const std::vector<int> &columns, int d);

}  // namespace mubkit

#endif
