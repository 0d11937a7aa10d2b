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

#include "mubkit/separability.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mubkit/partition_search.h"

namespace mubkit {

ParticlePartition::ParticlePartition(std::vector<std::vector<int>> blocks, int n) : n_(n) {
    std::vector<int> seen(n, 0);
    for (auto &block : blocks) {
        if (block.empty()) {
            throw std::invalid_argument("partition blocks must be nonempty");
        }
        std::sort(block.begin(), block.end());
        for (int p : block) {
            if (p < 0 || p >= n || seen[p]++) {
                throw std::invalid_argument("partition blocks must be disjoint and within range");
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw std::invalid_argument("partition blocks must cover every particle");
    }
    std::sort(blocks.begin(), blocks.end());
    blocks_ = std::move(blocks);
}

ParticlePartition ParticlePartition::singletons(int n) {
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < n; ++i) blocks.push_back({i});
    return ParticlePartition(std::move(blocks), n);
}

ParticlePartition ParticlePartition::whole(int n) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return ParticlePartition({all}, n);
}

std::vector<int> ParticlePartition::size_profile() const {
    std::vector<int> sizes;
    for (const auto &b : blocks_) sizes.push_back(static_cast<int>(b.size()));
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

ParticlePartition ParticlePartition::join(const ParticlePartition &other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("partitions over different particle counts");
    }
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto *p : {this, &other}) {
        for (const auto &b : p->blocks_) {
            for (int v : b) parent[find(v)] = find(b.front());
        }
    }
    std::vector<std::vector<int>> blocks;
    std::vector<int> slot(n_, -1);
    for (int v = 0; v < n_; ++v) {
        int r = find(v);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[slot[r]].push_back(v);
    }
    return ParticlePartition(std::move(blocks), n_);
}

bool ParticlePartition::refines(const ParticlePartition &coarser) const {
    for (const auto &b : blocks_) {
        bool inside = std::any_of(coarser.blocks_.begin(), coarser.blocks_.end(), [&](const auto &c) {
            return std::includes(c.begin(), c.end(), b.begin(), b.end());
        });
        if (!inside) return false;
    }
    return true;
}

std::string ParticlePartition::str() const {
    std::string out;
    for (const auto &b : blocks_) {
        if (b.size() > 1) out += '(';
        for (int p : b) out += static_cast<char>('A' + p);
        if (b.size() > 1) out += ')';
    }
    return out;
}

namespace {

void partitions_rec(int next, int n, std::vector<std::vector<int>> &blocks, std::vector<ParticlePartition> &out) {
    if (next == n) {
        out.emplace_back(blocks, n);
        return;
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        blocks[i].push_back(next);
        partitions_rec(next + 1, n, blocks, out);
        blocks[i].pop_back();
    }
    blocks.push_back({next});
    partitions_rec(next + 1, n, blocks, out);
    blocks.pop_back();
}

void profiles_rec(int remaining, int max_part, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        profiles_rec(remaining - p, p, cur, out);
        cur.pop_back();
    }
}

ModMatrix class_rows(const CommutingClass &cls) {
    ModMatrix rows;
    for (const auto &r : cls.rows()) rows.push_back(r.coords());
    return rows;
}

// dim(V intersect W_block): N minus the rank of V on the coordinates outside the block.
int intersection_dim(const ModMatrix &rows, const std::vector<int> &block, int n, int d) {
    std::vector<int> outside;
    for (int k = 0; k < n; ++k) {
        if (!std::binary_search(block.begin(), block.end(), k)) {
            outside.push_back(k);
            outside.push_back(n + k);
        }
    }
    std::sort(outside.begin(), outside.end());
    return n - rank_on_columns(rows, outside, d);
}

void split_block(const ModMatrix &rows, std::vector<int> block, int n, int d,
                 std::vector<std::vector<int>> &out) {
    const int size = static_cast<int>(block.size());
    // Subsets containing block[0], proper, in increasing bitmask order.
    for (unsigned mask = 1; mask < (1u << size) - 1; mask += 2) {
        std::vector<int> left, right;
        for (int i = 0; i < size; ++i) {
            ((mask >> i) & 1u ? left : right).push_back(block[i]);
        }
        if (intersection_dim(rows, left, n, d) + intersection_dim(rows, right, n, d) == size) {
            split_block(rows, left, n, d, out);
            split_block(rows, right, n, d, out);
            return;
        }
    }
    out.push_back(std::move(block));
}

}  // namespace

std::vector<ParticlePartition> all_particle_partitions(int n) {
    std::vector<ParticlePartition> out;
    std::vector<std::vector<int>> blocks;
    if (n <= 0) return out;
    blocks.push_back({0});
    partitions_rec(1, n, blocks, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> category_profiles(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    profiles_rec(n, n, cur, out);
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return out;
}

std::string category_name(const std::vector<int> &profile, int d) {
    const int n = std::accumulate(profile.begin(), profile.end(), 0);
    const int k = static_cast<int>(profile.size());
    if (k == n) return "fully-separable";
    if (k == 1) return "nonseparable";
    std::string name = k == 2 ? "biseparable" : k == 3 ? "triseparable" : std::to_string(k) + "-separable";
    int siblings = 0;
    for (const auto &p : category_profiles(n)) {
        siblings += static_cast<int>(p.size()) == k;
    }
    if (siblings > 1) {
        std::vector<long long> dims;
        for (int s : profile) {
            long long v = 1;
            for (int i = 0; i < s; ++i) v *= d;
            dims.push_back(v);
        }
        std::sort(dims.begin(), dims.end());
        name += '-';
        for (std::size_t i = 0; i < dims.size(); ++i) {
            if (i) name += 'x';
            name += std::to_string(dims[i]);
        }
    }
    return name;
}

int StructureSignature::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

std::string StructureSignature::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i) os << ',';
        os << counts[i];
    }
    os << ')';
    return os.str();
}

StructureSignature StructureSignature::parse(const std::string &text) {
    StructureSignature out;
    std::string cleaned;
    for (char c : text) {
        if (c == '(' || c == ')' || c == ' ') continue;
        cleaned += c;
    }
    std::istringstream is(cleaned);
    std::string item;
    while (std::getline(is, item, ',')) {
        std::size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != item.size() || v < 0) {
            throw std::invalid_argument("malformed signature '" + text + "'");
        }
        out.counts.push_back(v);
    }
    if (out.counts.empty()) {
        throw std::invalid_argument("malformed signature '" + text + "'");
    }
    return out;
}

bool separable_across(const CommutingClass &cls, const ParticlePartition &partition) {
    const int n = cls.dims().n();
    const int d = cls.dims().d();
    if (partition.n() != n) {
        throw std::invalid_argument("partition does not match particle count");
    }
    ModMatrix rows = class_rows(cls);
    int total = 0;
    for (const auto &block : partition.blocks()) {
        total += intersection_dim(rows, block, n, d);
    }
    return total == n;
}

FactorizationClass factorization_from_partition(const ParticlePartition &partition, int d) {
    FactorizationClass out;
    out.partition = partition;
    const auto profile = partition.size_profile();
    const auto profiles = category_profiles(partition.n());
    out.category = static_cast<int>(std::find(profiles.begin(), profiles.end(), profile) - profiles.begin());
    out.category_name = category_name(profile, d);
    return out;
}

FactorizationClass finest_factorization(const CommutingClass &cls) {
    const int n = cls.dims().n();
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<int>> blocks;
    split_block(class_rows(cls), all, n, cls.dims().d(), blocks);
    return factorization_from_partition(ParticlePartition(std::move(blocks), n), cls.dims().d());
}

StructureSignature signature_from_categories(const std::vector<int> &categories, int n) {
    StructureSignature sig;
    sig.counts.assign(category_profiles(n).size(), 0);
    for (int c : categories) {
        sig.counts.at(c)++;
    }
    return sig;
}

StructureSignature structure_signature(const MubPartition &partition) {
    if (!validate_partition(partition).valid) {
        throw std::invalid_argument("not a complete MUB partition");
    }
    std::vector<int> categories;
    for (const auto &cls : partition.classes) {
        categories.push_back(finest_factorization(cls).category);
    }
    return signature_from_categories(categories, partition.dims.n());
}

int schmidt_rank(const Eigen::VectorXcd &state, const std::vector<int> &particle_dims,
                 const std::vector<int> &block, double cutoff) {
    const int n = static_cast<int>(particle_dims.size());
    std::vector<bool> in_block(n, false);
    for (int p : block) in_block.at(p) = true;
    Eigen::Index rows = 1, cols = 1;
    for (int k = 0; k < n; ++k) (in_block[k] ? rows : cols) *= particle_dims[k];
    if (rows * cols != state.size()) {
        throw std::invalid_argument("state size does not match particle dimensions");
    }
    Eigen::MatrixXcd reshaped(rows, cols);
    std::vector<int> digits(n);
    for (Eigen::Index j = 0; j < state.size(); ++j) {
        Eigen::Index rest = j;
        for (int k = n - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rest % particle_dims[k]);
            rest /= particle_dims[k];
        }
        Eigen::Index r = 0, c = 0;
        for (int k = 0; k < n; ++k) {
            if (in_block[k]) {
                r = r * particle_dims[k] + digits[k];
            } else {
                c = c * particle_dims[k] + digits[k];
            }
        }
        reshaped(r, c) = state(j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(reshaped);
    const auto &s = svd.singularValues();
    return static_cast<int>((s.array() > cutoff).count());
}

}  // namespace mubkit
