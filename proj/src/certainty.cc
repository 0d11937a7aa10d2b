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

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mubkit/random.h"

namespace mubkit {

PureState::PureState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0 || std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-12) {
        throw std::invalid_argument("state is not normalized");
    }
}

PureState PureState::normalized(Eigen::VectorXcd amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return PureState(std::move(amplitudes));
}

PureState PureState::from_basis(const Basis &basis, std::size_t index) {
    if (index >= static_cast<std::size_t>(basis.vectors.cols())) {
        throw std::out_of_range("basis vector index out of range");
    }
    return normalized(basis.vectors.col(static_cast<Eigen::Index>(index)));
}

PureState haar_random_state(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(i) = {re, im};
    }
    return PureState::normalized(std::move(v));
}

Eigen::VectorXd probabilities(const PureState &state, const Basis &basis) {
    if (state.dim() != basis.dim()) {
        throw std::invalid_argument("state and basis dimensions differ");
    }
    return (basis.vectors.adjoint() * state.amplitudes()).cwiseAbs2();
}

double certainty(const PureState &state, const Basis &basis) { return probabilities(state, basis).squaredNorm(); }

CertaintyBounds certainty_bounds(std::size_t dim, std::size_t j) {
    const double m = static_cast<double>(dim);
    const double extra = static_cast<double>(j) - 1.0;
    CertaintyBounds b;
    b.pair = 1.0 + 1.0 / m;
    b.general_j = 1.0 + extra / std::sqrt(m);
    b.prime_j = 1.0 + extra / m;
    b.full = 2.0;
    return b;
}

namespace {

InequalityCheck make_check(double lhs, double bound, bool guaranteed) {
    return InequalityCheck{lhs, bound, bound - lhs, guaranteed};
}

}  // namespace

InequalityCheck check_pair(const PureState &state, const Basis &a, const Basis &b) {
    const bool certified = certify_unbiased(a, b).pass;
    const double lhs = certainty(state, a) + certainty(state, b);
    return make_check(lhs, certainty_bounds(state.dim(), 2).pair, certified);
}

InequalityCheck check_pair(const PureState &state, const MubSet &set, std::size_t i, std::size_t j) {
    const double lhs = certainty(state, set.bases.at(i)) + certainty(state, set.bases.at(j));
    return make_check(lhs, certainty_bounds(state.dim(), 2).pair, set.certified && i != j);
}

InequalityCheck check_sum(const PureState &state, const std::vector<const Basis *> &bases, bool prime_case,
                          bool certified) {
    if (bases.size() < 2) {
        throw std::invalid_argument("certainty sums need at least two bases");
    }
    double lhs = 0.0;
    for (const Basis *b : bases) lhs += certainty(state, *b);
    const auto bounds = certainty_bounds(state.dim(), bases.size());
    return make_check(lhs, prime_case ? bounds.prime_j : bounds.general_j, certified);
}

InequalityCheck check_sum(const PureState &state, const MubSet &set, bool prime_case) {
    std::vector<const Basis *> bases;
    for (const auto &b : set.bases) bases.push_back(&b);
    return check_sum(state, bases, prime_case && set.prime_case(), set.certified);
}

FullInvariant check_full_invariant(const PureState &state, const MubSet &set) {
    if (!set.complete()) {
        throw std::invalid_argument("full invariant requires M+1 bases");
    }
    FullInvariant out;
    for (const auto &b : set.bases) out.lhs += certainty(state, b);
    out.deviation = std::abs(out.lhs - 2.0);
    return out;
}

CertaintyReport certainty_report(const PureState &state, const MubSet &set) {
    CertaintyReport r;
    r.dim = set.dim();
    r.j = set.bases.size();
    r.prime_case = set.prime_case();
    r.certified = set.certified;
    r.bounds = certainty_bounds(r.dim, r.j);
    double total = 0.0;
    for (const auto &b : set.bases) {
        const Eigen::VectorXd p = probabilities(state, b);
        r.normalization_error = std::max(r.normalization_error, std::abs(p.sum() - 1.0));
        r.per_basis.push_back(p.squaredNorm());
        total += r.per_basis.back();
    }
    if (r.j >= 2) {
        std::vector<double> sorted = r.per_basis;
        std::partial_sort(sorted.begin(), sorted.begin() + 2, sorted.end(), std::greater<>());
        r.pair = make_check(sorted[0] + sorted[1], r.bounds.pair, r.certified);
        r.general_j = make_check(total, r.bounds.general_j, r.certified);
        // With two bases the sharper sum bound coincides with the pair bound.
        if (r.prime_case && r.j >= 3) {
            r.prime_j = make_check(total, r.bounds.prime_j, r.certified);
        }
        if (r.prime_case && set.complete()) {
            r.full = make_check(total, r.bounds.full, r.certified);
        }
    }
    return r;
}

void accumulate(MonteCarloSummary &s, const CertaintyReport &r) {
    auto lower = [](std::optional<double> &slot, const std::optional<InequalityCheck> &check) {
        if (check) slot = slot ? std::min(*slot, check->margin) : check->margin;
    };
    lower(s.min_margin_pair, r.pair);
    lower(s.min_margin_general_j, r.general_j);
    lower(s.min_margin_prime_j, r.prime_j);
    lower(s.min_margin_full, r.full);
    if (r.full) {
        const double dev = std::abs(r.full->lhs - 2.0);
        s.max_invariant_deviation = s.max_invariant_deviation ? std::max(*s.max_invariant_deviation, dev) : dev;
    }
    for (double c : r.per_basis) {
        s.min_certainty = std::min(s.min_certainty, c);
        s.max_certainty = std::max(s.max_certainty, c);
    }
    s.max_normalization_error = std::max(s.max_normalization_error, r.normalization_error);
    s.states++;
}

namespace {

void merge(MonteCarloSummary &into, const MonteCarloSummary &part) {
    auto lower = [](std::optional<double> &a, const std::optional<double> &b) {
        if (b) a = a ? std::min(*a, *b) : *b;
    };
    lower(into.min_margin_pair, part.min_margin_pair);
    lower(into.min_margin_general_j, part.min_margin_general_j);
    lower(into.min_margin_prime_j, part.min_margin_prime_j);
    lower(into.min_margin_full, part.min_margin_full);
    if (part.max_invariant_deviation) {
        into.max_invariant_deviation = into.max_invariant_deviation
                                           ? std::max(*into.max_invariant_deviation, *part.max_invariant_deviation)
                                           : *part.max_invariant_deviation;
    }
    into.min_certainty = std::min(into.min_certainty, part.min_certainty);
    into.max_certainty = std::max(into.max_certainty, part.max_certainty);
    into.max_normalization_error = std::max(into.max_normalization_error, part.max_normalization_error);
    into.states += part.states;
}

}  // namespace

MonteCarloSummary monte_carlo_sweep(const MubSet &set, std::uint64_t states, std::uint64_t seed, unsigned threads) {
    MonteCarloSummary total;
    total.seed = seed;
    total.dim = set.dim();
    total.j = set.bases.size();
    total.prime_case = set.prime_case();
    total.certified = set.certified;
    total.bounds = certainty_bounds(total.dim, total.j);
    const unsigned workers = std::max(1u, std::min<unsigned>(worker_threads(threads),
                                                             static_cast<unsigned>(std::max<std::uint64_t>(states, 1))));
    std::vector<MonteCarloSummary> parts(workers);
    auto work = [&](unsigned w) {
        // Min/max reductions are order-independent, so striding is deterministic.
        for (std::uint64_t i = w; i < states; i += workers) {
            std::mt19937_64 rng(derive_seed(seed, i));
            accumulate(parts[w], certainty_report(haar_random_state(total.dim, rng), set));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto &t : pool) t.join();
    for (const auto &p : parts) merge(total, p);
    return total;
}

}  // namespace mubkit
