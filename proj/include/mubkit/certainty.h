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

#ifndef MUBKIT_CERTAINTY_H
#define MUBKIT_CERTAINTY_H

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mubkit/mub.h"

namespace mubkit {

class PureState {
   public:
    /// Throws std::invalid_argument unless the squared norm is within 1e-12 of 1.
    explicit PureState(Eigen::VectorXcd amplitudes);
    /// Rescales a nonzero vector to unit norm.
    static PureState normalized(Eigen::VectorXcd amplitudes);
    /// Column `index` of the basis.
    static PureState from_basis(const Basis &basis, std::size_t index);

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const Eigen::VectorXcd &amplitudes() const { return amplitudes_; }

   private:
    Eigen::VectorXcd amplitudes_;
};

/// Normalized vector of M independent standard complex Gaussians.
PureState haar_random_state(std::size_t dim, std::mt19937_64 &rng);

/// P(m) = |<basis_m|psi>|^2.
Eigen::VectorXd probabilities(const PureState &state, const Basis &basis);

/// C^2 = sum_m P(m)^2.
double certainty(const PureState &state, const Basis &basis);

struct InequalityCheck {
    double lhs = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    /// False when the bases were not certified mutually unbiased, in which case
    /// the bound need not hold.
    bool guaranteed = true;
};

/// C_a^2 + C_b^2 against 1 + 1/M.
InequalityCheck check_pair(const PureState &state, const Basis &a, const Basis &b);
InequalityCheck check_pair(const PureState &state, const MubSet &set, std::size_t i, std::size_t j);

/// Sum of C^2 over J >= 2 bases against 1 + (J-1)/M (prime case) or 1 + (J-1)/sqrt(M).
InequalityCheck check_sum(const PureState &state, const std::vector<const Basis *> &bases, bool prime_case,
                          bool certified);
InequalityCheck check_sum(const PureState &state, const MubSet &set, bool prime_case);

struct FullInvariant {
    double lhs = 0.0;
    double deviation = 0.0;
};

/// Sum of C^2 over a complete set; equals 2 for every pure state.
/// Throws std::invalid_argument("full invariant requires M+1 bases").
FullInvariant check_full_invariant(const PureState &state, const MubSet &set);

struct CertaintyBounds {
    double pair = 0.0;
    double general_j = 0.0;
    double prime_j = 0.0;
    double full = 2.0;
};

CertaintyBounds certainty_bounds(std::size_t dim, std::size_t j);

/// Every applicable inequality for one state. The pair entry is the worst
/// pair (the two largest certainties).
struct CertaintyReport {
    std::size_t dim = 0;
    std::size_t j = 0;
    bool prime_case = false;
    bool certified = false;
    std::vector<double> per_basis;
    /// max over bases of |sum_m P(m) - 1|.
    double normalization_error = 0.0;
    CertaintyBounds bounds;
    std::optional<InequalityCheck> pair;
    std::optional<InequalityCheck> general_j;
    std::optional<InequalityCheck> prime_j;
    std::optional<InequalityCheck> full;
};

CertaintyReport certainty_report(const PureState &state, const MubSet &set);

/// Running extremes of a sweep over seeded Haar-random states.
struct MonteCarloSummary {
    std::uint64_t seed = 0;
    std::uint64_t states = 0;
    std::size_t dim = 0;
    std::size_t j = 0;
    bool prime_case = false;
    bool certified = false;
    CertaintyBounds bounds;
    std::optional<double> min_margin_pair;
    std::optional<double> min_margin_general_j;
    std::optional<double> min_margin_prime_j;
    std::optional<double> min_margin_full;
    std::optional<double> max_invariant_deviation;
    double min_certainty = 1.0;
    double max_certainty = 0.0;
    double max_normalization_error = 0.0;
};

/// State i is drawn from derive_seed(seed, i); threads only split the work.
MonteCarloSummary monte_carlo_sweep(const MubSet &set, std::uint64_t states, std::uint64_t seed,
                                    unsigned threads = 0);

void accumulate(MonteCarloSummary &summary, const CertaintyReport &report);

}  // namespace mubkit

#endif
