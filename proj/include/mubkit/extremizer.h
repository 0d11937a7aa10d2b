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

#ifndef MUBKIT_EXTREMIZER_H
#define MUBKIT_EXTREMIZER_H

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mubkit/certainty.h"
#include "mubkit/mub.h"

namespace mubkit {

enum class Sense { kMaximize, kMinimize };

/// Optimize sum_j w_j C_j^2 over unit vectors.
struct ExtremizationProblem {
    std::vector<Basis> bases;
    std::vector<double> weights;
    Sense sense = Sense::kMaximize;
    int restarts = 32;
    /// Line search gives up once the trial step falls below this.
    double step_tolerance = 1e-12;
    double gradient_tolerance = 1e-7;
    int max_iterations = 20000;
    std::uint64_t seed = 1;

    /// Unit weights over the given subset of a set.
    static ExtremizationProblem from_set(const MubSet &set, const std::vector<std::size_t> &subset, Sense sense);
    std::size_t dim() const;
    /// Throws std::invalid_argument on empty bases, mismatched sizes or non-finite weights.
    void validate() const;
};

struct ObjectiveGradient {
    double value = 0.0;
    /// Wirtinger gradient projected orthogonally to the state; its real
    /// pairing 2 Re<g, delta> is the directional derivative along tangent delta.
    Eigen::VectorXcd gradient;
};

ObjectiveGradient objective_and_gradient(const PureState &state, const ExtremizationProblem &problem);

struct ExtremizationResult {
    PureState state;
    double value = 0.0;
    std::vector<double> per_basis;
    bool converged = false;
    int iterations = 0;
    double gradient_norm = 0.0;
    int restart = 0;
};

/// Best over restarts of projected gradient steps with Armijo backtracking; ties
/// keep the lowest restart index.
ExtremizationResult extremize(const ExtremizationProblem &problem);

struct RegionPoint {
    double target = 0.0;
    double certainty_a = 0.0;
    double certainty_b = 0.0;
    int penalty_rounds = 0;
};

struct RegionScanOptions {
    int restarts = 8;
    double constraint_tolerance = 1e-4;
    double initial_penalty = 10.0;
    int min_rounds = 5;
    int max_rounds = 40;
    std::uint64_t seed = 1;
};

/// For each target t in an even grid on [1/M, 1], maximizes C_b^2 with C_a^2
/// held near t by a doubling quadratic penalty.
std::vector<RegionPoint> certainty_region_scan(const Basis &a, const Basis &b, int grid,
                                               const RegionScanOptions &options = {});

/// Same for a single target value.
RegionPoint certainty_region_point(const Basis &a, const Basis &b, double target,
                                   const RegionScanOptions &options = {});

}  // namespace mubkit

#endif
