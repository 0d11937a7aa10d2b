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

#include "mubkit/extremizer.h"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "mubkit/random.h"

namespace mubkit {

ExtremizationProblem ExtremizationProblem::from_set(const MubSet &set, const std::vector<std::size_t> &subset,
                                                    Sense sense) {
    ExtremizationProblem p;
    for (auto i : subset) {
        p.bases.push_back(set.bases.at(i));
        p.weights.push_back(1.0);
    }
    p.sense = sense;
    return p;
}

std::size_t ExtremizationProblem::dim() const { return bases.empty() ? 0 : bases.front().dim(); }

void ExtremizationProblem::validate() const {
    if (bases.empty()) {
        throw std::invalid_argument("extremization needs at least one basis");
    }
    if (weights.size() != bases.size()) {
        throw std::invalid_argument("one weight per basis is required");
    }
    for (const auto &b : bases) {
        if (b.dim() != dim()) throw std::invalid_argument("bases have different dimensions");
    }
    for (double w : weights) {
        if (!std::isfinite(w)) throw std::invalid_argument("weights must be finite");
    }
    if (restarts < 1) throw std::invalid_argument("restarts must be positive");
}

namespace {

struct Evaluation {
    double value = 0.0;
    Eigen::VectorXcd gradient;  // Wirtinger, not yet projected
};

// C^2 of one basis and its Wirtinger gradient 2 sum_m |z_m|^2 z_m e_m.
Evaluation certainty_with_gradient(const Eigen::VectorXcd &psi, const Basis &basis) {
    const Eigen::VectorXcd z = basis.vectors.adjoint() * psi;
    const Eigen::VectorXd p = z.cwiseAbs2();
    Evaluation e;
    e.value = p.squaredNorm();
    e.gradient = basis.vectors * (2.0 * p.cast<std::complex<double>>().cwiseProduct(z));
    return e;
}

Eigen::VectorXcd project_tangent(const Eigen::VectorXcd &psi, Eigen::VectorXcd g) {
    g -= psi.dot(g) * psi;
    return g;
}

using Functional = std::function<Evaluation(const Eigen::VectorXcd &)>;

struct AscentOutcome {
    Eigen::VectorXcd state;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    double gradient_norm = 0.0;
};

struct AscentLimits {
    double gradient_tolerance = 1e-7;
    double step_tolerance = 1e-12;
    int max_iterations = 20000;
};

// Projected gradient ascent on the unit sphere, normalizing after each step.
AscentOutcome ascend(const Functional &f, Eigen::VectorXcd psi, const AscentLimits &limits) {
    constexpr double kArmijo = 1e-4;
    constexpr double kShrink = 0.5;
    AscentOutcome out;
    Evaluation cur = f(psi);
    Eigen::VectorXcd grad = project_tangent(psi, cur.gradient);
    for (out.iterations = 0; out.iterations < limits.max_iterations; ++out.iterations) {
        const double gnorm2 = grad.squaredNorm();
        if (std::sqrt(gnorm2) < limits.gradient_tolerance) break;
        // Directional derivative along grad is 2 |grad|^2.
        double step = 1.0;
        bool accepted = false;
        while (step >= limits.step_tolerance) {
            Eigen::VectorXcd trial = (psi + step * grad).normalized();
            Evaluation next = f(trial);
            if (next.value >= cur.value + kArmijo * step * 2.0 * gnorm2) {
                psi = std::move(trial);
                cur = std::move(next);
                accepted = true;
                break;
            }
            step *= kShrink;
        }
        grad = project_tangent(psi, cur.gradient);
        if (!accepted) break;
    }
    out.gradient_norm = grad.norm();
    out.converged = out.gradient_norm < limits.gradient_tolerance;
    out.value = cur.value;
    out.state = std::move(psi);
    return out;
}

Functional weighted_objective(const ExtremizationProblem &problem, double sign) {
    return [&problem, sign](const Eigen::VectorXcd &psi) {
        Evaluation total;
        total.gradient = Eigen::VectorXcd::Zero(psi.size());
        for (std::size_t j = 0; j < problem.bases.size(); ++j) {
            Evaluation e = certainty_with_gradient(psi, problem.bases[j]);
            total.value += sign * problem.weights[j] * e.value;
            total.gradient += (sign * problem.weights[j]) * e.gradient;
        }
        return total;
    };
}

}  // namespace

ObjectiveGradient objective_and_gradient(const PureState &state, const ExtremizationProblem &problem) {
    problem.validate();
    if (state.dim() != problem.dim()) {
        throw std::invalid_argument("state and problem dimensions differ");
    }
    Evaluation e = weighted_objective(problem, 1.0)(state.amplitudes());
    return ObjectiveGradient{e.value, project_tangent(state.amplitudes(), std::move(e.gradient))};
}

ExtremizationResult extremize(const ExtremizationProblem &problem) {
    problem.validate();
    const double sign = problem.sense == Sense::kMaximize ? 1.0 : -1.0;
    const Functional f = weighted_objective(problem, sign);
    const AscentLimits limits{problem.gradient_tolerance, problem.step_tolerance, problem.max_iterations};
    std::optional<ExtremizationResult> best;
    for (int r = 0; r < problem.restarts; ++r) {
        std::mt19937_64 rng(derive_seed(problem.seed, static_cast<std::uint64_t>(r)));
        AscentOutcome run = ascend(f, haar_random_state(problem.dim(), rng).amplitudes(), limits);
        const double value = sign * run.value;
        const bool better = !best || (sign > 0 ? value > best->value : value < best->value);
        if (!better) continue;
        PureState state = PureState::normalized(run.state);
        std::vector<double> per_basis;
        double direct = 0.0;
        for (std::size_t j = 0; j < problem.bases.size(); ++j) {
            per_basis.push_back(certainty(state, problem.bases[j]));
            direct += problem.weights[j] * per_basis.back();
        }
        best = ExtremizationResult{std::move(state), direct, std::move(per_basis), run.converged,
                                   run.iterations, run.gradient_norm, r};
    }
    return *best;
}

RegionPoint certainty_region_point(const Basis &a, const Basis &b, double target, const RegionScanOptions &options) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("bases have different dimensions");
    }
    const AscentLimits limits{1e-9, 1e-14, 20000};
    std::optional<RegionPoint> best;
    double best_violation = 0.0;
    for (int r = 0; r < options.restarts; ++r) {
        std::mt19937_64 rng(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
        Eigen::VectorXcd psi = haar_random_state(a.dim(), rng).amplitudes();
        double mu = options.initial_penalty;
        RegionPoint point;
        point.target = target;
        for (int round = 0; round < options.max_rounds; ++round, mu *= 2.0) {
            Functional f = [&](const Eigen::VectorXcd &x) {
                Evaluation ea = certainty_with_gradient(x, a);
                Evaluation eb = certainty_with_gradient(x, b);
                const double gap = ea.value - target;
                Evaluation e;
                e.value = eb.value - mu * gap * gap;
                e.gradient = eb.gradient - (2.0 * mu * gap) * ea.gradient;
                return e;
            };
            psi = ascend(f, psi, limits).state;
            point.penalty_rounds = round + 1;
            const PureState s = PureState::normalized(psi);
            point.certainty_a = certainty(s, a);
            point.certainty_b = certainty(s, b);
            if (round + 1 >= options.min_rounds &&
                std::abs(point.certainty_a - target) <= options.constraint_tolerance) {
                break;
            }
        }
        const double violation = std::abs(point.certainty_a - target);
        const bool feasible = violation <= options.constraint_tolerance;
        const bool best_feasible = best && best_violation <= options.constraint_tolerance;
        bool better = false;
        if (!best) {
            better = true;
        } else if (feasible && !best_feasible) {
            better = true;
        } else if (feasible == best_feasible) {
            better = feasible ? point.certainty_b > best->certainty_b : violation < best_violation;
        }
        if (better) {
            best = point;
            best_violation = violation;
        }
    }
    return *best;
}

std::vector<RegionPoint> certainty_region_scan(const Basis &a, const Basis &b, int grid,
                                               const RegionScanOptions &options) {
    if (grid < 2) {
        throw std::invalid_argument("region scan grid needs at least two points");
    }
    const double lo = 1.0 / static_cast<double>(a.dim());
    std::vector<RegionPoint> out;
    for (int i = 0; i < grid; ++i) {
        const double t = lo + (1.0 - lo) * i / (grid - 1);
        out.push_back(certainty_region_point(a, b, t, options));
    }
    return out;
}

}  // namespace mubkit
