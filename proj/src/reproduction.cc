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

#include "mubkit/reproduction.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "mubkit/certainty.h"
#include "mubkit/extremizer.h"
#include "mubkit/mub.h"
#include "mubkit/partition_search.h"
#include "mubkit/random.h"
#include "mubkit/separability.h"

namespace mubkit {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

CriterionResult criterion(int id, std::string title, std::string claim) {
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    r.claim = std::move(claim);
    return r;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

std::string signature_set(const Census &c) {
    std::string out = "{";
    for (const auto &[sig, n] : c.signature_counts) {
        if (out.size() > 1) out += ",";
        out += sig.str();
    }
    return out + "}";
}

std::set<StructureSignature> signatures(std::initializer_list<const char *> list) {
    std::set<StructureSignature> out;
    for (const char *s : list) out.insert(StructureSignature::parse(s));
    return out;
}

std::set<StructureSignature> found(const Census &c) {
    std::set<StructureSignature> out;
    for (const auto &[sig, n] : c.signature_counts) out.insert(sig);
    return out;
}

CriterionResult mub_completeness() {
    CriterionResult r = criterion(1, "MUB completeness", "M+1 mutually unbiased bases for prime d");
    r.pass = true;
    std::ostringstream detail;
    const std::vector<std::pair<int, int>> cases = {{2, 1}, {3, 1}, {5, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}};
    for (auto [d, n] : cases) {
        const auto start = Clock::now();
        PrimeDim dims(d, n);
        MubSet set = build_complete_mub(dims);
        const double t = seconds_since(start);
        const double limit = (d == 2 && n == 4) ? 600.0 : 60.0;
        const bool ok = set.bases.size() == dims.m() + 1 && set.certified && !set.sampled_certification &&
                        set.max_deviation < 1e-9 && t < limit;
        r.pass = r.pass && ok;
        detail << "(" << d << "," << n << "):" << set.bases.size() << " bases dev=" << fmt(set.max_deviation)
               << (ok ? "" : " FAIL") << "; ";
    }
    r.detail = detail.str();
    if (r.detail.size() >= 2) r.detail.resize(r.detail.size() - 2);
    return r;
}

CriterionResult exhaustive_census(int id, const std::string &title, const std::string &claim, int d, int n,
                                  const std::set<StructureSignature> &expected, double limit, unsigned threads) {
    CriterionResult r = criterion(id, title, claim);
    ExhaustiveOptions options;
    options.threads = threads;
    const auto start = Clock::now();
    Census c = enumerate_partitions(PrimeDim(d, n), options);
    const double t = seconds_since(start);
    bool valid = true;
    for (const auto &[sig, part] : c.examples) {
        valid = valid && validate_partition(part).valid && structure_signature(part) == sig;
    }
    r.pass = found(c) == expected && valid && t < limit;
    r.detail = "signatures " + signature_set(c) + " over " + std::to_string(c.stats.partitions_visited) +
               " partitions in " + fmt(t) + " s";
    return r;
}

CriterionResult three_qutrit_signatures(const ReproductionOptions &o) {
    CriterionResult r = criterion(5, "Three-qutrit signatures", "examples of (0,12,16), (1,9,18), (2,6,20), (3,3,22), (4,0,24)");
    r.pass = true;
    std::ostringstream detail;
    PrimeDim dims(3, 3);
    for (const char *t : {"(0,12,16)", "(1,9,18)", "(2,6,20)", "(3,3,22)", "(4,0,24)"}) {
        SampledOptions options;
        options.target = StructureSignature::parse(t);
        options.seed = o.seed;
        options.threads = o.threads;
        Census c = sampled_search(dims, options);
        bool ok = c.target_found && c.examples.count(*options.target);
        double dev = 1.0;
        if (ok) {
            const MubPartition &part = c.examples.at(*options.target);
            MubSet set = mub_from_partition(part);
            dev = set.max_deviation;
            ok = validate_partition(part).valid && structure_signature(part) == *options.target && set.certified &&
                 set.bases.size() == 28 && dev < 1e-9;
        }
        r.pass = r.pass && ok;
        detail << t << (ok ? " found" : " NOT FOUND") << " (restarts " << c.stats.restarts_run << ", dev "
               << fmt(dev) << "); ";
    }
    r.detail = detail.str();
    if (r.detail.size() >= 2) r.detail.resize(r.detail.size() - 2);
    return r;
}

CriterionResult four_qubit_partition(const ReproductionOptions &o) {
    CriterionResult r = criterion(6, "Four-qubit partitions", "a valid partition into 17 classes");
    SampledOptions options;
    options.seed = o.seed;
    options.restarts = 16;
    options.threads = o.threads;
    Census c = sampled_search(PrimeDim(2, 4), options);
    bool ok = !c.examples.empty();
    for (const auto &[sig, part] : c.examples) {
        ok = ok && validate_partition(part).valid && part.classes.size() == 17 && sig.counts.size() == 5 &&
             sig.total() == 17 && structure_signature(part) == sig;
    }
    r.pass = ok;
    r.detail = std::to_string(c.stats.partitions_visited) + " partitions, signatures " + signature_set(c);
    return r;
}

struct SweepCase {
    int d;
    int n;
};

CriterionResult inequality_suite(const ReproductionOptions &o, std::vector<MubSet> &sets) {
    CriterionResult r = criterion(7, "Inequality suite", "pair, general-J and prime-J certainty bounds hold; eigenstates saturate");
    const auto start = Clock::now();
    r.pass = true;
    std::ostringstream detail;
    for (auto [d, n] : std::vector<SweepCase>{{2, 2}, {2, 3}, {3, 2}}) {
        MubSet full = build_complete_mub(PrimeDim(d, n));
        const std::size_t m = full.dim();
        // A proper subset exercises the sharper J-bound below the complete set.
        MubSet half = full;
        half.bases.resize((m + 1) / 2 + 1);
        double worst = std::numeric_limits<double>::infinity();
        for (const MubSet *set : {&full, &half}) {
            MonteCarloSummary s = monte_carlo_sweep(*set, o.states, o.seed, o.threads);
            for (const auto &v : {s.min_margin_pair, s.min_margin_general_j, s.min_margin_prime_j, s.min_margin_full}) {
                if (v) worst = std::min(worst, *v);
            }
            r.pass = r.pass && s.states >= 10000 && s.min_margin_prime_j.has_value();
        }
        // Eigenstates saturate the pair and sharper J-bounds.
        double saturation = 0.0;
        for (std::size_t b = 0; b < full.bases.size(); ++b) {
            for (std::size_t k = 0; k < m; ++k) {
                PureState psi = PureState::from_basis(full.bases[b], k);
                saturation = std::max(saturation, std::abs(check_pair(psi, full, b, (b + 1) % full.bases.size()).margin));
                std::vector<const Basis *> subset{&full.bases[b]};
                for (std::size_t j = 0; j < full.bases.size(); ++j) {
                    if (j == b) continue;
                    subset.push_back(&full.bases[j]);
                    saturation = std::max(saturation, std::abs(check_sum(psi, subset, true, true).margin));
                }
            }
        }
        bool ordered = true;
        for (std::size_t j = 2; j <= m + 1; ++j) {
            const auto b = certainty_bounds(m, j);
            ordered = ordered && b.general_j >= b.prime_j;
        }
        const bool ok = worst >= -1e-9 && saturation <= 1e-10 && ordered;
        r.pass = r.pass && ok;
        detail << "M=" << m << ": min margin " << fmt(worst) << ", eigenstate max abs margin " << fmt(saturation) << "; ";
        sets.push_back(std::move(full));
    }
    r.seconds = seconds_since(start);
    r.pass = r.pass && r.seconds < 300.0;
    r.detail = detail.str();
    if (r.detail.size() >= 2) r.detail.resize(r.detail.size() - 2);
    return r;
}

CriterionResult full_invariant(const ReproductionOptions &o, const std::vector<MubSet> &sets) {
    CriterionResult r = criterion(8, "Full-MUB invariant", "certainties over a complete set sum to 2");
    r.pass = true;
    std::ostringstream detail;
    for (const auto &set : sets) {
        MonteCarloSummary s = monte_carlo_sweep(set, o.states, derive_seed(o.seed, 8), o.threads);
        double worst = s.max_invariant_deviation.value_or(1.0);
        for (const auto &b : set.bases) {
            for (std::size_t k = 0; k < set.dim(); ++k) {
                worst = std::max(worst, check_full_invariant(PureState::from_basis(b, k), set).deviation);
            }
        }
        r.pass = r.pass && worst < 1e-8;
        detail << "M=" << set.dim() << ": max deviation from 2 " << fmt(worst) << "; ";
    }
    r.detail = detail.str();
    if (r.detail.size() >= 2) r.detail.resize(r.detail.size() - 2);
    return r;
}

// Central differences of f(normalize(psi + h e)) over every real coordinate.
Eigen::VectorXcd finite_difference_gradient(const ExtremizationProblem &p, const Eigen::VectorXcd &psi, double h) {
    auto f = [&](const Eigen::VectorXcd &x) {
        PureState s = PureState::normalized(x);
        double v = 0.0;
        for (std::size_t j = 0; j < p.bases.size(); ++j) v += p.weights[j] * certainty(s, p.bases[j]);
        return v;
    };
    Eigen::VectorXcd g(psi.size());
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(psi.size());
        e(k) = h;
        const double re = (f(psi + e) - f(psi - e)) / (2 * h);
        e(k) = std::complex<double>(0.0, h);
        const double im = (f(psi + e) - f(psi - e)) / (2 * h);
        g(k) = {re, im};
    }
    return g;
}

CriterionResult extremizer_check(const ReproductionOptions &o, const std::vector<MubSet> &sets) {
    CriterionResult r = criterion(9, "Extremizer", "maxima 1.25 (M=4, J=2) and 1.5 (M=8, J=5); exact gradients");
    const auto start = Clock::now();
    const MubSet &m4 = sets.at(0);
    const MubSet &m8 = sets.at(1);
    auto pair = ExtremizationProblem::from_set(m4, {0, 1}, Sense::kMaximize);
    pair.seed = o.seed;
    const double v4 = extremize(pair).value;
    auto five = ExtremizationProblem::from_set(m8, {0, 1, 2, 3, 4}, Sense::kMaximize);
    five.seed = o.seed;
    const double v8 = extremize(five).value;
    double worst_rel = 0.0;
    for (const auto &set : sets) {
        std::mt19937_64 rng(derive_seed(o.seed, 9 + set.dim()));
        for (int i = 0; i < 50; ++i) {
            ExtremizationProblem p;
            std::uniform_int_distribution<std::size_t> count(1, set.bases.size() - 1);
            std::uniform_real_distribution<double> weight(-1.0, 2.0);
            std::vector<std::size_t> idx(set.bases.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::shuffle(idx.begin(), idx.end(), rng);
            idx.resize(count(rng));
            for (auto j : idx) {
                p.bases.push_back(set.bases[j]);
                p.weights.push_back(weight(rng));
            }
            PureState psi = haar_random_state(set.dim(), rng);
            const Eigen::VectorXcd analytic = 2.0 * objective_and_gradient(psi, p).gradient;
            const Eigen::VectorXcd numeric = finite_difference_gradient(p, psi.amplitudes(), 1e-5);
            worst_rel = std::max(worst_rel, (analytic - numeric).norm() / analytic.norm());
        }
    }
    r.seconds = seconds_since(start);
    r.pass = std::abs(v4 - 1.25) <= 1e-6 && std::abs(v8 - 1.5) <= 1e-6 && worst_rel < 1e-5 && r.seconds < 600.0;
    r.detail = "M=4 pair max " + fmt(v4) + " (err " + fmt(std::abs(v4 - 1.25)) + "), M=8 J=5 max " + fmt(v8) +
               " (err " + fmt(std::abs(v8 - 1.5)) + "), worst gradient rel. err " + fmt(worst_rel);
    return r;
}

// A three-qubit (2,3,4) partition whose biseparable classes split off each particle once.
std::optional<MubPartition> qubit_234_partition() {
    std::optional<MubPartition> out;
    const auto want = StructureSignature::parse("(2,3,4)");
    ExhaustiveOptions options;
    enumerate_partitions(PrimeDim(2, 3), options, [&](const MubPartition &p, const StructureSignature &sig) {
        if (!(sig == want)) return true;
        std::set<ParticlePartition> bisep;
        for (const auto &cls : p.classes) {
            auto fc = finest_factorization(cls);
            if (fc.partition.blocks().size() == 2) bisep.insert(fc.partition);
        }
        if (bisep.size() == 3) {
            out = p;
            return false;
        }
        return true;
    });
    return out;
}

CriterionResult composite_construction(const ReproductionOptions &o) {
    CriterionResult r = criterion(10, "Composite construction", "9 certified bases in dimension 216 covering all five factorization classes");
    const auto start = Clock::now();
    auto qubits = qubit_234_partition();
    if (!qubits) {
        r.detail = "no suitable (2,3,4) three-qubit partition";
        return r;
    }
    MubSet a = mub_from_partition(*qubits);
    std::optional<MubSet> b;
    Pairing pairing;
    std::string qutrit_signature;
    for (const char *target : {"(2,6,20)", "(3,3,22)"}) {
        for (std::uint64_t attempt = 0; attempt < 20 && !b; ++attempt) {
            SampledOptions options;
            options.target = StructureSignature::parse(target);
            options.seed = derive_seed(o.seed, 100 + attempt);
            options.threads = o.threads;
            Census c = sampled_search(PrimeDim(3, 3), options);
            if (!c.target_found) continue;
            MubSet candidate = mub_from_partition(c.examples.at(*options.target));
            Pairing p = default_pairing(a, candidate);
            bool exact = p.size() == a.bases.size();
            for (auto [i, j] : p) exact = exact && *a.bases[i].factorization == *candidate.bases[j].factorization;
            if (exact) {
                b = std::move(candidate);
                pairing = p;
                qutrit_signature = target;
            }
        }
        if (b) break;
    }
    if (!b) {
        r.detail = "no matching three-qutrit set found";
        return r;
    }
    CertifyOptions exhaustive;
    exhaustive.exhaustive_limit = std::numeric_limits<std::uint64_t>::max();
    MubSet product = tensor_mub(a, *b, pairing, exhaustive);
    std::set<ParticlePartition> labels;
    bool numeric_ok = true;
    for (const auto &basis : product.bases) {
        labels.insert(*basis.factorization);
        // Spot-check the carried label on the first vector of each basis.
        for (const auto &p : all_particle_partitions(3)) {
            bool product_state = true;
            for (const auto &block : p.blocks()) {
                product_state = product_state && schmidt_rank(basis.vectors.col(0), product.particle_dims, block) == 1;
            }
            numeric_ok = numeric_ok && (product_state == basis.factorization->refines(p));
        }
    }
    r.seconds = seconds_since(start);
    r.pass = product.dim() == 216 && product.bases.size() == 9 && product.certified &&
             !product.sampled_certification && product.max_deviation < 1e-9 && labels.size() == 5 && numeric_ok &&
             r.seconds < 900.0;
    std::string names;
    for (const auto &l : labels) names += (names.empty() ? "" : " ") + l.str();
    r.detail = "(2,3,4) qubits x " + qutrit_signature + " qutrits: " + std::to_string(product.bases.size()) +
               " bases, dim " + std::to_string(product.dim()) + ", dev " + fmt(product.max_deviation) +
               ", classes {" + names + "}";
    return r;
}

CriterionResult cross_validation() {
    CriterionResult r = criterion(11, "Separability cross-validation", "algebraic and Schmidt-rank separability agree");
    PrimeDim dims(2, 3);
    const auto classes = enumerate_lagrangians(dims);
    const auto partitions = all_particle_partitions(3);
    int disagreements = 0, checks = 0;
    for (const auto &cls : classes) {
        const Basis basis = eigenbasis_of_class(cls);
        for (const auto &p : partitions) {
            bool numeric = true;
            for (Eigen::Index v = 0; v < basis.vectors.cols(); ++v) {
                for (const auto &block : p.blocks()) {
                    numeric = numeric && schmidt_rank(basis.vectors.col(v), {2, 2, 2}, block) == 1;
                }
            }
            disagreements += numeric != separable_across(cls, p);
            ++checks;
        }
    }
    r.pass = classes.size() == 135 && disagreements == 0;
    r.detail = std::to_string(classes.size()) + " classes x " + std::to_string(partitions.size()) +
               " partitions, " + std::to_string(disagreements) + " disagreements of " + std::to_string(checks);
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const ReproductionOptions &options,
                                            const std::function<void(const CriterionResult &)> &on_result) {
    std::vector<CriterionResult> out;
    std::vector<MubSet> sweep_sets;
    auto record = [&](const std::function<CriterionResult()> &fn) {
        const auto start = Clock::now();
        CriterionResult r;
        try {
            r = fn();
        } catch (const std::exception &e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        if (r.seconds == 0.0) r.seconds = seconds_since(start);
        if (on_result) on_result(r);
        out.push_back(r);
    };
    const unsigned t = options.threads;
    record([] { return mub_completeness(); });
    record([&] {
        return exhaustive_census(2, "Two-qubit structure", "every two-qubit structure is (3,2)", 2, 2,
                                 signatures({"(3,2)"}), 60.0, t);
    });
    record([&] {
        return exhaustive_census(3, "Three-qubit census", "exactly (0,9,0), (1,6,2), (2,3,4), (3,0,6)", 2, 3,
                                 signatures({"(0,9,0)", "(1,6,2)", "(2,3,4)", "(3,0,6)"}), 1800.0, t);
    });
    record([&] {
        return exhaustive_census(4, "Two-qutrit census", "exactly (4,6)",
                                 3, 2, signatures({"(4,6)"}), 600.0, t);
    });
    record([&] { return three_qutrit_signatures(options); });
    record([&] { return four_qubit_partition(options); });
    record([&] { return inequality_suite(options, sweep_sets); });
    record([&] { return full_invariant(options, sweep_sets); });
    record([&] { return extremizer_check(options, sweep_sets); });
    record([&] { return composite_construction(options); });
    record([] { return cross_validation(); });
    return out;
}

std::string summary_line(const CriterionResult &r) {
    std::ostringstream os;
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.title << " (" << fmt(r.seconds) << " s): " << r.detail;
    return os.str();
}

std::string markdown_report(const std::vector<CriterionResult> &results) {
    std::ostringstream os;
    os << "| # | Criterion | Claim | Result | Status | Time (s) |\n";
    os << "|---|-----------|-------|--------|--------|----------|\n";
    for (const auto &r : results) {
        os << "| " << r.id << " | " << r.title << " | " << r.claim << " | " << r.detail << " | "
           << (r.pass ? "PASS" : "FAIL") << " | " << fmt(r.seconds) << " |\n";
    }
    const auto passed = std::count_if(results.begin(), results.end(), [](const auto &r) { return r.pass; });
    os << "\n" << passed << "/" << results.size() << " criteria passed.\n";
    return os.str();
}

}  // namespace mubkit
