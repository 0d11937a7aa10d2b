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

// mubkit command-line front end.

#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mubkit/certainty.h"
#include "mubkit/errors.h"
#include "mubkit/extremizer.h"
#include "mubkit/mub.h"
#include "mubkit/partition_search.h"
#include "mubkit/reproduction.h"
#include "mubkit/serialize.h"
#include "mubkit/weyl.h"

using namespace mubkit;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIntegrity = 4;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Clock = std::chrono::steady_clock;

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Run {
   public:
    explicit Run(std::string command) : start_(Clock::now()) {
        manifest_.command = std::move(command);
        manifest_.timestamps["created"] = utc_now();
    }

    json &parameters() { return manifest_.parameters; }
    void set_seed(std::uint64_t seed) { manifest_.seed = seed; }

    Document load(const std::string &path, const std::string &kind) {
        const std::string text = read_text_file(path);
        manifest_.input_digests[path] = sha256_hex(text);
        return parse_document(text, kind);
    }

    /// Writes to `out`, or prints the document when no path was given.
    void emit(const std::string &kind, const json &payload, const std::string &out) {
        manifest_.timestamps["wall_seconds"] = std::chrono::duration<double>(Clock::now() - start_).count();
        const std::string text = dump_document(make_document(kind, payload, manifest_));
        if (out.empty()) {
            std::cout << text;
        } else {
            write_text_file(out, text);
        }
    }

   private:
    Manifest manifest_;
    Clock::time_point start_;
};

/// Human summary goes to stdout alongside a file, to stderr when stdout carries the document.
std::ostream &info(const std::string &out) { return out.empty() ? std::cerr : std::cout; }

std::vector<std::size_t> parse_indices(const std::string &text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception &) {
            throw UsageError("bad index '" + item + "'");
        }
        if (used != item.size()) throw UsageError("bad index '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty index list");
    return out;
}

Pairing parse_pairing(const std::string &text) {
    Pairing out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("pairing entries look like i:j, got '" + item + "'");
        const auto i = parse_indices(item.substr(0, colon));
        const auto j = parse_indices(item.substr(colon + 1));
        if (i.size() != 1 || j.size() != 1) throw UsageError("bad pairing entry '" + item + "'");
        out.emplace_back(i[0], j[0]);
    }
    if (out.empty()) throw UsageError("empty pairing");
    return out;
}

MubSet subset_of(const MubSet &set, const std::vector<std::size_t> &idx) {
    MubSet out = set;
    out.bases.clear();
    for (auto i : idx) {
        if (i >= set.bases.size()) throw UsageError("basis index " + std::to_string(i) + " out of range");
        out.bases.push_back(set.bases[i]);
    }
    return out;
}

json pairing_json(const Pairing &p) {
    json out = json::array();
    for (auto [i, j] : p) out.push_back({i, j});
    return out;
}

struct ConstructArgs {
    int d = 2;
    int n = 1;
    std::string out;
};

int run_construct(const ConstructArgs &a) {
    if (!is_prime(a.d)) {
        std::cerr << "error: d=" << a.d
                  << " is not prime. Build each prime-power factor with `construct` and combine them with `mubkit tensor`.\n";
        return kExitUsage;
    }
    if (a.n < 1) throw UsageError("--n must be at least 1");
    if (std::pow(double(a.d), a.n) > 4096.0) throw UsageError("d^n must not exceed 4096");
    Run run("construct");
    run.parameters() = {{"d", a.d}, {"n", a.n}};
    MubSet set = build_complete_mub(PrimeDim(a.d, a.n));
    run.emit("mub_set", to_json(set), a.out);
    info(a.out) << set.bases.size() << " bases in dimension " << set.dim() << ", max deviation " << set.max_deviation
                << (set.certified ? " (certified)" : " (NOT certified)") << "\n";
    return set.certified ? 0 : kExitIntegrity;
}

struct CensusArgs {
    int d = 2;
    int n = 2;
    std::string mode = "exhaustive";
    std::uint64_t budget = 10'000'000;
    std::uint64_t restarts = 100;
    std::uint64_t seed = 1;
    std::string target;
    std::string checkpoint;
    bool resume = false;
    std::size_t max_dim = 9;
    unsigned threads = 0;
    std::string out;
};

int run_census(const CensusArgs &a) {
    if (!is_prime(a.d)) throw UsageError("--d must be prime");
    Run run("census");
    PrimeDim dims(a.d, a.n);
    Census c(dims);
    if (a.mode == "exhaustive") {
        if (!a.target.empty()) throw UsageError("--target applies to sampled mode only");
        run.parameters() = {{"d", a.d}, {"n", a.n}, {"mode", a.mode}, {"max_dim", a.max_dim}};
        ExhaustiveOptions o;
        o.max_dimension = a.max_dim;
        o.threads = a.threads;
        o.checkpoint_path = a.checkpoint;
        o.resume = a.resume;
        c = enumerate_partitions(dims, o);
    } else {
        SampledOptions o;
        if (!a.target.empty()) {
            try {
                o.target = StructureSignature::parse(a.target);
            } catch (const std::exception &e) {
                throw UsageError(std::string("--target: ") + e.what());
            }
        }
        o.node_budget = a.budget;
        o.restarts = a.restarts;
        o.seed = a.seed;
        o.threads = a.threads;
        run.parameters() = {{"d", a.d},           {"n", a.n},
                            {"mode", a.mode},     {"budget", a.budget},
                            {"restarts", a.restarts}, {"target", a.target.empty() ? json() : json(o.target->str())}};
        run.set_seed(a.seed);
        c = sampled_search(dims, o);
    }
    run.emit("census", to_json(c), a.out);
    auto &os = info(a.out);
    for (const auto &[sig, count] : c.signature_counts) os << sig.str() << "  " << count << "\n";
    if (c.target) os << "target " << c.target->str() << (c.target_found ? " found" : " not found") << "\n";
    os << c.stats.partitions_visited << " partitions, " << c.stats.nodes << " nodes, " << c.stats.wall_seconds
       << " s\n";
    return 0;
}

struct VerifyArgs {
    std::string mub;
    std::uint64_t states = 10000;
    std::uint64_t seed = 1;
    std::string state;
    std::string subset;
    unsigned threads = 0;
    std::string out;
};

std::string margin_text(const std::optional<double> &v) {
    if (!v) return "n/a";
    std::ostringstream os;
    os << *v;
    return os.str();
}

int run_verify(const VerifyArgs &a) {
    Run run("verify");
    MubSet set = mub_set_from_json(run.load(a.mub, "mub_set").payload);
    if (!a.subset.empty()) set = subset_of(set, parse_indices(a.subset));
    run.parameters() = {{"states", a.states}, {"subset", a.subset}, {"state", a.state}};
    run.set_seed(a.seed);
    auto &os = info(a.out);
    if (!a.state.empty()) {
        PureState psi = state_from_json(run.load(a.state, "pure_state").payload);
        if (psi.dim() != set.dim()) throw UsageError("state dimension does not match the set");
        CertaintyReport r = certainty_report(psi, set);
        run.emit("certainty_report", to_json(r), a.out);
        double sum = 0.0;
        for (double c : r.per_basis) sum += c;
        os << "J=" << r.j << " sum C^2 = " << sum;
        if (r.full) os << " (full invariant deviation " << r.full->margin << ")";
        os << "\n";
        return 0;
    }
    MonteCarloSummary s = monte_carlo_sweep(set, a.states, a.seed, a.threads);
    run.emit("monte_carlo_summary", to_json(s), a.out);
    os << s.states << " states, M=" << s.dim << ", J=" << s.j << "\n"
       << "min margin pair " << margin_text(s.min_margin_pair) << ", general " << margin_text(s.min_margin_general_j)
       << ", prime " << margin_text(s.min_margin_prime_j) << ", full " << margin_text(s.min_margin_full)
       << "; max invariant deviation " << margin_text(s.max_invariant_deviation) << "\n";
    return 0;
}

struct TensorArgs {
    std::string a;
    std::string b;
    std::string pairing;
    std::string out;
};

int run_tensor(const TensorArgs &t) {
    Run run("tensor");
    MubSet a = mub_set_from_json(run.load(t.a, "mub_set").payload);
    MubSet b = mub_set_from_json(run.load(t.b, "mub_set").payload);
    Pairing p = t.pairing.empty() ? default_pairing(a, b) : parse_pairing(t.pairing);
    run.parameters() = {{"pairing", pairing_json(p)}};
    MubSet product;
    try {
        product = tensor_mub(a, b, p);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    } catch (const std::out_of_range &e) {
        throw UsageError(e.what());
    }
    run.emit("mub_set", to_json(product), t.out);
    info(t.out) << product.bases.size() << " bases in dimension " << product.dim() << ", max deviation "
                << product.max_deviation << (product.certified ? " (certified)" : " (NOT certified)") << "\n";
    return 0;
}

struct ExtremizeArgs {
    std::string mub;
    std::string subset;
    std::string sense = "max";
    int restarts = 32;
    std::uint64_t seed = 1;
    std::string out;
};

int run_extremize(const ExtremizeArgs &a) {
    Run run("extremize");
    MubSet set = mub_set_from_json(run.load(a.mub, "mub_set").payload);
    const auto idx = parse_indices(a.subset);
    for (auto i : idx) {
        if (i >= set.bases.size()) throw UsageError("basis index " + std::to_string(i) + " out of range");
    }
    const Sense sense = a.sense == "max" ? Sense::kMaximize : Sense::kMinimize;
    auto problem = ExtremizationProblem::from_set(set, idx, sense);
    problem.restarts = a.restarts;
    problem.seed = a.seed;
    run.parameters() = {{"subset", idx}, {"sense", a.sense}, {"restarts", a.restarts}};
    run.set_seed(a.seed);
    ExtremizationResult r = extremize(problem);

    const std::size_t m = set.dim();
    const std::size_t j = idx.size();
    double bound = 0.0;
    if (sense == Sense::kMinimize) {
        bound = double(j) / double(m);
    } else if (j == 1) {
        bound = 1.0;
    } else if (set.certified && set.prime_case()) {
        bound = j == m + 1 ? 2.0 : certainty_bounds(m, j).prime_j;
    } else {
        bound = certainty_bounds(m, j).general_j;
    }
    const double gap = sense == Sense::kMaximize ? bound - r.value : r.value - bound;
    json payload = to_json(r);
    payload["subset"] = idx;
    payload["sense"] = a.sense;
    payload["bound"] = bound;
    payload["gap"] = gap;
    run.emit("extremization_result", payload, a.out);
    info(a.out) << (sense == Sense::kMaximize ? "max" : "min") << " = " << r.value << ", bound " << bound << ", gap "
                << gap << (r.converged ? "" : " (not converged)") << "\n";
    return 0;
}

struct EigenstateArgs {
    std::string mub;
    std::size_t basis = 0;
    std::size_t vector = 0;
    std::string out;
};

int run_eigenstate(const EigenstateArgs &a) {
    Run run("eigenstate");
    MubSet set = mub_set_from_json(run.load(a.mub, "mub_set").payload);
    if (a.basis >= set.bases.size() || a.vector >= set.dim()) throw UsageError("basis or vector index out of range");
    run.parameters() = {{"basis", a.basis}, {"vector", a.vector}};
    run.emit("pure_state", to_json(PureState::from_basis(set.bases[a.basis], a.vector)), a.out);
    return 0;
}

struct ReportArgs {
    std::string which;
    std::uint64_t seed = 2026;
    std::uint64_t states = 10000;
    std::string out;
};

int run_report(const ReportArgs &a) {
    ReproductionOptions o;
    o.seed = a.seed;
    o.states = a.states;
    auto results = run_acceptance(o, [](const CriterionResult &r) { std::cerr << summary_line(r) << std::endl; });
    const std::string md = markdown_report(results);
    if (a.out.empty()) {
        std::cout << md;
    } else {
        write_text_file(a.out, md);
    }
    for (const auto &r : results) {
        if (!r.pass) return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"mubkit: complete sets of mutually unbiased bases, their separability structure, and certainty relations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    ConstructArgs construct;
    auto *c = app.add_subcommand("construct", "Build a certified complete MUB set for d^n");
    c->add_option("--d", construct.d, "prime local dimension")->required();
    c->add_option("--n", construct.n, "number of particles")->required();
    c->add_option("--out", construct.out, "output file (default stdout)");

    CensusArgs census;
    auto *s = app.add_subcommand("census", "Enumerate or sample MUB partitions and their structure signatures");
    s->add_option("--d", census.d)->required();
    s->add_option("--n", census.n)->required();
    s->add_option("--mode", census.mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
    s->add_option("--budget", census.budget, "node budget per restart (sampled)");
    s->add_option("--restarts", census.restarts, "restart count (sampled)");
    s->add_option("--seed", census.seed);
    s->add_option("--target", census.target, "stop at signature, e.g. 2,6,20");
    s->add_option("--checkpoint", census.checkpoint, "checkpoint file (exhaustive)");
    s->add_flag("--resume", census.resume, "continue from --checkpoint");
    s->add_option("--max-dim", census.max_dim, "largest M enumerated exhaustively");
    s->add_option("--threads", census.threads);
    s->add_option("--out", census.out);

    VerifyArgs verify;
    auto *v = app.add_subcommand("verify", "Check the certainty inequalities on a MUB set");
    v->add_option("--mub", verify.mub)->required();
    v->add_option("--states", verify.states, "Haar-random states to sample");
    v->add_option("--seed", verify.seed);
    v->add_option("--state", verify.state, "pure_state file to test instead of sampling");
    v->add_option("--subset", verify.subset, "comma-separated basis indices");
    v->add_option("--threads", verify.threads);
    v->add_option("--out", verify.out);

    TensorArgs tensor;
    auto *t = app.add_subcommand("tensor", "Tensor two MUB sets basis by basis");
    t->add_option("--a", tensor.a)->required();
    t->add_option("--b", tensor.b)->required();
    t->add_option("--pairing", tensor.pairing, "i:j pairs, e.g. 0:0,1:3 (default: match factorization classes)");
    t->add_option("--out", tensor.out);

    ExtremizeArgs ext;
    auto *e = app.add_subcommand("extremize", "Extremize the certainty sum over a subset of bases");
    e->add_option("--mub", ext.mub)->required();
    e->add_option("--subset", ext.subset, "comma-separated basis indices")->required();
    e->add_option("--sense", ext.sense)->check(CLI::IsMember({"max", "min"}));
    e->add_option("--restarts", ext.restarts)->check(CLI::PositiveNumber);
    e->add_option("--seed", ext.seed);
    e->add_option("--out", ext.out);

    EigenstateArgs eig;
    auto *g = app.add_subcommand("eigenstate", "Write one basis vector as a pure_state file");
    g->add_option("--mub", eig.mub)->required();
    g->add_option("--basis", eig.basis)->required();
    g->add_option("--vector", eig.vector)->required();
    g->add_option("--out", eig.out);

    ReportArgs report;
    auto *r = app.add_subcommand("report", "Run the reproduction suite and print a claim-vs-result table");
    r->add_option("which", report.which)->required()->check(CLI::IsMember({"paper"}));
    r->add_option("--seed", report.seed);
    r->add_option("--states", report.states);
    r->add_option("--out", report.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &err) {
        return app.exit(err);
    } catch (const CLI::CallForAllHelp &err) {
        return app.exit(err);
    } catch (const CLI::CallForVersion &err) {
        return app.exit(err);
    } catch (const CLI::ParseError &err) {
        app.exit(err);
        return kExitUsage;
    }

    try {
        if (*c) return run_construct(construct);
        if (*s) return run_census(census);
        if (*v) return run_verify(verify);
        if (*t) return run_tensor(tensor);
        if (*e) return run_extremize(ext);
        if (*g) return run_eigenstate(eig);
        if (*r) return run_report(report);
    } catch (const UsageError &err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const BudgetError &err) {
        std::cerr << "budget: " << err.what() << "\n";
        return kExitBudget;
    } catch (const IntegrityError &err) {
        std::cerr << "integrity: " << err.what() << "\n";
        return kExitIntegrity;
    } catch (const std::invalid_argument &err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
