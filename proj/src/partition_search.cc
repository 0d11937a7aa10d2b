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

#include "mubkit/partition_search.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "mubkit/errors.h"
#include "mubkit/random.h"
#include "mubkit/serialize.h"

namespace mubkit {

MubPartition::MubPartition(PrimeDim dims_in, std::vector<CommutingClass> classes_in)
    : dims(dims_in), classes(std::move(classes_in)) {
    std::sort(classes.begin(), classes.end());
}

PartitionValidation validate_partition(const MubPartition &partition) {
    PartitionValidation out;
    const auto &dims = partition.dims;
    auto fail = [&](std::string reason) {
        out.valid = false;
        out.reasons.push_back(std::move(reason));
    };
    if (partition.classes.size() != dims.m() + 1) {
        fail("expected " + std::to_string(dims.m() + 1) + " classes, found " +
             std::to_string(partition.classes.size()));
    }
    std::vector<int> hits(dims.label_count(), 0);
    for (std::size_t c = 0; c < partition.classes.size(); ++c) {
        const auto &cls = partition.classes[c];
        if (!(cls.dims() == dims)) {
            fail("class " + std::to_string(c) + " has mismatched dimensions");
            continue;
        }
        if (cls.member_indices().size() != dims.m() - 1) {
            fail("class " + std::to_string(c) + " has wrong size");
        }
        const auto &rows = cls.rows();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                if (!commutes(rows[i], rows[j], dims.d())) {
                    fail("class " + std::to_string(c) + " is not isotropic");
                }
            }
        }
        for (auto idx : cls.member_indices()) {
            hits[idx]++;
        }
    }
    std::size_t overlaps = 0, gaps = 0;
    for (std::size_t idx = 1; idx < hits.size(); ++idx) {
        overlaps += hits[idx] > 1;
        gaps += hits[idx] == 0;
    }
    if (overlaps) fail(std::to_string(overlaps) + " labels covered more than once");
    if (gaps) fail(std::to_string(gaps) + " labels not covered");
    return out;
}

PartitionProblem::PartitionProblem(const PrimeDim &dims)
    : dims_(dims), classes_(enumerate_lagrangians(dims)) {
    category_count_ = category_profiles(dims.n()).size();
    classes_of_point_.resize(dims.label_count() - 1);
    categories_.reserve(classes_.size());
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        categories_.push_back(finest_factorization(classes_[c]).category);
        for (auto idx : classes_[c].member_indices()) {
            classes_of_point_[idx - 1].push_back(static_cast<std::uint32_t>(c));
        }
    }
}

MubPartition PartitionProblem::make_partition(const std::vector<std::uint32_t> &chosen) const {
    std::vector<CommutingClass> picked;
    for (auto c : chosen) picked.push_back(classes_[c]);
    return MubPartition(dims_, std::move(picked));
}

unsigned worker_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char *env = std::getenv("MUBKIT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

using Clock = std::chrono::steady_clock;

// Exact-cover state over (nonzero labels) x (Lagrangian classes).
//
// A class is active while no chosen class overlaps it and its category is not
// exhausted; count[p] is the number of active classes containing point p.
class CoverState {
   public:
    CoverState(const PartitionProblem &problem, const std::optional<StructureSignature> &target)
        : problem_(problem),
          count_(problem.point_count()),
          covered_(problem.point_count(), 0),
          kill_(problem.classes().size(), 0),
          category_used_(problem.category_count(), 0),
          slots_(problem.dims().m() + 1) {
        for (std::size_t p = 0; p < count_.size(); ++p) {
            count_[p] = static_cast<int>(problem.classes_of_point()[p].size());
        }
        by_category_.resize(problem.category_count());
        for (std::size_t c = 0; c < problem.classes().size(); ++c) {
            by_category_[problem.categories()[c]].push_back(static_cast<std::uint32_t>(c));
        }
        if (target) {
            if (target->counts.size() != problem.category_count()) {
                throw std::invalid_argument("target signature " + target->str() + " has wrong length");
            }
            if (target->total() != static_cast<int>(slots_)) {
                throw std::invalid_argument("target signature " + target->str() + " does not sum to M+1");
            }
            target_ = target->counts;
            for (std::size_t cat = 0; cat < target_.size(); ++cat) {
                if (target_[cat] == 0) ban_category(cat);
            }
        }
    }

    bool complete() const { return chosen_.size() == slots_; }
    const std::vector<std::uint32_t> &chosen() const { return chosen_; }
    bool active(std::uint32_t c) const { return kill_[c] == 0; }

    StructureSignature signature() const {
        StructureSignature sig;
        sig.counts = category_used_;
        return sig;
    }

    /// Uncovered point with the fewest active candidates, or -1 if complete.
    /// Ties go to the lowest index unless an rng is supplied.
    template <class Rng>
    long select_point(Rng *rng, int &best_count) const {
        long best = -1;
        best_count = std::numeric_limits<int>::max();
        std::uint64_t ties = 0;
        for (std::size_t p = 0; p < count_.size(); ++p) {
            if (covered_[p]) continue;
            int c = count_[p];
            if (c < best_count) {
                best_count = c;
                best = static_cast<long>(p);
                ties = 1;
                if (c == 0) break;
            } else if (rng && c == best_count) {
                ++ties;
                if (std::uniform_int_distribution<std::uint64_t>(0, ties - 1)(*rng) == 0) {
                    best = static_cast<long>(p);
                }
            }
        }
        return best;
    }

    std::vector<std::uint32_t> candidates(std::size_t point) const {
        std::vector<std::uint32_t> out;
        for (auto c : problem_.classes_of_point()[point]) {
            if (kill_[c] == 0) out.push_back(c);
        }
        return out;
    }

    void choose(std::uint32_t c) {
        marks_.push_back(trail_.size());
        chosen_.push_back(c);
        const int cat = problem_.categories()[c];
        category_used_[cat]++;
        const auto &members = problem_.classes()[c].member_indices();
        for (auto idx : members) covered_[idx - 1] = 1;
        for (auto idx : members) {
            for (auto other : problem_.classes_of_point()[idx - 1]) deactivate(other);
        }
        if (!target_.empty() && category_used_[cat] == target_[cat]) {
            ban_category(cat);
        }
    }

    void undo() {
        std::size_t mark = marks_.back();
        marks_.pop_back();
        while (trail_.size() > mark) {
            reactivate(trail_.back());
            trail_.pop_back();
        }
        std::uint32_t c = chosen_.back();
        chosen_.pop_back();
        category_used_[problem_.categories()[c]]--;
        for (auto idx : problem_.classes()[c].member_indices()) covered_[idx - 1] = 0;
    }

   private:
    void deactivate(std::uint32_t c) {
        if (kill_[c]++ == 0) {
            for (auto idx : problem_.classes()[c].member_indices()) count_[idx - 1]--;
        }
        trail_.push_back(c);
    }

    void reactivate(std::uint32_t c) {
        if (--kill_[c] == 0) {
            for (auto idx : problem_.classes()[c].member_indices()) count_[idx - 1]++;
        }
    }

    void ban_category(std::size_t cat) {
        for (auto c : by_category_[cat]) deactivate(c);
    }

    const PartitionProblem &problem_;
    std::vector<int> count_;
    std::vector<std::uint8_t> covered_;
    std::vector<int> kill_;
    std::vector<int> category_used_;
    std::vector<int> target_;
    std::vector<std::vector<std::uint32_t>> by_category_;
    std::vector<std::uint32_t> chosen_;
    std::vector<std::uint32_t> trail_;
    std::vector<std::size_t> marks_;
    std::size_t slots_;
};

struct BranchResult {
    std::map<StructureSignature, std::uint64_t> counts;
    std::map<StructureSignature, std::vector<std::uint32_t>> examples;
    std::uint64_t nodes = 0;
    std::uint64_t visited = 0;
    bool stopped = false;
};

// Deterministic depth-first enumeration of every completion of `state`.
class Enumerator {
   public:
    Enumerator(const PartitionProblem &problem, BranchResult &result, const PartitionVisitor &visitor)
        : problem_(problem), result_(result), visitor_(visitor) {}

    bool run(CoverState &state) {
        if (state.complete()) {
            return record(state);
        }
        int best_count = 0;
        long point = state.select_point<std::mt19937_64>(nullptr, best_count);
        if (best_count == 0) return true;
        for (auto c : state.candidates(static_cast<std::size_t>(point))) {
            ++result_.nodes;
            state.choose(c);
            bool keep_going = run(state);
            state.undo();
            if (!keep_going) return false;
        }
        return true;
    }

   private:
    bool record(const CoverState &state) {
        StructureSignature sig = state.signature();
        result_.visited++;
        result_.counts[sig]++;
        if (!result_.examples.count(sig)) {
            result_.examples[sig] = state.chosen();
        }
        if (visitor_ && !visitor_(problem_.make_partition(state.chosen()), sig)) {
            result_.stopped = true;
            return false;
        }
        return true;
    }

    const PartitionProblem &problem_;
    BranchResult &result_;
    const PartitionVisitor &visitor_;
};

json branch_to_json(const BranchResult &r, const PartitionProblem &problem) {
    json counts = json::array();
    for (const auto &[sig, n] : r.counts) {
        counts.push_back({{"signature", sig.str()}, {"partitions", n}});
    }
    json examples = json::array();
    for (const auto &[sig, chosen] : r.examples) {
        examples.push_back({{"signature", sig.str()}, {"partition", to_json(problem.make_partition(chosen))}});
    }
    return {{"counts", counts}, {"examples", examples}, {"nodes", r.nodes}, {"visited", r.visited}};
}

BranchResult branch_from_json(const json &j, const PartitionProblem &problem) {
    BranchResult r;
    for (const auto &c : j.at("counts")) {
        r.counts[StructureSignature::parse(c.at("signature"))] = c.at("partitions").get<std::uint64_t>();
    }
    for (const auto &e : j.at("examples")) {
        MubPartition part = partition_from_json(e.at("partition"), problem.dims());
        std::vector<std::uint32_t> chosen;
        for (const auto &cls : part.classes) {
            auto it = std::lower_bound(problem.classes().begin(), problem.classes().end(), cls);
            chosen.push_back(static_cast<std::uint32_t>(it - problem.classes().begin()));
        }
        r.examples[StructureSignature::parse(e.at("signature"))] = chosen;
    }
    r.nodes = j.at("nodes").get<std::uint64_t>();
    r.visited = j.at("visited").get<std::uint64_t>();
    return r;
}

void write_checkpoint(const std::string &path, const PartitionProblem &problem, std::size_t branch_count,
                      const std::vector<std::optional<BranchResult>> &done) {
    json branches = json::array();
    for (std::size_t b = 0; b < done.size(); ++b) {
        if (done[b]) {
            branches.push_back({{"branch", b}, {"result", branch_to_json(*done[b], problem)}});
        }
    }
    json payload = {{"d", problem.dims().d()},
                    {"n", problem.dims().n()},
                    {"branch_count", branch_count},
                    {"completed", branches}};
    Manifest manifest;
    manifest.command = "census";
    manifest.parameters = {{"d", problem.dims().d()}, {"n", problem.dims().n()}, {"mode", "exhaustive"}};
    json doc = make_document("census_checkpoint", payload, manifest);
    doc["partial"] = true;
    std::string tmp = path + ".tmp";
    write_text_file(tmp, dump_document(doc));
    std::filesystem::rename(tmp, path);
}

void merge_into(Census &census, const BranchResult &r, const PartitionProblem &problem) {
    for (const auto &[sig, n] : r.counts) census.signature_counts[sig] += n;
    for (const auto &[sig, chosen] : r.examples) {
        if (!census.examples.count(sig)) {
            census.examples.emplace(sig, problem.make_partition(chosen));
        }
    }
    census.stats.nodes += r.nodes;
    census.stats.partitions_visited += r.visited;
}

}  // namespace

Census enumerate_partitions(const PrimeDim &dims, const ExhaustiveOptions &options, const PartitionVisitor &visitor) {
    if (dims.n() > 1 && dims.m() > options.max_dimension) {
        throw BudgetError("exhaustive enumeration refused for d=" + std::to_string(dims.d()) +
                          ", n=" + std::to_string(dims.n()) + "; use sampled search");
    }
    const auto start = Clock::now();
    const PartitionProblem problem(dims);
    Census census{dims};
    census.mode = SearchMode::kExhaustive;

    CoverState root(problem, std::nullopt);
    int best_count = 0;
    const long point = root.select_point<std::mt19937_64>(nullptr, best_count);
    const std::vector<std::uint32_t> branches = root.candidates(static_cast<std::size_t>(point));

    std::vector<std::optional<BranchResult>> done(branches.size());
    if (options.resume && !options.checkpoint_path.empty() && std::filesystem::exists(options.checkpoint_path)) {
        Document doc = read_document(options.checkpoint_path, "census_checkpoint");
        if (doc.payload.at("d") != dims.d() || doc.payload.at("n") != dims.n() ||
            doc.payload.at("branch_count") != branches.size()) {
            throw IntegrityError("checkpoint does not match the requested census");
        }
        for (const auto &b : doc.payload.at("completed")) {
            done.at(b.at("branch").get<std::size_t>()) = branch_from_json(b.at("result"), problem);
        }
    }

    std::mutex mu;
    std::size_t next = 0;
    bool stop = false;
    auto worker = [&]() {
        CoverState state(problem, std::nullopt);
        while (true) {
            std::size_t b;
            {
                std::lock_guard<std::mutex> lock(mu);
                while (next < branches.size() && done[next]) ++next;
                if (next >= branches.size() || stop) return;
                b = next++;
            }
            BranchResult result;
            Enumerator enumerator(problem, result, visitor);
            result.nodes++;
            state.choose(branches[b]);
            enumerator.run(state);
            state.undo();
            std::lock_guard<std::mutex> lock(mu);
            stop = stop || result.stopped;
            done[b] = std::move(result);
            if (!options.checkpoint_path.empty()) {
                write_checkpoint(options.checkpoint_path, problem, branches.size(), done);
            }
        }
    };
    // Visitors observe partitions in canonical order, so they get a single worker.
    const unsigned threads = visitor ? 1u : std::min<unsigned>(worker_threads(options.threads),
                                                               static_cast<unsigned>(branches.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();

    for (const auto &r : done) {
        if (r) merge_into(census, *r, problem);
    }
    census.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return census;
}

namespace {

struct RestartResult {
    std::optional<std::vector<std::uint32_t>> solution;
    StructureSignature signature;
    std::uint64_t nodes = 0;
};

class RandomizedCover {
   public:
    RandomizedCover(CoverState &state, std::mt19937_64 &rng, std::uint64_t budget)
        : state_(state), rng_(rng), budget_(budget) {}

    bool run() {
        if (state_.complete()) return true;
        if (nodes_ >= budget_) return false;
        int best_count = 0;
        long point = state_.select_point(&rng_, best_count);
        if (best_count == 0) return false;
        auto cands = state_.candidates(static_cast<std::size_t>(point));
        std::shuffle(cands.begin(), cands.end(), rng_);
        for (auto c : cands) {
            if (nodes_ >= budget_) return false;
            ++nodes_;
            state_.choose(c);
            if (run()) return true;
            state_.undo();
        }
        return false;
    }

    std::uint64_t nodes() const { return nodes_; }

   private:
    CoverState &state_;
    std::mt19937_64 &rng_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
};

RestartResult run_restart(const PartitionProblem &problem, const SampledOptions &options, std::uint64_t r) {
    std::mt19937_64 rng(derive_seed(options.seed, r));
    CoverState state(problem, options.target);
    RandomizedCover search(state, rng, options.node_budget);
    RestartResult out;
    if (search.run()) {
        out.solution = state.chosen();
        out.signature = state.signature();
    }
    out.nodes = search.nodes();
    return out;
}

}  // namespace

Census sampled_search(const PrimeDim &dims, const SampledOptions &options) {
    const auto start = Clock::now();
    const PartitionProblem problem(dims);
    Census census{dims};
    census.mode = SearchMode::kSampled;
    census.target = options.target;
    census.stats.seed = options.seed;
    if (options.target) {
        // Validates the target shape before any work.
        CoverState probe(problem, options.target);
    }

    const unsigned threads = worker_threads(options.threads);
    std::uint64_t r = 0;
    while (r < options.restarts) {
        const std::uint64_t batch = std::min<std::uint64_t>(threads, options.restarts - r);
        std::vector<RestartResult> results(batch);
        std::vector<std::thread> pool;
        for (std::uint64_t i = 1; i < batch; ++i) {
            pool.emplace_back([&, i]() { results[i] = run_restart(problem, options, r + i); });
        }
        results[0] = run_restart(problem, options, r);
        for (auto &t : pool) t.join();
        bool found = false;
        for (std::uint64_t i = 0; i < batch && !found; ++i) {
            const auto &res = results[i];
            census.stats.nodes += res.nodes;
            census.stats.restarts_run++;
            if (res.solution) {
                census.stats.partitions_visited++;
                census.signature_counts[res.signature]++;
                if (!census.examples.count(res.signature)) {
                    census.examples.emplace(res.signature, problem.make_partition(*res.solution));
                }
                found = options.target.has_value();
            }
        }
        r += batch;
        if (found) {
            census.target_found = true;
            break;
        }
    }
    census.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return census;
}

MubPartition find_partition(const PrimeDim &dims) {
    const PartitionProblem problem(dims);
    SampledOptions options;
    options.restarts = 1000;
    options.node_budget = 200000;
    options.seed = 1;
    options.threads = 1;
    for (std::uint64_t r = 0; r < options.restarts; ++r) {
        RestartResult res = run_restart(problem, options, r);
        if (res.solution) return problem.make_partition(*res.solution);
    }
    throw ConstructionError("no MUB partition found within the search budget");
}

}  // namespace mubkit
