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

#include "mubkit/serialize.h"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "mubkit/errors.h"

namespace mubkit {

std::string sha256_hex(const std::string &data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < length; ++i) {
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return os.str();
}

namespace {

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw IntegrityError("complex numbers must be [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json vector_to_json(const Eigen::VectorXcd &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

Eigen::VectorXcd vector_from_json(const json &j) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

template <class T>
json optional_to_json(const std::optional<T> &v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<double> optional_double(const json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

json check_to_json(const std::optional<InequalityCheck> &c) {
    if (!c) return nullptr;
    return {{"lhs", c->lhs}, {"bound", c->bound}, {"margin", c->margin}, {"guaranteed", c->guaranteed}};
}

std::optional<InequalityCheck> check_from_json(const json &j) {
    if (j.is_null()) return std::nullopt;
    return InequalityCheck{j.at("lhs").get<double>(), j.at("bound").get<double>(), j.at("margin").get<double>(),
                           j.at("guaranteed").get<bool>()};
}

json bounds_to_json(const CertaintyBounds &b) {
    return {{"pair", b.pair}, {"general_j", b.general_j}, {"prime_j", b.prime_j}, {"full", b.full}};
}

CertaintyBounds bounds_from_json(const json &j) {
    return CertaintyBounds{j.at("pair").get<double>(), j.at("general_j").get<double>(),
                           j.at("prime_j").get<double>(), j.at("full").get<double>()};
}

json manifest_to_json(const Manifest &m) {
    return {{"tool_version", m.tool_version}, {"command", m.command},           {"parameters", m.parameters},
            {"seed", m.seed},                 {"timestamps", m.timestamps},     {"input_digests", m.input_digests},
            {"output_digest", m.output_digest}};
}

Manifest manifest_from_json(const json &j) {
    Manifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.parameters = j.at("parameters");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.timestamps = j.at("timestamps");
    m.input_digests = j.at("input_digests").get<std::map<std::string, std::string>>();
    m.output_digest = j.at("output_digest").get<std::string>();
    return m;
}

}  // namespace

json to_json(const WeylLabel &label) { return label.coords(); }

WeylLabel label_from_json(const json &j, int d) { return WeylLabel::from_coords(j.get<std::vector<int>>(), d); }

json to_json(const CommutingClass &cls) {
    json rows = json::array();
    for (const auto &r : cls.rows()) rows.push_back(to_json(r));
    return {{"rows", rows}};
}

CommutingClass class_from_json(const json &j, const PrimeDim &dims) {
    std::vector<WeylLabel> rows;
    for (const auto &r : j.at("rows")) rows.push_back(label_from_json(r, dims.d()));
    return CommutingClass(rows, dims);
}

json to_json(const Basis &basis) {
    json vectors = json::array();
    for (Eigen::Index c = 0; c < basis.vectors.cols(); ++c) vectors.push_back(vector_to_json(basis.vectors.col(c)));
    json out = {{"vectors", vectors}, {"source", nullptr}, {"factorization", nullptr}};
    if (basis.source) {
        out["source"] = to_json(*basis.source);
        out["source"]["d"] = basis.source->dims().d();
        out["source"]["n"] = basis.source->dims().n();
    }
    if (basis.factorization) {
        out["factorization"] = basis.factorization->blocks();
        out["factorization_label"] = basis.factorization->str();
    }
    return out;
}

Basis basis_from_json(const json &j, const std::vector<int> &particle_dims) {
    Basis b;
    const auto &vectors = j.at("vectors");
    const auto m = static_cast<Eigen::Index>(vectors.size());
    b.vectors.resize(m, m);
    for (Eigen::Index c = 0; c < m; ++c) {
        if (static_cast<Eigen::Index>(vectors[c].size()) != m) {
            throw IntegrityError("basis is not square");
        }
        b.vectors.col(c) = vector_from_json(vectors[c]);
    }
    if (!j.at("source").is_null()) {
        const auto &s = j.at("source");
        b.source = class_from_json(s, PrimeDim(s.at("d").get<int>(), s.at("n").get<int>()));
    }
    if (!j.at("factorization").is_null()) {
        b.factorization = ParticlePartition(j.at("factorization").get<std::vector<std::vector<int>>>(),
                                            static_cast<int>(particle_dims.size()));
    }
    return b;
}

json to_json(const MubSet &set) {
    json bases = json::array();
    std::vector<int> categories;
    bool labelled = !set.bases.empty();
    for (const auto &b : set.bases) {
        json jb = to_json(b);
        if (b.factorization) {
            auto fc = factorization_from_partition(*b.factorization, set.particle_dims.empty() ? 0 : set.particle_dims[0]);
            jb["category"] = fc.category_name;
            categories.push_back(fc.category);
        } else {
            labelled = false;
        }
        bases.push_back(std::move(jb));
    }
    json out = {{"particle_dims", set.particle_dims},
                {"dim", set.dim()},
                {"certified", set.certified},
                {"max_deviation", set.max_deviation},
                {"sampled_certification", set.sampled_certification},
                {"basis_count", set.bases.size()},
                {"bases", bases}};
    if (labelled) {
        out["category_counts"] =
            signature_from_categories(categories, static_cast<int>(set.particle_dims.size())).str();
    }
    return out;
}

MubSet mub_set_from_json(const json &j) {
    MubSet set;
    set.particle_dims = j.at("particle_dims").get<std::vector<int>>();
    if (set.particle_dims.empty()) throw IntegrityError("set has no particles");
    for (const auto &b : j.at("bases")) {
        set.bases.push_back(basis_from_json(b, set.particle_dims));
        if (set.bases.back().dim() != set.dim()) throw IntegrityError("basis dimension does not match the set");
    }
    set.certified = j.at("certified").get<bool>();
    set.max_deviation = j.at("max_deviation").get<double>();
    set.sampled_certification = j.at("sampled_certification").get<bool>();
    return set;
}

json to_json(const MubPartition &partition) {
    json classes = json::array();
    for (const auto &c : partition.classes) classes.push_back(to_json(c));
    json out = {{"classes", classes}};
    if (validate_partition(partition).valid) {
        out["signature"] = structure_signature(partition).str();
    }
    return out;
}

MubPartition partition_from_json(const json &j, const PrimeDim &dims) {
    std::vector<CommutingClass> classes;
    for (const auto &c : j.at("classes")) classes.push_back(class_from_json(c, dims));
    return MubPartition(dims, std::move(classes));
}

json to_json(const Census &census) {
    json sigs = json::array();
    for (const auto &[sig, n] : census.signature_counts) {
        sigs.push_back({{"signature", sig.str()}, {"counts", sig.counts}, {"count", n}});
    }
    json examples = json::array();
    for (const auto &[sig, part] : census.examples) {
        examples.push_back({{"signature", sig.str()}, {"partition", to_json(part)}});
    }
    json categories = json::array();
    for (const auto &p : category_profiles(census.dims.n())) categories.push_back(category_name(p, census.dims.d()));
    return {{"d", census.dims.d()},
            {"n", census.dims.n()},
            {"mode", census.mode == SearchMode::kExhaustive ? "exhaustive" : "sampled"},
            {"categories", categories},
            {"signatures", sigs},
            {"examples", examples},
            {"target", census.target ? json(census.target->str()) : json(nullptr)},
            {"target_found", census.target_found},
            {"search_stats",
             {{"nodes", census.stats.nodes},
              {"partitions_visited", census.stats.partitions_visited},
              {"restarts_run", census.stats.restarts_run},
              {"seed", census.stats.seed}}}};
}

Census census_from_json(const json &j) {
    Census c{PrimeDim(j.at("d").get<int>(), j.at("n").get<int>())};
    const std::string mode = j.at("mode").get<std::string>();
    if (mode != "exhaustive" && mode != "sampled") throw IntegrityError("unknown census mode " + mode);
    c.mode = mode == "exhaustive" ? SearchMode::kExhaustive : SearchMode::kSampled;
    for (const auto &s : j.at("signatures")) {
        c.signature_counts[StructureSignature::parse(s.at("signature"))] = s.at("count").get<std::uint64_t>();
    }
    for (const auto &e : j.at("examples")) {
        c.examples.emplace(StructureSignature::parse(e.at("signature")), partition_from_json(e.at("partition"), c.dims));
    }
    if (!j.at("target").is_null()) c.target = StructureSignature::parse(j.at("target"));
    c.target_found = j.at("target_found").get<bool>();
    const auto &st = j.at("search_stats");
    c.stats.nodes = st.at("nodes").get<std::uint64_t>();
    c.stats.partitions_visited = st.at("partitions_visited").get<std::uint64_t>();
    c.stats.restarts_run = st.at("restarts_run").get<std::uint64_t>();
    c.stats.seed = st.at("seed").get<std::uint64_t>();
    return c;
}

json to_json(const CertaintyReport &r) {
    return {{"dim", r.dim},
            {"j", r.j},
            {"prime_case", r.prime_case},
            {"certified", r.certified},
            {"per_basis", r.per_basis},
            {"normalization_error", r.normalization_error},
            {"bounds", bounds_to_json(r.bounds)},
            {"pair", check_to_json(r.pair)},
            {"general_j", check_to_json(r.general_j)},
            {"prime_j", check_to_json(r.prime_j)},
            {"full", check_to_json(r.full)}};
}

CertaintyReport certainty_report_from_json(const json &j) {
    CertaintyReport r;
    r.dim = j.at("dim").get<std::size_t>();
    r.j = j.at("j").get<std::size_t>();
    r.prime_case = j.at("prime_case").get<bool>();
    r.certified = j.at("certified").get<bool>();
    r.per_basis = j.at("per_basis").get<std::vector<double>>();
    r.normalization_error = j.at("normalization_error").get<double>();
    r.bounds = bounds_from_json(j.at("bounds"));
    r.pair = check_from_json(j.at("pair"));
    r.general_j = check_from_json(j.at("general_j"));
    r.prime_j = check_from_json(j.at("prime_j"));
    r.full = check_from_json(j.at("full"));
    return r;
}

json to_json(const MonteCarloSummary &s) {
    return {{"seed", s.seed},
            {"states", s.states},
            {"dim", s.dim},
            {"j", s.j},
            {"prime_case", s.prime_case},
            {"certified", s.certified},
            {"bounds", bounds_to_json(s.bounds)},
            {"min_margin_pair", optional_to_json(s.min_margin_pair)},
            {"min_margin_general_j", optional_to_json(s.min_margin_general_j)},
            {"min_margin_prime_j", optional_to_json(s.min_margin_prime_j)},
            {"min_margin_full", optional_to_json(s.min_margin_full)},
            {"max_invariant_deviation", optional_to_json(s.max_invariant_deviation)},
            {"min_certainty", s.min_certainty},
            {"max_certainty", s.max_certainty},
            {"max_normalization_error", s.max_normalization_error}};
}

MonteCarloSummary monte_carlo_from_json(const json &j) {
    MonteCarloSummary s;
    s.seed = j.at("seed").get<std::uint64_t>();
    s.states = j.at("states").get<std::uint64_t>();
    s.dim = j.at("dim").get<std::size_t>();
    s.j = j.at("j").get<std::size_t>();
    s.prime_case = j.at("prime_case").get<bool>();
    s.certified = j.at("certified").get<bool>();
    s.bounds = bounds_from_json(j.at("bounds"));
    s.min_margin_pair = optional_double(j, "min_margin_pair");
    s.min_margin_general_j = optional_double(j, "min_margin_general_j");
    s.min_margin_prime_j = optional_double(j, "min_margin_prime_j");
    s.min_margin_full = optional_double(j, "min_margin_full");
    s.max_invariant_deviation = optional_double(j, "max_invariant_deviation");
    s.min_certainty = j.at("min_certainty").get<double>();
    s.max_certainty = j.at("max_certainty").get<double>();
    s.max_normalization_error = j.at("max_normalization_error").get<double>();
    return s;
}

json to_json(const PureState &state) { return {{"amplitudes", vector_to_json(state.amplitudes())}}; }

PureState state_from_json(const json &j) {
    try {
        return PureState(vector_from_json(j.at("amplitudes")));
    } catch (const std::invalid_argument &e) {
        throw IntegrityError(e.what());
    }
}

json to_json(const ExtremizationResult &r) {
    return {{"state", to_json(r.state)},
            {"value", r.value},
            {"per_basis", r.per_basis},
            {"converged", r.converged},
            {"iterations", r.iterations},
            {"gradient_norm", r.gradient_norm},
            {"restart", r.restart}};
}

ExtremizationResult extremization_from_json(const json &j) {
    return ExtremizationResult{state_from_json(j.at("state")),          j.at("value").get<double>(),
                               j.at("per_basis").get<std::vector<double>>(), j.at("converged").get<bool>(),
                               j.at("iterations").get<int>(),            j.at("gradient_norm").get<double>(),
                               j.at("restart").get<int>()};
}

json make_document(const std::string &kind, const json &payload, Manifest manifest) {
    manifest.output_digest = sha256_hex(payload.dump());
    return {{"schema_version", kSchemaVersion},
            {"kind", kind},
            {"manifest", manifest_to_json(manifest)},
            {"payload", payload}};
}

Document parse_document(const std::string &text, const std::string &expected_kind) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw IntegrityError(std::string("malformed JSON: ") + e.what());
    }
    try {
        if (doc.at("schema_version") != kSchemaVersion) {
            throw IntegrityError("unsupported schema version " + doc.at("schema_version").dump());
        }
        Document out;
        out.kind = doc.at("kind").get<std::string>();
        if (!expected_kind.empty() && out.kind != expected_kind) {
            throw IntegrityError("expected a " + expected_kind + " file, found " + out.kind);
        }
        out.manifest = manifest_from_json(doc.at("manifest"));
        out.payload = doc.at("payload");
        out.partial = doc.value("partial", false);
        if (sha256_hex(out.payload.dump()) != out.manifest.output_digest) {
            throw IntegrityError("payload digest mismatch");
        }
        return out;
    } catch (const json::exception &e) {
        throw IntegrityError(std::string("malformed document: ") + e.what());
    }
}

Document read_document(const std::string &path, const std::string &expected_kind) {
    return parse_document(read_text_file(path), expected_kind);
}

std::string dump_document(const json &doc) { return doc.dump() + "\n"; }

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace mubkit
