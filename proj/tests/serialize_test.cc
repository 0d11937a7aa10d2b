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

#include <filesystem>

#include <gtest/gtest.h>

#include "mubkit/errors.h"

using namespace mubkit;

namespace {

template <typename T, typename Parse>
void expect_round_trip(const T &value, Parse parse) {
    const std::string first = to_json(value).dump();
    const std::string second = to_json(parse(json::parse(first))).dump();
    EXPECT_EQ(first, second);
}

const MubSet &qubits() {
    static MubSet set = build_complete_mub(PrimeDim(2, 2));
    return set;
}

}  // namespace

TEST(Serialize, Sha256KnownVector) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Serialize, LabelsAreFlatArraysXThenZ) {
    WeylLabel u({1, 0}, {1, 1});
    EXPECT_EQ(to_json(u).dump(), "[1,0,1,1]");
    EXPECT_EQ(label_from_json(to_json(u), 2), u);
    EXPECT_THROW(label_from_json(json::parse("[1,2,3]"), 2), std::exception);
}

TEST(Serialize, ComplexNumbersAsPairs) {
    const json j = to_json(qubits().bases[0]);
    const auto &entry = j.at("vectors").at(0).at(0);
    ASSERT_TRUE(entry.is_array());
    EXPECT_EQ(entry.size(), 2u);
}

TEST(Serialize, RoundTripsAreByteIdentical) {
    const MubSet &set = qubits();
    expect_round_trip(set, [](const json &j) { return mub_set_from_json(j); });
    expect_round_trip(set.bases[3], [](const json &j) { return basis_from_json(j, {2, 2}); });
    expect_round_trip(*set.bases[3].source, [](const json &j) { return class_from_json(j, PrimeDim(2, 2)); });

    Census census = enumerate_partitions(PrimeDim(2, 3));
    expect_round_trip(census, [](const json &j) { return census_from_json(j); });
    expect_round_trip(census.examples.begin()->second,
                      [](const json &j) { return partition_from_json(j, PrimeDim(2, 3)); });

    SampledOptions o;
    o.target = StructureSignature::parse("(3,3,22)");
    Census sampled = sampled_search(PrimeDim(3, 3), o);
    expect_round_trip(sampled, [](const json &j) { return census_from_json(j); });

    std::mt19937_64 rng(1);
    PureState psi = haar_random_state(4, rng);
    expect_round_trip(psi, [](const json &j) { return state_from_json(j); });
    expect_round_trip(certainty_report(psi, set), [](const json &j) { return certainty_report_from_json(j); });
    expect_round_trip(monte_carlo_sweep(set, 500, 3), [](const json &j) { return monte_carlo_from_json(j); });
    auto problem = ExtremizationProblem::from_set(set, {0, 2}, Sense::kMaximize);
    problem.restarts = 2;
    expect_round_trip(extremize(problem), [](const json &j) { return extremization_from_json(j); });

    MubSet product = tensor_mub(build_complete_mub(PrimeDim(2, 1)), build_complete_mub(PrimeDim(3, 1)),
                                {{0, 0}, {1, 1}});
    expect_round_trip(product, [](const json &j) { return mub_set_from_json(j); });
}

TEST(Serialize, LoadedSetKeepsLabelsAndCertification) {
    MubSet back = mub_set_from_json(json::parse(to_json(qubits()).dump()));
    EXPECT_EQ(back.certified, qubits().certified);
    EXPECT_EQ(back.particle_dims, qubits().particle_dims);
    ASSERT_EQ(back.bases.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(back.bases[i].factorization, qubits().bases[i].factorization);
        EXPECT_TRUE(back.bases[i].vectors.isApprox(qubits().bases[i].vectors, 1e-15));
    }
}

TEST(Documents, DigestVerifiesAndTimestampsAreExcluded) {
    Manifest m;
    m.command = "construct";
    m.parameters = {{"d", 2}, {"n", 2}};
    m.timestamps = {{"created", "2026-01-01T00:00:00Z"}};
    const json payload = to_json(qubits());
    const std::string a = dump_document(make_document("mub_set", payload, m));
    m.timestamps = {{"created", "2027-06-01T12:00:00Z"}, {"wall_seconds", 3.5}};
    const std::string b = dump_document(make_document("mub_set", payload, m));
    Document da = parse_document(a, "mub_set");
    Document db = parse_document(b, "mub_set");
    EXPECT_EQ(da.manifest.output_digest, db.manifest.output_digest);
    EXPECT_EQ(da.manifest.output_digest, sha256_hex(payload.dump()));
    EXPECT_EQ(da.payload, payload);
    EXPECT_FALSE(da.partial);
    // Document text round-trips byte for byte.
    json reparsed = json::parse(a);
    EXPECT_EQ(dump_document(reparsed), a);
}

TEST(Documents, IntegrityFailures) {
    Manifest m;
    const std::string text = dump_document(make_document("mub_set", to_json(qubits()), m));
    EXPECT_THROW(parse_document(text, "census"), IntegrityError);
    EXPECT_THROW(parse_document("{not json"), IntegrityError);
    json doc = json::parse(text);
    doc["payload"]["bases"][0]["vectors"][0][0][0] = 0.5;
    EXPECT_THROW(parse_document(doc.dump()), IntegrityError);
    json old = json::parse(text);
    old["schema_version"] = "mubkit/0";
    EXPECT_THROW(parse_document(old.dump()), IntegrityError);
    json missing = json::parse(text);
    missing.erase("manifest");
    EXPECT_THROW(parse_document(missing.dump()), IntegrityError);
}

TEST(Documents, FilesRoundTrip) {
    const auto path = (std::filesystem::temp_directory_path() / "mubkit_doc_test.json").string();
    Manifest m;
    m.command = "construct";
    const std::string text = dump_document(make_document("mub_set", to_json(qubits()), m));
    write_text_file(path, text);
    EXPECT_EQ(read_text_file(path), text);
    Document d = read_document(path, "mub_set");
    EXPECT_EQ(d.manifest.command, "construct");
    std::filesystem::remove(path);
    EXPECT_THROW(read_text_file(path), std::invalid_argument);
}

TEST(Documents, SameInputsSamePayload) {
    SampledOptions o;
    o.restarts = 5;
    o.seed = 44;
    Census a = sampled_search(PrimeDim(2, 4), o);
    Census b = sampled_search(PrimeDim(2, 4), o);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    EXPECT_FALSE(to_json(a).at("search_stats").contains("wall_seconds"));
}
