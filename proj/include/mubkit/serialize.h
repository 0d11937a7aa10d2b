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

#ifndef MUBKIT_SERIALIZE_H
#define MUBKIT_SERIALIZE_H

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mubkit/certainty.h"
#include "mubkit/extremizer.h"
#include "mubkit/mub.h"
#include "mubkit/partition_search.h"

namespace mubkit {

inline constexpr const char *kSchemaVersion = "mubkit/1";
inline constexpr const char *kToolVersion = "0.1.0";

using nlohmann::json;

/// Provenance block embedded in every output file. Timestamps are excluded
/// from the digest.
struct Manifest {
    std::string tool_version = kToolVersion;
    std::string command;
    json parameters = json::object();
    std::uint64_t seed = 0;
    json timestamps = json::object();
    std::map<std::string, std::string> input_digests;
    std::string output_digest;
};

/// Hex SHA-256.
std::string sha256_hex(const std::string &data);

json to_json(const WeylLabel &label);
WeylLabel label_from_json(const json &j, int d);
json to_json(const CommutingClass &cls);
CommutingClass class_from_json(const json &j, const PrimeDim &dims);
json to_json(const Basis &basis);
Basis basis_from_json(const json &j, const std::vector<int> &particle_dims);
json to_json(const MubSet &set);
MubSet mub_set_from_json(const json &j);
json to_json(const MubPartition &partition);
MubPartition partition_from_json(const json &j, const PrimeDim &dims);
json to_json(const Census &census);
Census census_from_json(const json &j);
json to_json(const CertaintyReport &report);
CertaintyReport certainty_report_from_json(const json &j);
json to_json(const MonteCarloSummary &summary);
MonteCarloSummary monte_carlo_from_json(const json &j);
json to_json(const PureState &state);
PureState state_from_json(const json &j);
json to_json(const ExtremizationResult &result);
ExtremizationResult extremization_from_json(const json &j);

/// Wraps a payload as {schema_version, kind, manifest, payload} and fills
/// manifest.output_digest.
json make_document(const std::string &kind, const json &payload, Manifest manifest);

struct Document {
    std::string kind;
    Manifest manifest;
    json payload;
    bool partial = false;
};

/// Parses and checks schema version and digest. Throws IntegrityError.
Document parse_document(const std::string &text, const std::string &expected_kind = "");
Document read_document(const std::string &path, const std::string &expected_kind = "");
/// Pretty, deterministic layout used for every file the tool writes.
std::string dump_document(const json &doc);
void write_text_file(const std::string &path, const std::string &text);
std::string read_text_file(const std::string &path);

}  // namespace mubkit

#endif
