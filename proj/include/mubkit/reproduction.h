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

#ifndef MUBKIT_REPRODUCTION_H
#define MUBKIT_REPRODUCTION_H

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mubkit {

/// Outcome of one acceptance criterion.
struct CriterionResult {
    int id = 0;
    std::string title;
    std::string claim;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct ReproductionOptions {
    std::uint64_t seed = 2026;
    std::uint64_t states = 10000;
    unsigned threads = 0;
};

/// Runs every acceptance criterion in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const ReproductionOptions &options = {},
                                            const std::function<void(const CriterionResult &)> &on_result = {});

/// "[PASS] 3 three-qubit census: ..." style line.
std::string summary_line(const CriterionResult &result);

/// Markdown table of claim versus measured result.
std::string markdown_report(const std::vector<CriterionResult> &results);

}  // namespace mubkit

#endif
