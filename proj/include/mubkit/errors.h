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

#ifndef MUBKIT_ERRORS_H
#define MUBKIT_ERRORS_H

#include <stdexcept>
#include <string>

namespace mubkit {

/// A request that exceeds a configured search or enumeration budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Stored data failed an integrity check (digest mismatch, malformed schema).
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical construction produced an object violating its invariants.
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mubkit

#endif
