// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CURVKNAP_INSTANCE_IO_H_
#define CURVKNAP_INSTANCE_IO_H_

// Instance files: one JSON document
//
//   {"ground_set": n, "weights": [...], "epsilon": eps,
//    "function": {"type": "explicit", "values": [2^n values]}
//              | {"type": "coverage", "universe_size": u,
//                 "item_weights": [...], "covers": [[items], ...]}
//              | {"type": "budget", "channels": [...], "customers": [...]}}
//
// Explicit values are in subset-bitmask order with bit i = element i. For
// budget functions `weights` may be omitted; it is derived from the channels.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "curvknap/budget_allocation.h"
#include "curvknap/set_function.h"

namespace curvknap {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExplicitSpec {
  std::vector<double> values;
};

struct CoverageData {
  int universe_size = 0;
  std::vector<double> item_weights;
  std::vector<std::vector<int>> covers;
};

struct Instance {
  int n = 0;
  std::vector<double> weights;
  std::optional<double> epsilon;
  std::variant<ExplicitSpec, CoverageData, BudgetInstance> function;

  // Builds the oracle described by `function`.
  std::shared_ptr<const SetFunction> MakeFunction() const;
  std::string FunctionType() const;
};

// Throws InputError on malformed documents or violated invariants.
Instance ParseInstance(const std::string& text);
// Canonical form; parsing it and serializing again gives identical bytes.
std::string SerializeInstance(const Instance& instance);

Instance LoadInstance(const std::string& path);
// Throws InputError when the path cannot be written.
void SaveInstance(const Instance& instance, const std::string& path);

}  // namespace curvknap

#endif  // CURVKNAP_INSTANCE_IO_H_
