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

#ifndef CURVKNAP_VERIFY_H_
#define CURVKNAP_VERIFY_H_

// Named invariant suites run by `curvknap verify`. Each suite draws its own
// random cases from the seed and reports pass/fail per invariant with
// witnesses for the first few failures.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "curvknap/knapsack.h"
#include "json.hpp"

namespace curvknap {

struct CheckResult {
  std::string name;
  uint64_t checks = 0;
  uint64_t failures = 0;
  std::string detail;
  std::vector<std::string> witnesses;  // at most kMaxWitnesses

  bool passed() const { return failures == 0; }
  // Counts one check; records a witness when `ok` is false.
  void Record(bool ok, const std::string& witness);
};

inline constexpr size_t kMaxWitnesses = 5;

struct SuiteReport {
  std::string suite;
  uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  nlohmann::json ToJson() const;
};

std::vector<std::string> SuiteNames();
// Throws std::invalid_argument for an unknown suite.
SuiteReport RunSuite(const std::string& name, uint64_t seed);

// Inequalities that hold step by step in an accepted known-optimum run with
// exact expectations. Names: "large-weight" (w(e_i^t) <= w(o_i)),
// "small-gain" (v . E[g_R(x)] >= (1-eps)^3 E[g_R(x)(O_S)] - 3 eps d),
// "small-linear" (L(v) >= (1-eps) l(O_S) - eps d), "small-weight"
// (W(v) <= w(O_S)), "weight-step" (W(x^{t+eps}) - W(x^t) <= eps w(O)),
// "total-weight" (W(x) <= w(O)), "total-linear"
// (L(x) >= (1-eps) l(O) - 2 eps d), and "accepted".
std::vector<CheckResult> CheckPerStepLemmas(const KnownOptimumRun& run,
                                            const SubsetTable& g_table,
                                            const LinearFunction& l,
                                            std::span<const double> weights);

}  // namespace curvknap

#endif  // CURVKNAP_VERIFY_H_
