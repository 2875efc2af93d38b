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

#ifndef CURVKNAP_KNAPSACK_H_
#define CURVKNAP_KNAPSACK_H_

// Knapsack-constrained drivers: the curvature pipeline (guess, continuous
// greedy, round), the curvature-based dispatcher, and the baselines used to
// judge it (partial enumeration greedy, cost-benefit greedy, brute force).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "curvknap/continuous_greedy.h"
#include "curvknap/decomposition.h"
#include "curvknap/guess_grids.h"
#include "curvknap/multilinear.h"
#include "curvknap/rounding.h"
#include "curvknap/set_function.h"
#include "json.hpp"

namespace curvknap {

enum class GuessMode { kEnumerate, kKnownOptimum, kHeuristic };

std::string GuessModeName(GuessMode mode);
std::string EstimationName(Estimation estimation);

struct DriverOptions {
  GuessMode guess = GuessMode::kKnownOptimum;
  Estimation estimation = Estimation::kExact;
  uint64_t seed = 0;
  uint64_t profile_budget = 1000000;  // enumerate mode only
};

struct RunDiagnostics {
  double epsilon = 0.0;
  std::optional<double> c_f;
  std::optional<double> c_g;
  std::optional<double> v_g;
  std::optional<double> v_l;
  std::optional<int> m;
  std::optional<double> g_hat;  // G-hat(x), exact mode only
  std::optional<double> l_x;
  std::optional<double> w_x;
  uint64_t profiles_tried = 0;
  uint64_t profiles_rejected = 0;
  uint64_t oracle_calls = 0;
  bool guarantee = true;  // false for heuristic guesses
};

struct RunReport {
  ElementSet set;
  double objective = 0.0;
  double weight = 0.0;
  std::string algorithm;
  std::string mode;
  uint64_t seed = 0;
  RunDiagnostics diagnostics;
  double wall_time_ms = 0.0;  // not part of the JSON document
};

nlohmann::json ToJson(const RunReport& report);
// instance-id,algorithm,mode,seed,objective,weight,oracle-calls,wall-time-ms
std::string CsvHeader();
std::string CsvRow(const std::string& instance_id, const RunReport& report);

// h(S) = g(S) + l(S).
class SumFunction : public SetFunction {
 public:
  SumFunction(const SetFunction& g, const SetFunction& l);

 protected:
  double Evaluate(std::span<const int> set) const override;

 private:
  const SetFunction& g_;
  const SetFunction& l_;
};

// Exact optimum by scanning all 2^n subsets (n <= 20, CapabilityError
// otherwise). Ties go to the smallest bitmask.
RunReport BruteForce(const SetFunction& f, std::span<const double> weights);
// Same scan over a cached table.
uint64_t BruteForceMask(const SubsetTable& table, std::span<const double> l,
                        std::span<const double> weights);

// Repeatedly adds the feasible element of largest f_S(e) / w(e), with
// zero-weight elements first; returns the better of that set and the best
// feasible singleton.
RunReport GreedyCostBenefit(const SetFunction& f,
                            std::span<const double> weights);

// Every feasible set of at most 3 elements, each completed by ratio greedy;
// the best result is kept.
RunReport SviridenkoGreedy(const SetFunction& f,
                           std::span<const double> weights);

// Everything the known-optimum pipeline computes before rounding.
struct KnownOptimumRun {
  double epsilon = 0.0;
  double d = 0.0;
  double c_g = 0.0;
  ElementSet optimum;
  double g_optimum = 0.0;
  double l_optimum = 0.0;
  double v_g = 0.0;
  double v_l = 0.0;
  ElementClassification classes;
  ElementSet large_optimum;
  ElementSet small_optimum;
  int m = 0;
  int64_t large_bound = 0;
  GuessProfile profile;
  std::vector<std::vector<double>> large_targets;  // [step][copy]
  std::vector<double> small_targets;               // [step]
  GreedyOutcome outcome;
};

// Requires n <= 12. g and l must share the ground set; weights in [0, 1].
// epsilon must already satisfy 1/epsilon integral.
KnownOptimumRun RunKnownOptimum(const SetFunction& g, const SubsetTable& table,
                                const LinearFunction& l,
                                std::span<const double> weights,
                                double epsilon, Estimation estimation,
                                uint64_t seed);

// The curvature pipeline on (g, l, w). epsilon is normalized to
// 1 / ceil(1 / epsilon). Objective is g(S) + l(S).
RunReport KnapsackCurvature(const SetFunction& g, const LinearFunction& l,
                            std::span<const double> weights, double epsilon,
                            const DriverOptions& options);

// Decomposes f with eps and runs the curvature pipeline on (g, l, w, eps / 2)
// regardless of c_f. Objective is f(S).
RunReport CurvaturePath(std::shared_ptr<const SetFunction> f,
                        std::span<const double> weights, double epsilon,
                        const DriverOptions& options);

// c_f >= 1 - e eps: partial enumeration greedy. Otherwise decompose with eps
// and run the curvature pipeline with eps / 2. Objective is f(S).
RunReport Dispatch(std::shared_ptr<const SetFunction> f,
                   std::span<const double> weights, double epsilon,
                   const DriverOptions& options);

// Threshold for the partial-enumeration route.
bool PrefersEnumerationGreedy(double c_f, double epsilon);

}  // namespace curvknap

#endif  // CURVKNAP_KNAPSACK_H_
