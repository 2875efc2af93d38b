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

#ifndef CURVKNAP_ROUNDING_H_
#define CURVKNAP_ROUNDING_H_

// Randomized rounding of a continuous-greedy point (y_1, ..., y_m, z) into a
// set of weight at most 1.

#include <array>
#include <span>
#include <vector>

#include "curvknap/continuous_greedy.h"
#include "curvknap/rng.h"
#include "curvknap/set_function.h"

namespace curvknap {

// Slack allowed on the knapsack test w(S) <= 1.
inline constexpr double kWeightTolerance = 1e-12;

inline bool WithinBudget(double weight) {
  return weight <= 1.0 + kWeightTolerance;
}

struct RoundingInput {
  std::vector<double> weights;
  ElementSet large;
  ElementSet small;
  int m = 0;
  std::vector<std::vector<double>> y;  // [copy][base element]
  std::vector<double> z;               // [base element]
  std::vector<std::vector<double>> v_history;
  double epsilon = 0.0;
};

RoundingInput MakeRoundingInput(const GreedyState& state,
                                std::span<const double> weights,
                                ElementSet large, ElementSet small);

// z'(e) = (1 - eps) z(e) when w(e) < eps^3 max_t W(v^t), else 0.
std::vector<double> ThinnedSmallPoint(const RoundingInput& in);

struct RoundingDraw {
  ElementSet large_part;  // union of the per-copy picks
  ElementSet small_part;
  ElementSet combined;
  double combined_weight = 0.0;  // before the feasibility filter
  ElementSet result;             // combined, or empty when over budget
};

// Throws std::invalid_argument when a copy's probabilities leave [0, 1] or
// do not sum to 1 within 1e-9.
RoundingDraw RoundDetailed(const RoundingInput& in, RngStream& rng);
ElementSet Round(const RoundingInput& in, RngStream& rng);

inline constexpr std::array<double, 4> kTailFactors = {1.0, 1.5, 2.0, 3.0};

// Empirical Pr[w(S_L + S_S) > gamma w(O)] before the filter, one entry per
// factor in kTailFactors. Trial k uses rng.Split(k).
std::array<double, 4> WeightTailProfile(const RoundingInput& in,
                                        double optimum_weight, int trials,
                                        const RngStream& rng);

}  // namespace curvknap

#endif  // CURVKNAP_ROUNDING_H_
