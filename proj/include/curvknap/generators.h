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

#ifndef CURVKNAP_GENERATORS_H_
#define CURVKNAP_GENERATORS_H_

// Random instance generators. Every generator is a pure function of its
// arguments and the stream state.

#include <vector>

#include "curvknap/budget_allocation.h"
#include "curvknap/rng.h"

namespace curvknap {

struct CoverageSpec {
  int n = 8;
  int universe = 12;
  double density = 0.3;
  double min_item_weight = 0.5;
  double max_item_weight = 1.5;
  double min_weight = 0.1;
  double max_weight = 0.6;
};

struct CoverageInstance {
  std::vector<double> item_weights;
  std::vector<std::vector<int>> covers;
  std::vector<double> weights;
};

// Every element covers at least one item.
CoverageInstance GenerateCoverage(const CoverageSpec& spec, RngStream& rng);

// Coverage instance whose total curvature equals `target` in (0, 1): shared
// items are covered at least twice and each element also owns a private item
// sized so that min_e f_{E-e}(e) / f(e) = 1 - target. Needs n >= 2.
CoverageInstance GenerateCoverageWithCurvature(const CoverageSpec& spec,
                                               double target, RngStream& rng);

// All 2^n values of a random monotone submodular function: a weighted
// coverage part, a budget-additive part min(B, sum a(e)), and a linear part.
std::vector<double> RandomSubmodularTable(int n, RngStream& rng);

// n weights uniform in [lo, hi].
std::vector<double> RandomWeights(int n, double lo, double hi,
                                  RngStream& rng);

// Draws up to `tries` budget instances and keeps the one whose exact
// curvature is closest to `target`, stopping early within `tolerance`.
// Probability ranges are redrawn per try. The ground set must stay at or
// below 12 elements for the exact curvature.
BudgetInstance GenerateBudgetWithCurvature(const BudgetGeneratorSpec& spec,
                                           double target, double tolerance,
                                           int tries, RngStream& rng);

}  // namespace curvknap

#endif  // CURVKNAP_GENERATORS_H_
