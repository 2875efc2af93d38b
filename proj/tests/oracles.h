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

#ifndef CURVKNAP_TESTS_ORACLES_H_
#define CURVKNAP_TESTS_ORACLES_H_

// Independent reference computations used only by the tests. Nothing here
// calls into the library beyond plain data types.

#include <cstdint>
#include <vector>

#include "curvknap/box_lp.h"

namespace curvknap::testing {

// Table indexed by bitmask.
using Table = std::vector<double>;

// Sum over all 2^n subsets of f(S) * Pr[R(x) = S].
double OracleMultilinear(const Table& f, const std::vector<double>& x);

// E[f(R(x) + e) - f(R(x))] by the same subset sum.
double OracleExpectedMarginal(const Table& f, const std::vector<double>& x,
                              int e);

// 1 - min_e f_{E-e}(e) / f(e) over e with f(e) > 0 (0 if none).
double OracleCurvature(const Table& f);

// Explicit monotonicity and submodularity scan over all (S, e, T).
bool OracleMonotoneSubmodular(const Table& f, double tolerance);

// 0/1 knapsack by dynamic programming over integer weights; returns the
// best value subject to sum of weights <= capacity.
double OracleKnapsackDp(const std::vector<double>& values,
                        const std::vector<int>& weights, int capacity);

struct LpOracleResult {
  bool feasible = false;
  double objective = 0.0;
};

// Minimum over the vertices of the two-row box polytope. A vertex has every
// coordinate at 0 or 1 except at most two, fixed by the tight rows.
LpOracleResult OracleBoxLp(const BoxLp2& lp);

// Table of f(S) = sum of coefficients.
Table LinearTable(const std::vector<double>& coefficients);

}  // namespace curvknap::testing

#endif  // CURVKNAP_TESTS_ORACLES_H_
