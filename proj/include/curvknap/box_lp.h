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

#ifndef CURVKNAP_BOX_LP_H_
#define CURVKNAP_BOX_LP_H_

// Linear programs of the form
//
//   minimize    sum_e cost(e) v(e)
//   subject to  sum_e row1(e) v(e) >= bound1
//               sum_e row2(e) v(e) >= bound2
//               0 <= v(e) <= 1 for e in support, v(e) = 0 elsewhere
//
// with nonnegative coefficients, plus the small dense simplex used as a
// fallback and cross-check.

#include <vector>

#include "curvknap/set_function.h"

namespace curvknap {

struct BoxLp2 {
  ElementSet support;
  // Indexed by element id; entries outside the support are ignored.
  std::vector<double> cost;
  std::vector<double> row1;
  double bound1 = 0.0;
  std::vector<double> row2;
  double bound2 = 0.0;
};

struct BoxLpResult {
  bool feasible = false;
  std::vector<double> v;  // indexed by element id
  double objective = 0.0;
  bool used_fallback = false;
};

// Throws std::invalid_argument for negative or non-finite coefficients.
void ValidateBoxLp(const BoxLp2& lp);

// Two-row Lagrangian method: maximizes the piecewise-linear dual over the
// vertices of its breakpoint arrangement, then recovers a primal optimum by
// complementary slackness. Tied coordinates are resolved by the dense simplex,
// which also takes over entirely if the duality gap does not close.
// Infeasible exactly when v = 1 on the support violates a row.
BoxLpResult SolveBoxLp(const BoxLp2& lp);

// Same problem solved directly by the dense simplex.
BoxLpResult SolveBoxLpSimplex(const BoxLp2& lp);

enum class ConstraintSense { kLessEqual, kGreaterEqual, kEqual };

// minimize c.x subject to a x (sense) b, x >= 0.
struct DenseLp {
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<ConstraintSense> sense;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct DenseLpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
};

// Two-phase tableau simplex with Bland's rule.
DenseLpResult SolveDenseLp(const DenseLp& lp);

}  // namespace curvknap

#endif  // CURVKNAP_BOX_LP_H_
