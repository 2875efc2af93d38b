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

#ifndef CURVKNAP_CONTINUOUS_GREEDY_H_
#define CURVKNAP_CONTINUOUS_GREEDY_H_

// Continuous greedy over the copied ground set: m copies E_1..E_m of E plus
// the small elements E_S, where g-hat(S_1, ..., S_m, S_S) = g(union). Each
// iteration moves every copy by eps toward one element and the small part by
// eps along an LP direction.
//
// Because g-hat only sees the union of the copies, a point on the copied set
// acts through its collapsed form: base element e is present with
// probability 1 - (1 - z(e)) prod_i (1 - y_i(e)), independently across e.

#include <span>
#include <string>
#include <vector>

#include "curvknap/guess_grids.h"
#include "curvknap/multilinear.h"
#include "curvknap/rng.h"
#include "curvknap/set_function.h"

namespace curvknap {

enum class Estimation { kExact, kSampled };

// Exact estimation needs the subset table of g (n <= 12 in the drivers).
struct GreedyInputs {
  const SetFunction* g = nullptr;
  const SubsetTable* g_table = nullptr;
  const LinearFunction* l = nullptr;
  std::span<const double> weights;
  ElementSet large;
  ElementSet small;
  int m = 0;
  double epsilon = 0.0;  // 1/epsilon must be integral
  double delta = 0.0;
  double d = 0.0;  // d_{g,l}
  Estimation estimation = Estimation::kExact;
};

// Number of iterations 1/eps; throws unless it is an integer.
int IterationCount(double epsilon);
// eps <- 1 / ceil(1 / eps).
double NormalizeEpsilon(double epsilon);

// Per-element marginal estimates E[g_{R(x)}(e)] for `elements` at collapsed
// point x. Exact mode reads them off the subset table; sampled mode runs the
// (alpha, beta, delta) estimator with range bound d, sharing each sampled set
// across all requested elements.
std::vector<double> MarginalEstimates(const GreedyInputs& in,
                                      std::span<const double> collapsed,
                                      std::span<const int> elements,
                                      double alpha, double beta, double delta,
                                      RngStream& rng);

struct SmallElementsResult {
  bool feasible = false;
  std::vector<double> v;      // indexed by base element, supported on E_S
  std::vector<double> theta;  // indexed by base element
};

// One small-element direction: estimates theta on E_S with parameters
// (eps, eps/n, delta/n), then minimizes W(v) subject to v.theta >=
// (1 - eps) gamma - eps d and L(v) >= lambda. Infeasible LPs are reported,
// not thrown.
SmallElementsResult SmallElements(const GreedyInputs& in, double gamma,
                                  double lambda,
                                  std::span<const double> collapsed,
                                  double delta, RngStream& rng);

struct GreedyState {
  int n = 0;
  int m = 0;
  double epsilon = 0.0;
  int steps_done = 0;
  std::vector<std::vector<double>> y;  // [copy][base element]
  std::vector<double> z;               // [base element], supported on E_S
  std::vector<std::vector<double>> v_history;  // [step][base element]
  std::vector<std::vector<int>> picks;         // [step][copy]
  std::vector<std::vector<double>> pick_theta;  // [step][copy]

  // Base-element inclusion probabilities of the current point.
  std::vector<double> Collapsed() const;
  // Collapsed point x^t_i: state before step t with copies < i already
  // advanced (i = m gives the point handed to the small-element step).
  std::vector<double> CollapsedAt(int step, int copies_done) const;
  // Point on the copied ground set: copy i element e at index i * n + e,
  // followed by the entries of `small`.
  std::vector<double> CopiedPoint(std::span<const int> small) const;
  // W and L of the copied point (each copy counted separately).
  double CopiedWeight(std::span<const double> weights) const;
  double CopiedLinear(const LinearFunction& l) const;
};

// Collapses per-copy coordinates into base inclusion probabilities.
std::vector<double> CollapseCopies(const std::vector<std::vector<double>>& y,
                                   std::span<const double> z);

struct GreedyOutcome {
  bool accepted = false;
  std::string rejection;  // "no-candidate" or "small-lp-infeasible"
  int rejected_step = -1;
  int rejected_copy = -1;
  GreedyState state;
};

// Runs 1/eps iterations. Copy i at step t estimates theta_i at x^t_{i-1}
// with parameters (eps, eps/m, eps delta / (2 n m)) and picks the
// minimum-weight element (smallest id on ties) with theta_i(e) >=
// (1 - eps) gamma - eps d / m and l(e) >= lambda_i. The small-element step
// uses delta' = eps delta / 2. A profile with no candidate or an infeasible
// LP is rejected, which is an ordinary outcome.
GreedyOutcome GuessingContinuousGreedy(const GreedyInputs& in,
                                       GuessPolicy& guesses, RngStream& rng);

}  // namespace curvknap

#endif  // CURVKNAP_CONTINUOUS_GREEDY_H_
