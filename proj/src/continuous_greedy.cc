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

#include "curvknap/continuous_greedy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvknap/box_lp.h"

namespace curvknap {

namespace {

// Absorbs rounding noise between equal quantities computed along different
// summation orders.
constexpr double kCompareSlack = 1e-12;

}  // namespace

int IterationCount(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  const double inverse = 1.0 / epsilon;
  const double rounded = std::round(inverse);
  if (std::abs(inverse - rounded) > 1e-9 * inverse) {
    throw std::invalid_argument("1/epsilon must be an integer");
  }
  return static_cast<int>(rounded);
}

double NormalizeEpsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  return 1.0 / std::ceil(1.0 / epsilon - 1e-9);
}

std::vector<double> CollapseCopies(const std::vector<std::vector<double>>& y,
                                   std::span<const double> z) {
  std::vector<double> absent(z.size());
  for (size_t e = 0; e < z.size(); ++e) absent[e] = 1.0 - z[e];
  for (const auto& copy : y) {
    for (size_t e = 0; e < z.size(); ++e) absent[e] *= 1.0 - copy[e];
  }
  std::vector<double> out(z.size());
  for (size_t e = 0; e < z.size(); ++e) {
    out[e] = std::clamp(1.0 - absent[e], 0.0, 1.0);
  }
  return out;
}

std::vector<double> GreedyState::Collapsed() const {
  return CollapseCopies(y, z);
}

std::vector<double> GreedyState::CollapsedAt(int step, int copies_done) const {
  std::vector<std::vector<double>> partial(m, std::vector<double>(n, 0.0));
  std::vector<double> partial_z(n, 0.0);
  for (int t = 0; t <= step && t < static_cast<int>(picks.size()); ++t) {
    const int copies = t < step ? m : copies_done;
    for (int i = 0; i < copies; ++i) {
      double& value = partial[i][picks[t][i]];
      value = std::min(1.0, value + epsilon);
    }
  }
  for (int t = 0; t < step && t < static_cast<int>(v_history.size()); ++t) {
    for (int e = 0; e < n; ++e) partial_z[e] += epsilon * v_history[t][e];
  }
  for (double& v : partial_z) v = std::min(v, 1.0);
  return CollapseCopies(partial, partial_z);
}

std::vector<double> GreedyState::CopiedPoint(std::span<const int> small) const {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(m) * n + small.size());
  for (const auto& copy : y) out.insert(out.end(), copy.begin(), copy.end());
  for (int e : small) out.push_back(z[e]);
  return out;
}

double GreedyState::CopiedWeight(std::span<const double> weights) const {
  double total = 0.0;
  for (const auto& copy : y) {
    for (int e = 0; e < n; ++e) total += copy[e] * weights[e];
  }
  for (int e = 0; e < n; ++e) total += z[e] * weights[e];
  return total;
}

double GreedyState::CopiedLinear(const LinearFunction& l) const {
  double total = 0.0;
  for (const auto& copy : y) total += l.Extension(copy);
  return total + l.Extension(z);
}

std::vector<double> MarginalEstimates(const GreedyInputs& in,
                                      std::span<const double> collapsed,
                                      std::span<const int> elements,
                                      double alpha, double beta, double delta,
                                      RngStream& rng) {
  const int n = in.g->size();
  std::vector<double> out(n, 0.0);
  if (elements.empty()) return out;
  if (in.estimation == Estimation::kExact) {
    if (in.g_table == nullptr) {
      throw std::invalid_argument("exact estimation needs a subset table");
    }
    const std::vector<double> all = in.g_table->ExpectedMarginals(collapsed);
    for (int e : elements) out[e] = all[e];
    return out;
  }
  if (!(in.d > 0.0)) return out;
  const int64_t count = EstimateSampleCount(alpha, beta, delta);
  const RngStream base = rng.Split(rng());
  for (int64_t k = 0; k < count; ++k) {
    RngStream stream = base.Split(static_cast<uint64_t>(k));
    const ElementSet sample = SampleSet(collapsed, stream);
    const double value = in.g->Value(sample);
    for (int e : elements) {
      if (Contains(sample, e)) continue;
      out[e] += in.g->Value(WithElement(sample, e)) - value;
    }
  }
  for (int e : elements) out[e] /= static_cast<double>(count);
  return out;
}

SmallElementsResult SmallElements(const GreedyInputs& in, double gamma,
                                  double lambda,
                                  std::span<const double> collapsed,
                                  double delta, RngStream& rng) {
  const int n = in.g->size();
  const double eps = in.epsilon;
  SmallElementsResult result;
  result.theta = MarginalEstimates(in, collapsed, in.small, eps, eps / n,
                                   delta / n, rng);
  BoxLp2 lp;
  lp.support = in.small;
  lp.cost.assign(in.weights.begin(), in.weights.end());
  lp.row1.resize(n);
  for (int e = 0; e < n; ++e) lp.row1[e] = std::max(0.0, result.theta[e]);
  lp.bound1 = (1.0 - eps) * gamma - eps * in.d;
  lp.row2 = in.l->coefficients();
  lp.bound2 = lambda;
  const BoxLpResult solved = SolveBoxLp(lp);
  result.feasible = solved.feasible;
  result.v = solved.v;
  return result;
}

GreedyOutcome GuessingContinuousGreedy(const GreedyInputs& in,
                                       GuessPolicy& guesses, RngStream& rng) {
  if (in.g == nullptr || in.l == nullptr) {
    throw std::invalid_argument("greedy needs g and l");
  }
  const int n = in.g->size();
  const int m = in.m;
  const int steps = IterationCount(in.epsilon);
  const double eps = in.epsilon;
  if (m < 0) throw std::invalid_argument("copy count must be >= 0");
  if (static_cast<int>(in.weights.size()) != n) {
    throw std::invalid_argument("weights size mismatch");
  }
  GreedyOutcome outcome;
  GreedyState& state = outcome.state;
  state.n = n;
  state.m = m;
  state.epsilon = eps;
  state.y.assign(m, std::vector<double>(n, 0.0));
  state.z.assign(n, 0.0);
  const ElementSet everything = FullSet(n);
  const double large_delta =
      m > 0 ? eps * in.delta / (2.0 * n * m) : in.delta;
  const double small_delta = eps * in.delta / 2.0;

  for (int t = 0; t < steps; ++t) {
    state.picks.emplace_back(m, -1);
    state.pick_theta.emplace_back(m, 0.0);
    for (int i = 0; i < m; ++i) {
      const std::vector<double> collapsed = state.Collapsed();
      const double gamma = guesses.LargeGamma(t, i, collapsed);
      const double lambda = guesses.LargeLambda(i);
      RngStream stream = rng.Split(static_cast<uint64_t>(t) * 1000003u + i);
      const std::vector<double> theta = MarginalEstimates(
          in, collapsed, everything, eps, eps / m, large_delta, stream);
      const double threshold = (1.0 - eps) * gamma - eps * in.d / m;
      int chosen = -1;
      for (int e = 0; e < n; ++e) {
        if (theta[e] + kCompareSlack < threshold || in.l->coefficient(e) < lambda) continue;
        if (chosen < 0 || in.weights[e] < in.weights[chosen]) chosen = e;
      }
      if (chosen < 0) {
        outcome.accepted = false;
        outcome.rejection = "no-candidate";
        outcome.rejected_step = t;
        outcome.rejected_copy = i;
        return outcome;
      }
      state.y[i][chosen] = std::min(1.0, state.y[i][chosen] + eps);
      state.picks[t][i] = chosen;
      state.pick_theta[t][i] = theta[chosen];
    }
    const std::vector<double> collapsed = state.Collapsed();
    const double gamma = guesses.SmallGamma(t, collapsed);
    const double lambda = guesses.SmallLambda();
    RngStream stream = rng.Split(static_cast<uint64_t>(t) * 1000003u + 999999u);
    SmallElementsResult direction =
        SmallElements(in, gamma, lambda, collapsed, small_delta, stream);
    if (!direction.feasible) {
      outcome.accepted = false;
      outcome.rejection = "small-lp-infeasible";
      outcome.rejected_step = t;
      return outcome;
    }
    for (int e = 0; e < n; ++e) {
      state.z[e] = std::min(1.0, state.z[e] + eps * direction.v[e]);
    }
    state.v_history.push_back(std::move(direction.v));
    state.steps_done = t + 1;
  }
  outcome.accepted = true;
  return outcome;
}

}  // namespace curvknap
