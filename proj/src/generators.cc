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

#include "curvknap/generators.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvknap/set_function.h"

namespace curvknap {

namespace {

double UniformIn(double lo, double hi, RngStream& rng) {
  return lo + (hi - lo) * rng.Uniform();
}

void CheckCoverageSpec(const CoverageSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("n must be >= 1");
  if (spec.universe < 1) throw std::invalid_argument("universe must be >= 1");
  if (!(spec.density > 0.0 && spec.density <= 1.0)) {
    throw std::invalid_argument("density must lie in (0, 1]");
  }
  if (!(spec.min_item_weight >= 0.0 &&
        spec.max_item_weight >= spec.min_item_weight)) {
    throw std::invalid_argument("bad item weight range");
  }
  if (!(spec.min_weight >= 0.0 && spec.max_weight <= 1.0 &&
        spec.max_weight >= spec.min_weight)) {
    throw std::invalid_argument("bad element weight range");
  }
}

}  // namespace

std::vector<double> RandomWeights(int n, double lo, double hi,
                                  RngStream& rng) {
  std::vector<double> out(n);
  for (double& w : out) w = UniformIn(lo, hi, rng);
  return out;
}

CoverageInstance GenerateCoverage(const CoverageSpec& spec, RngStream& rng) {
  CheckCoverageSpec(spec);
  CoverageInstance out;
  for (int j = 0; j < spec.universe; ++j) {
    out.item_weights.push_back(
        UniformIn(spec.min_item_weight, spec.max_item_weight, rng));
  }
  out.covers.resize(spec.n);
  for (int e = 0; e < spec.n; ++e) {
    for (int j = 0; j < spec.universe; ++j) {
      if (rng.Bernoulli(spec.density)) out.covers[e].push_back(j);
    }
    if (out.covers[e].empty()) {
      out.covers[e].push_back(static_cast<int>(rng.Below(spec.universe)));
    }
  }
  out.weights = RandomWeights(spec.n, spec.min_weight, spec.max_weight, rng);
  return out;
}

CoverageInstance GenerateCoverageWithCurvature(const CoverageSpec& spec,
                                               double target, RngStream& rng) {
  CheckCoverageSpec(spec);
  if (spec.n < 2) throw std::invalid_argument("n must be >= 2");
  if (!(target > 0.0 && target < 1.0)) {
    throw std::invalid_argument("target curvature must lie in (0, 1)");
  }
  const int n = spec.n;
  CoverageInstance out;
  out.covers.resize(n);
  for (int j = 0; j < spec.universe; ++j) {
    out.item_weights.push_back(
        UniformIn(spec.min_item_weight, spec.max_item_weight, rng));
    std::vector<int> owners;
    for (int e = 0; e < n; ++e) {
      if (rng.Bernoulli(spec.density)) owners.push_back(e);
    }
    while (owners.size() < 2) {
      const int e = static_cast<int>(rng.Below(n));
      if (std::find(owners.begin(), owners.end(), e) == owners.end()) {
        owners.push_back(e);
      }
    }
    for (int e : owners) out.covers[e].push_back(j);
  }
  for (auto& cover : out.covers) std::sort(cover.begin(), cover.end());

  std::vector<double> shared(n, 0.0);
  std::vector<int> candidates;
  for (int e = 0; e < n; ++e) {
    for (int j : out.covers[e]) shared[e] += out.item_weights[j];
    if (shared[e] > 0.0) candidates.push_back(e);
  }
  const int pinned = candidates[rng.Below(candidates.size())];
  for (int e = 0; e < n; ++e) {
    const double ratio =
        e == pinned ? 1.0 - target
                    : 1.0 - target + 0.9 * target * rng.Uniform();
    const double own = shared[e] > 0.0
                           ? shared[e] * ratio / (1.0 - ratio)
                           : UniformIn(spec.min_item_weight,
                                       spec.max_item_weight, rng);
    out.covers[e].push_back(static_cast<int>(out.item_weights.size()));
    out.item_weights.push_back(own);
  }
  out.weights = RandomWeights(n, spec.min_weight, spec.max_weight, rng);
  return out;
}

std::vector<double> RandomSubmodularTable(int n, RngStream& rng) {
  if (n < 1 || n > ExplicitFunction::kMaxElements) {
    throw std::invalid_argument("table size must lie in [1, 16]");
  }
  const int universe = 2 * n;
  std::vector<double> item_weights = RandomWeights(universe, 0.0, 1.0, rng);
  std::vector<uint64_t> covers(n, 0);
  for (int e = 0; e < n; ++e) {
    for (int j = 0; j < universe; ++j) {
      if (rng.Bernoulli(0.3)) covers[e] |= uint64_t{1} << j;
    }
  }
  const std::vector<double> additive = RandomWeights(n, 0.0, 1.0, rng);
  double additive_total = 0.0;
  for (double a : additive) additive_total += a;
  const double cap = UniformIn(0.25, 0.75, rng) * additive_total;
  std::vector<double> linear = RandomWeights(n, 0.0, 0.5, rng);
  const double linear_scale = rng.Bernoulli(0.5) ? rng.Uniform() : 0.0;
  const double coverage_scale = UniformIn(0.2, 1.0, rng);

  std::vector<double> values(size_t{1} << n, 0.0);
  for (uint64_t mask = 0; mask < values.size(); ++mask) {
    uint64_t covered = 0;
    double a = 0.0;
    double lin = 0.0;
    for (int e = 0; e < n; ++e) {
      if (!(mask >> e & 1)) continue;
      covered |= covers[e];
      a += additive[e];
      lin += linear[e];
    }
    double cov = 0.0;
    for (int j = 0; j < universe; ++j) {
      if (covered >> j & 1) cov += item_weights[j];
    }
    values[mask] = coverage_scale * cov + std::min(cap, a) + linear_scale * lin;
  }
  return values;
}

BudgetInstance GenerateBudgetWithCurvature(const BudgetGeneratorSpec& spec,
                                           double target, double tolerance,
                                           int tries, RngStream& rng) {
  if (tries < 1) throw std::invalid_argument("tries must be >= 1");
  BudgetInstance best;
  double best_gap = 2.0;
  for (int k = 0; k < tries; ++k) {
    BudgetGeneratorSpec local = spec;
    const double lo = UniformIn(spec.min_prob, spec.max_prob, rng);
    local.min_prob = lo;
    local.max_prob = UniformIn(lo, spec.max_prob, rng);
    BudgetInstance candidate = GenerateBudgetInstance(local, rng);
    BudgetFunction f(candidate);
    if (f.size() > kMaxExhaustiveCheck) continue;
    const double gap = std::abs(TotalCurvature(f) - target);
    if (gap < best_gap) {
      best_gap = gap;
      best = std::move(candidate);
    }
    if (best_gap <= tolerance) break;
  }
  if (best.channels.empty()) {
    throw std::invalid_argument("no budget instance within 12 elements");
  }
  return best;
}

}  // namespace curvknap
