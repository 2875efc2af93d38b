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

#include "curvknap/rounding.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curvknap {

namespace {

constexpr double kCategoricalTolerance = 1e-9;

int SampleCategorical(std::span<const double> p, RngStream& rng, int copy) {
  double total = 0.0;
  for (double q : p) {
    if (!(q >= 0.0 && q <= 1.0)) {
      throw std::invalid_argument("copy " + std::to_string(copy) +
                                  " has a probability outside [0, 1]");
    }
    total += q;
  }
  if (std::abs(total - 1.0) > kCategoricalTolerance) {
    throw std::invalid_argument("copy " + std::to_string(copy) +
                                " probabilities sum to " +
                                std::to_string(total));
  }
  const double u = rng.Uniform() * total;
  double running = 0.0;
  int last = -1;
  for (size_t e = 0; e < p.size(); ++e) {
    if (p[e] <= 0.0) continue;
    last = static_cast<int>(e);
    running += p[e];
    if (u < running) return last;
  }
  return last;
}

}  // namespace

RoundingInput MakeRoundingInput(const GreedyState& state,
                                std::span<const double> weights,
                                ElementSet large, ElementSet small) {
  RoundingInput in;
  in.weights.assign(weights.begin(), weights.end());
  in.large = std::move(large);
  in.small = std::move(small);
  in.m = state.m;
  in.y = state.y;
  in.z = state.z;
  in.v_history = state.v_history;
  in.epsilon = state.epsilon;
  return in;
}

std::vector<double> ThinnedSmallPoint(const RoundingInput& in) {
  double max_weight = 0.0;
  for (const auto& v : in.v_history) {
    double w = 0.0;
    for (size_t e = 0; e < v.size(); ++e) w += in.weights[e] * v[e];
    max_weight = std::max(max_weight, w);
  }
  const double threshold = std::pow(in.epsilon, 3) * max_weight;
  std::vector<double> out(in.z.size(), 0.0);
  for (size_t e = 0; e < in.z.size(); ++e) {
    if (in.weights[e] < threshold) out[e] = (1.0 - in.epsilon) * in.z[e];
  }
  return out;
}

RoundingDraw RoundDetailed(const RoundingInput& in, RngStream& rng) {
  RoundingDraw draw;
  const std::vector<double> thinned = ThinnedSmallPoint(in);
  for (int e : in.small) {
    const double p = thinned[e];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("small-element probability outside [0, 1]");
    }
    if (rng.Bernoulli(p)) draw.small_part.push_back(e);
  }
  for (int i = 0; i < in.m; ++i) {
    draw.large_part.push_back(SampleCategorical(in.y[i], rng, i));
  }
  draw.large_part = Normalize(std::move(draw.large_part));
  draw.combined = Union(draw.large_part, draw.small_part);
  draw.combined_weight = SetWeight(draw.combined, in.weights);
  if (WithinBudget(draw.combined_weight)) draw.result = draw.combined;
  return draw;
}

ElementSet Round(const RoundingInput& in, RngStream& rng) {
  return RoundDetailed(in, rng).result;
}

std::array<double, 4> WeightTailProfile(const RoundingInput& in,
                                        double optimum_weight, int trials,
                                        const RngStream& rng) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::array<int, 4> exceed{};
  for (int k = 0; k < trials; ++k) {
    RngStream stream = rng.Split(static_cast<uint64_t>(k));
    const double weight = RoundDetailed(in, stream).combined_weight;
    for (size_t j = 0; j < kTailFactors.size(); ++j) {
      if (weight > kTailFactors[j] * optimum_weight + kWeightTolerance) {
        ++exceed[j];
      }
    }
  }
  std::array<double, 4> out{};
  for (size_t j = 0; j < out.size(); ++j) {
    out[j] = static_cast<double>(exceed[j]) / trials;
  }
  return out;
}

}  // namespace curvknap
