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

#include "curvknap/guess_grids.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace curvknap {

double ValueGrid::SnapUp(double v) const {
  if (v > top * (1.0 + 1e-12) + 1e-300) {
    throw std::out_of_range("value above grid top");
  }
  // values are descending; scan from the bottom.
  for (auto it = values.rbegin(); it != values.rend(); ++it) {
    if (*it >= v) return *it;
  }
  return values.front();
}

double ValueGrid::SnapDown(double v) const {
  for (double value : values) {
    if (value <= v) return value;
  }
  return 0.0;
}

bool ValueGrid::Contains(double v) const {
  return std::find(values.begin(), values.end(), v) != values.end();
}

ValueGrid BuildGrid(double epsilon, int count, double d) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (count < 1) throw std::invalid_argument("grid count must be >= 1");
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw std::invalid_argument("grid scale d must be finite and >= 0");
  }
  ValueGrid grid;
  grid.epsilon = epsilon;
  if (d == 0.0) {
    grid.values = {0.0};
    return grid;
  }
  grid.top = count * d;
  const double steps =
      std::log(epsilon / count) / std::log(1.0 - epsilon);
  const int last = std::max(0, static_cast<int>(std::ceil(steps - 1e-9)));
  for (int j = 0; j <= last; ++j) {
    grid.values.push_back(grid.top * std::pow(1.0 - epsilon, j));
  }
  grid.bottom = grid.values.back();
  grid.values.push_back(0.0);
  return grid;
}

ValueGrid PerCopyGrid(double epsilon, int m, double d) {
  ValueGrid grid = BuildGrid(epsilon, m, d);
  for (double& v : grid.values) v /= m;
  grid.top /= m;
  grid.bottom /= m;
  return grid;
}

ValueGrid RestrictedGrid(const ValueGrid& grid, double gamma0, double c_g) {
  const double threshold = (1.0 - grid.epsilon) * (1.0 - c_g) * gamma0;
  ValueGrid out = grid;
  out.values.clear();
  for (double v : grid.values) {
    if (v >= threshold) out.values.push_back(v);
  }
  if (!out.values.empty()) {
    out.top = out.values.front();
    out.bottom = out.values.back();
  }
  return out;
}

ElementClassification ClassifyElements(const SetFunction& g,
                                       const SetFunction& l, double v_g,
                                       double v_l, double epsilon) {
  const double scale = std::pow(epsilon, 6);
  ElementClassification out;
  out.v_g = v_g;
  out.v_l = v_l;
  for (int e = 0; e < g.size(); ++e) {
    const ElementSet single{e};
    if (g.Value(single) <= scale * v_g && l.Value(single) <= scale * v_l) {
      out.small.push_back(e);
    } else {
      out.large.push_back(e);
    }
  }
  return out;
}

int64_t LargeElementCountBound(double c_g, double epsilon) {
  if (!(c_g < 1.0)) {
    throw std::domain_error("large-element bound is unbounded for c_g >= 1");
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  const double inv = 1.0 / std::pow(epsilon, 6);
  const double cap = static_cast<double>(std::numeric_limits<int64_t>::max() / 4);
  const double g_term = std::min(cap, std::floor(inv / (1.0 - c_g) * (1 + 1e-12)));
  const double l_term = std::min(cap, std::floor(inv * (1 + 1e-12)));
  return static_cast<int64_t>(g_term) + static_cast<int64_t>(l_term);
}

bool GuessProfile::Matches(int copies, int steps) const {
  if (m != copies) return false;
  if (static_cast<int>(gamma_large.size()) != steps) return false;
  for (const auto& row : gamma_large) {
    if (static_cast<int>(row.size()) != copies) return false;
  }
  return static_cast<int>(lambda_large.size()) == copies &&
         static_cast<int>(gamma_small.size()) == steps;
}

bool IsGoodGuess(double guess, double truth, double epsilon, double slack) {
  return truth + kCheckTolerance >= guess &&
         guess + kCheckTolerance >= (1.0 - epsilon) * truth - slack;
}

KnownOptimumGuessPolicy::KnownOptimumGuessPolicy(
    const SubsetTable& g_table, std::span<const double> l_coefficients,
    ElementSet large_optimum, ElementSet small_optimum,
    ValueGrid per_copy_grid, ValueGrid small_grid, int steps)
    : g_table_(g_table),
      l_coefficients_(l_coefficients.begin(), l_coefficients.end()),
      large_optimum_(std::move(large_optimum)),
      small_optimum_(std::move(small_optimum)),
      per_copy_grid_(std::move(per_copy_grid)),
      small_grid_(std::move(small_grid)) {
  const int m = static_cast<int>(large_optimum_.size());
  profile_.m = m;
  profile_.gamma_large.assign(steps, std::vector<double>(m, 0.0));
  profile_.gamma_small.assign(steps, 0.0);
  profile_.lambda_large.resize(m);
  for (int i = 0; i < m; ++i) {
    profile_.lambda_large[i] =
        per_copy_grid_.SnapDown(l_coefficients_[large_optimum_[i]]);
  }
  double l_small = 0.0;
  for (int e : small_optimum_) l_small += l_coefficients_[e];
  profile_.lambda_small = small_grid_.SnapDown(l_small);
  large_targets_.assign(steps, std::vector<double>(m, 0.0));
  small_targets_.assign(steps, 0.0);
}

double KnownOptimumGuessPolicy::LargeGamma(int step, int copy,
                                           std::span<const double> collapsed) {
  const double target = g_table_.ExpectedSetMarginal(
      collapsed, uint64_t{1} << large_optimum_.at(copy));
  large_targets_.at(step).at(copy) = target;
  const double guess = per_copy_grid_.SnapDown(target);
  profile_.gamma_large[step][copy] = guess;
  return guess;
}

double KnownOptimumGuessPolicy::LargeLambda(int copy) {
  return profile_.lambda_large.at(copy);
}

double KnownOptimumGuessPolicy::SmallGamma(int step,
                                           std::span<const double> collapsed) {
  const double target =
      g_table_.ExpectedSetMarginal(collapsed, SetToMask(small_optimum_));
  small_targets_.at(step) = target;
  const double guess = small_grid_.SnapDown(target);
  profile_.gamma_small.at(step) = guess;
  return guess;
}

double KnownOptimumGuessPolicy::SmallLambda() { return profile_.lambda_small; }

uint64_t SaturatingMultiply(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<uint64_t>::max() / b) {
    return std::numeric_limits<uint64_t>::max();
  }
  return a * b;
}

uint64_t SaturatingAdd(uint64_t a, uint64_t b) {
  if (a > std::numeric_limits<uint64_t>::max() - b) {
    return std::numeric_limits<uint64_t>::max();
  }
  return a + b;
}

namespace {

uint64_t SaturatingPower(uint64_t base, int exponent) {
  uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) out = SaturatingMultiply(out, base);
  return out;
}

}  // namespace

GuessProfileEnumerator::GuessProfileEnumerator(double v_g, double v_l, int m,
                                               int steps,
                                               ValueGrid per_copy_grid,
                                               ValueGrid small_grid,
                                               double c_g)
    : v_g_(v_g),
      v_l_(v_l),
      m_(m),
      steps_(steps),
      per_copy_grid_(std::move(per_copy_grid)),
      small_grid_(std::move(small_grid)) {
  if (m < 0 || steps < 1) throw std::invalid_argument("bad profile shape");
  if (m > 0 && per_copy_grid_.size() == 0) {
    throw std::invalid_argument("empty per-copy grid");
  }
  large_count_ = m == 0 ? 1
                        : SaturatingPower(per_copy_grid_.size(),
                                          steps_ * m_ + m_);
  for (double gamma0 : small_grid_.values) {
    restricted_.push_back(RestrictedGrid(small_grid_, gamma0, c_g));
    block_start_.push_back(total_);
    uint64_t block = SaturatingMultiply(large_count_, small_grid_.size());
    block = SaturatingMultiply(
        block, SaturatingPower(restricted_.back().size(), steps_ - 1));
    total_ = SaturatingAdd(total_, block);
  }
}

GuessProfile GuessProfileEnumerator::At(uint64_t index) const {
  if (index >= total_) throw std::out_of_range("profile index");
  const size_t block = static_cast<size_t>(
      std::upper_bound(block_start_.begin(), block_start_.end(), index) -
      block_start_.begin() - 1);
  uint64_t rest = index - block_start_[block];
  GuessProfile p;
  p.v_g = v_g_;
  p.v_l = v_l_;
  p.m = m_;
  p.gamma_small.assign(steps_, 0.0);
  p.gamma_small[0] = small_grid_.values[block];
  const ValueGrid& restricted = restricted_[block];
  for (int t = 1; t < steps_; ++t) {
    p.gamma_small[t] = restricted.values[rest % restricted.size()];
    rest /= restricted.size();
  }
  p.lambda_small = small_grid_.values[rest % small_grid_.size()];
  rest /= small_grid_.size();
  p.lambda_large.assign(m_, 0.0);
  p.gamma_large.assign(steps_, std::vector<double>(m_, 0.0));
  const uint64_t base = per_copy_grid_.size();
  for (int i = 0; i < m_; ++i) {
    p.lambda_large[i] = per_copy_grid_.values[rest % base];
    rest /= base;
  }
  for (int t = 0; t < steps_; ++t) {
    for (int i = 0; i < m_; ++i) {
      p.gamma_large[t][i] = per_copy_grid_.values[rest % base];
      rest /= base;
    }
  }
  return p;
}

}  // namespace curvknap
