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

#ifndef CURVKNAP_GUESS_GRIDS_H_
#define CURVKNAP_GUESS_GRIDS_H_

// Geometric value grids used to guess unknown optimum-dependent quantities,
// the small/large element split, guess profiles, and the policies that feed
// guesses to the continuous greedy.

#include <cstdint>
#include <span>
#include <vector>

#include "curvknap/multilinear.h"
#include "curvknap/set_function.h"

namespace curvknap {

// Descending values {top, (1-eps) top, ..., bottom, 0} where the last nonzero
// value is the first one at or below eps * d.
struct ValueGrid {
  std::vector<double> values;
  double epsilon = 0.0;
  double top = 0.0;
  double bottom = 0.0;

  size_t size() const { return values.size(); }
  // Smallest grid value >= v. Throws std::out_of_range when v > top.
  double SnapUp(double v) const;
  // Largest grid value <= v (0 for v <= 0).
  double SnapDown(double v) const;
  bool Contains(double v) const;
};

// Grid from count * d down to eps * d. d == 0 gives {0}.
ValueGrid BuildGrid(double epsilon, int count, double d);

// Grid used for per-copy guesses: BuildGrid(eps, m, d) with every value
// divided by m. Its top is d and its last nonzero value is <= eps d / m.
ValueGrid PerCopyGrid(double epsilon, int m, double d);

// Values v of `grid` with v >= (1 - eps)(1 - c_g) gamma0.
ValueGrid RestrictedGrid(const ValueGrid& grid, double gamma0, double c_g);

struct ElementClassification {
  double v_g = 0.0;
  double v_l = 0.0;
  ElementSet large;
  ElementSet small;
};

// e is small iff g(e) <= eps^6 v_g and l(e) <= eps^6 v_l.
ElementClassification ClassifyElements(const SetFunction& g,
                                       const SetFunction& l, double v_g,
                                       double v_l, double epsilon);

// floor(1 / ((1 - c_g) eps^6)) + floor(1 / eps^6): the bound on the number of
// large optimal elements. Throws std::domain_error for c_g >= 1.
int64_t LargeElementCountBound(double c_g, double epsilon);

// One complete assignment of guessed values for a continuous-greedy run.
struct GuessProfile {
  double v_g = 0.0;
  double v_l = 0.0;
  int m = 0;
  std::vector<std::vector<double>> gamma_large;  // [step][copy]
  std::vector<double> lambda_large;              // [copy]
  std::vector<double> gamma_small;               // [step]
  double lambda_small = 0.0;

  // Dimension check against m copies and `steps` iterations.
  bool Matches(int copies, int steps) const;
};

// guess is good for truth with additive slack when
// truth >= guess >= (1 - eps) truth - slack.
bool IsGoodGuess(double guess, double truth, double epsilon, double slack);

// Supplies guesses to the continuous greedy as it runs. `collapsed` is the
// current point mapped to base-element inclusion probabilities.
class GuessPolicy {
 public:
  virtual ~GuessPolicy() = default;
  virtual double LargeGamma(int step, int copy,
                            std::span<const double> collapsed) = 0;
  virtual double LargeLambda(int copy) = 0;
  virtual double SmallGamma(int step, std::span<const double> collapsed) = 0;
  virtual double SmallLambda() = 0;
};

class FixedGuessPolicy : public GuessPolicy {
 public:
  explicit FixedGuessPolicy(GuessProfile profile)
      : profile_(std::move(profile)) {}

  double LargeGamma(int step, int copy, std::span<const double>) override {
    return profile_.gamma_large.at(step).at(copy);
  }
  double LargeLambda(int copy) override {
    return profile_.lambda_large.at(copy);
  }
  double SmallGamma(int step, std::span<const double>) override {
    return profile_.gamma_small.at(step);
  }
  double SmallLambda() override { return profile_.lambda_small; }

  const GuessProfile& profile() const { return profile_; }

 private:
  GuessProfile profile_;
};

// Good guesses derived from a known optimum O: every guess is the largest
// grid value not exceeding the exact quantity it stands for, evaluated on the
// live trajectory. The copy-i target is E[g_{R(x)}(o_i)] and the small-element
// target is E[g_{R(x)}(O_S)]. Records the produced profile and the exact
// targets for later verification.
class KnownOptimumGuessPolicy : public GuessPolicy {
 public:
  // large_optimum lists o_1..o_m in copy order.
  KnownOptimumGuessPolicy(const SubsetTable& g_table,
                          std::span<const double> l_coefficients,
                          ElementSet large_optimum, ElementSet small_optimum,
                          ValueGrid per_copy_grid, ValueGrid small_grid,
                          int steps);

  double LargeGamma(int step, int copy,
                    std::span<const double> collapsed) override;
  double LargeLambda(int copy) override;
  double SmallGamma(int step, std::span<const double> collapsed) override;
  double SmallLambda() override;

  const GuessProfile& profile() const { return profile_; }
  const std::vector<std::vector<double>>& large_targets() const {
    return large_targets_;
  }
  const std::vector<double>& small_targets() const { return small_targets_; }

 private:
  const SubsetTable& g_table_;
  std::vector<double> l_coefficients_;
  ElementSet large_optimum_;
  ElementSet small_optimum_;
  ValueGrid per_copy_grid_;
  ValueGrid small_grid_;
  GuessProfile profile_;
  std::vector<std::vector<double>> large_targets_;
  std::vector<double> small_targets_;
};

// Index-addressable Cartesian product of guess profiles for fixed
// (v_g, v_l, m): gamma_large and lambda_large from the per-copy grid,
// gamma_small[0] and lambda_small from the small grid, and gamma_small[t > 0]
// from the small grid restricted around gamma_small[0]. At(i) is a pure
// function of i, so index ranges can be processed independently.
class GuessProfileEnumerator {
 public:
  GuessProfileEnumerator(double v_g, double v_l, int m, int steps,
                         ValueGrid per_copy_grid, ValueGrid small_grid,
                         double c_g);

  // Saturates at UINT64_MAX.
  uint64_t size() const { return total_; }
  GuessProfile At(uint64_t index) const;

 private:
  double v_g_;
  double v_l_;
  int m_;
  int steps_;
  ValueGrid per_copy_grid_;
  ValueGrid small_grid_;
  std::vector<ValueGrid> restricted_;  // per gamma_small[0] choice
  std::vector<uint64_t> block_start_;
  uint64_t large_count_ = 1;
  uint64_t total_ = 0;
};

// a * b and a + b saturating at UINT64_MAX.
uint64_t SaturatingMultiply(uint64_t a, uint64_t b);
uint64_t SaturatingAdd(uint64_t a, uint64_t b);

}  // namespace curvknap

#endif  // CURVKNAP_GUESS_GRIDS_H_
