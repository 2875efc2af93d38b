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

#ifndef CURVKNAP_SET_FUNCTION_H_
#define CURVKNAP_SET_FUNCTION_H_

// Set functions over a ground set {0, ..., n-1}: the oracle abstraction used by
// every algorithm in the library, a few concrete backings, and exact checks
// (curvature, monotonicity, submodularity) for small ground sets.

#include <atomic>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvknap {

// Sorted, duplicate-free list of element indices.
using ElementSet = std::vector<int>;

// Absolute tolerance used by all invariant checks.
inline constexpr double kCheckTolerance = 1e-9;

// Raised when a request exceeds what an exact or exhaustive routine supports
// (e.g. an exhaustive check on a ground set that is too large).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ElementSet MaskToSet(uint64_t mask);
// Requires every element < 64.
uint64_t SetToMask(std::span<const int> set);
// Sorts and deduplicates.
ElementSet Normalize(ElementSet set);
bool Contains(std::span<const int> set, int e);
ElementSet WithElement(std::span<const int> set, int e);
ElementSet WithoutElement(std::span<const int> set, int e);
ElementSet Union(std::span<const int> a, std::span<const int> b);
ElementSet FullSet(int n);
double SetWeight(std::span<const int> set, std::span<const double> weights);
std::string SetToString(std::span<const int> set);

// A queryable set function f: 2^E -> R over E = {0, ..., n-1}.
//
// Instances are immutable after construction except for the evaluation
// counter, which is atomic so that concurrent readers may query one oracle.
class SetFunction {
 public:
  explicit SetFunction(int n);
  virtual ~SetFunction() = default;
  SetFunction(const SetFunction&) = delete;
  SetFunction& operator=(const SetFunction&) = delete;

  int size() const { return n_; }

  // Returns f(S). `set` must be sorted and duplicate-free with ids in [0, n);
  // throws std::out_of_range / std::invalid_argument otherwise.
  double Value(std::span<const int> set) const;

  uint64_t eval_count() const {
    return evals_.load(std::memory_order_relaxed);
  }

 protected:
  virtual double Evaluate(std::span<const int> set) const = 0;

 private:
  int n_;
  mutable std::atomic<uint64_t> evals_{0};
};

// f_S(e) = f(S + e) - f(S); zero when e is already in S.
double Marginal(const SetFunction& f, std::span<const int> set, int e);

// Stores all 2^n values, subset-bitmask order with bit i = element i.
class ExplicitFunction : public SetFunction {
 public:
  static constexpr int kMaxElements = 16;

  ExplicitFunction(int n, std::vector<double> values);

  const std::vector<double>& values() const { return values_; }

 protected:
  double Evaluate(std::span<const int> set) const override;

 private:
  std::vector<double> values_;
};

// l(S) = sum of nonnegative per-element coefficients.
class LinearFunction : public SetFunction {
 public:
  explicit LinearFunction(std::vector<double> coefficients);

  double coefficient(int e) const { return coefficients_[e]; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  // L(x) = sum_e x(e) l(e).
  double Extension(std::span<const double> x) const;

 protected:
  double Evaluate(std::span<const int> set) const override;

 private:
  std::vector<double> coefficients_;
};

// Weighted coverage: each element covers a list of universe items; f(S) is the
// total weight of items covered by S.
class CoverageFunction : public SetFunction {
 public:
  CoverageFunction(std::vector<double> item_weights,
                   std::vector<std::vector<int>> covers);

  const std::vector<double>& item_weights() const { return item_weights_; }
  const std::vector<std::vector<int>>& covers() const { return covers_; }

 protected:
  double Evaluate(std::span<const int> set) const override;

 private:
  std::vector<double> item_weights_;
  std::vector<std::vector<int>> covers_;
};

// Exact total curvature c_f = 1 - min_e f_{E-e}(e) / f(e) using 2n+1 oracle
// calls. Elements with f(e) = 0 contribute ratio 1. Throws std::domain_error
// when f(e) = 0 but f_{E-e}(e) > 0, which no monotone submodular f admits.
double TotalCurvature(const SetFunction& f);

struct PropertyReport {
  bool ok = true;
  std::string property;  // which property failed, empty on success
  std::string detail;
  ElementSet witness_small;  // S
  ElementSet witness_large;  // T (superset of S)
  int witness_element = -1;
};

// Exhaustive check of monotonicity and diminishing returns over all
// S subset-of T and e not in T. Refuses (CapabilityError) when n > 12.
PropertyReport CheckMonotoneSubmodular(const SetFunction& f,
                                       double tolerance = kCheckTolerance);
inline constexpr int kMaxExhaustiveCheck = 12;

struct SingletonMaxima {
  double d_g = 0.0;
  double d_l = 0.0;
  double d_gl = 0.0;
};
SingletonMaxima ComputeSingletonMaxima(const SetFunction& g,
                                       const SetFunction& l);

// Throws std::invalid_argument unless weights has n finite entries >= 0.
// Entries above 1 are allowed; such elements are never feasible.
void ValidateWeights(std::span<const double> weights, int n);

}  // namespace curvknap

#endif  // CURVKNAP_SET_FUNCTION_H_
