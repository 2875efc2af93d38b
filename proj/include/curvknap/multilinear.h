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

#ifndef CURVKNAP_MULTILINEAR_H_
#define CURVKNAP_MULTILINEAR_H_

// Multilinear extension F(x) = E[f(R(x))], where R(x) contains each element e
// independently with probability x(e): exact evaluation for small ground sets,
// sampling, and the relative-plus-additive mean estimator.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "curvknap/rng.h"
#include "curvknap/set_function.h"

namespace curvknap {

using FractionalPoint = std::vector<double>;

inline constexpr int kMaxExactElements = 16;

// Throws std::invalid_argument unless x has n coordinates in [0, 1].
void ValidatePoint(std::span<const double> x, int n);

// Characteristic vector 1_S.
FractionalPoint Indicator(int n, std::span<const int> set);

// R(x).
ElementSet SampleSet(std::span<const double> x, RngStream& rng);

// Cached table of all 2^n values of a set function, with exact expectations
// under independent inclusion.
class SubsetTable {
 public:
  // n <= 16; uses 2^n oracle calls.
  explicit SubsetTable(const SetFunction& f);

  int size() const { return n_; }
  double operator[](uint64_t mask) const { return values_[mask]; }

  // Pr[R(x) = S] for every mask S.
  std::vector<double> Distribution(std::span<const double> x) const;

  double Multilinear(std::span<const double> x) const;
  // E[f_{R(x)}(e)] for every element e.
  std::vector<double> ExpectedMarginals(std::span<const double> x) const;
  // E[f(R(x) + T) - f(R(x))].
  double ExpectedSetMarginal(std::span<const double> x, uint64_t set) const;

 private:
  int n_;
  std::vector<double> values_;
};

// Exact F(x) by summing all 2^n terms. Refuses (CapabilityError) for n > 16.
double ExactMultilinear(const SetFunction& f, std::span<const double> x);

// (F(x v 1_e) - F(x)) / (1 - x_e), exact. Throws std::domain_error when
// x_e = 1, where the slope is undefined.
double PartialDerivative(const SetFunction& f, std::span<const double> x,
                         int e);

// ceil(3 ln(2/delta) / (alpha beta)).
int64_t EstimateSampleCount(double alpha, double beta, double delta);

// Averages EstimateSampleCount(alpha, beta, delta) independent draws of a
// random variable bounded in [0, d]. With probability >= 1 - delta the result
// is within alpha * mu + beta * d of the mean mu. Draw k receives
// rng.Split(k), so the result does not depend on how draws are scheduled.
double EstimateMean(const std::function<double(RngStream&)>& draw, double d,
                    double alpha, double beta, double delta, RngStream& rng);

// Estimate of E[f_{R(x)}(e)], with d an upper bound on f's marginals.
double EstimateMarginalOverRandomSet(const SetFunction& f,
                                     std::span<const double> x, int e,
                                     double alpha, double beta, double delta,
                                     double d, RngStream& rng);

// Whether F(x + eps y) - F(x) >= eps * sum_e y(e) E[f_{R(x + eps y)}(e)]
// holds to within kCheckTolerance, with every expectation exact (n <= 12).
bool CheckDiscretizationLemma(const SetFunction& f, std::span<const double> x,
                              std::span<const double> y, double epsilon);

}  // namespace curvknap

#endif  // CURVKNAP_MULTILINEAR_H_
