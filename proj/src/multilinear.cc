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

#include "curvknap/multilinear.h"

#include <cmath>
#include <stdexcept>

namespace curvknap {

void ValidatePoint(std::span<const double> x, int n) {
  if (static_cast<int>(x.size()) != n) {
    throw std::invalid_argument("point dimension does not match ground set");
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("point coordinates must lie in [0, 1]");
    }
  }
}

FractionalPoint Indicator(int n, std::span<const int> set) {
  FractionalPoint x(n, 0.0);
  for (int e : set) x.at(e) = 1.0;
  return x;
}

ElementSet SampleSet(std::span<const double> x, RngStream& rng) {
  ElementSet out;
  for (size_t e = 0; e < x.size(); ++e) {
    if (rng.Bernoulli(x[e])) out.push_back(static_cast<int>(e));
  }
  return out;
}

SubsetTable::SubsetTable(const SetFunction& f) : n_(f.size()) {
  if (n_ > kMaxExactElements) {
    throw CapabilityError("exact multilinear evaluation supports n <= 16");
  }
  const uint64_t count = uint64_t{1} << n_;
  values_.resize(count);
  for (uint64_t mask = 0; mask < count; ++mask) {
    values_[mask] = f.Value(MaskToSet(mask));
  }
}

std::vector<double> SubsetTable::Distribution(std::span<const double> x) const {
  ValidatePoint(x, n_);
  std::vector<double> prob(size_t{1} << n_, 0.0);
  prob[0] = 1.0;
  for (int e = 0; e < n_; ++e) {
    const uint64_t bit = uint64_t{1} << e;
    for (uint64_t mask = 0; mask < bit; ++mask) {
      const double p = prob[mask];
      prob[mask | bit] = p * x[e];
      prob[mask] = p * (1.0 - x[e]);
    }
  }
  return prob;
}

double SubsetTable::Multilinear(std::span<const double> x) const {
  const std::vector<double> prob = Distribution(x);
  double total = 0.0;
  for (size_t mask = 0; mask < prob.size(); ++mask) {
    total += prob[mask] * values_[mask];
  }
  return total;
}

std::vector<double> SubsetTable::ExpectedMarginals(
    std::span<const double> x) const {
  const std::vector<double> prob = Distribution(x);
  std::vector<double> out(n_, 0.0);
  for (uint64_t mask = 0; mask < prob.size(); ++mask) {
    const double p = prob[mask];
    if (p == 0.0) continue;
    for (int e = 0; e < n_; ++e) {
      const uint64_t bit = uint64_t{1} << e;
      if (mask & bit) continue;
      out[e] += p * (values_[mask | bit] - values_[mask]);
    }
  }
  return out;
}

double SubsetTable::ExpectedSetMarginal(std::span<const double> x,
                                        uint64_t set) const {
  const std::vector<double> prob = Distribution(x);
  double total = 0.0;
  for (uint64_t mask = 0; mask < prob.size(); ++mask) {
    total += prob[mask] * (values_[mask | set] - values_[mask]);
  }
  return total;
}

double ExactMultilinear(const SetFunction& f, std::span<const double> x) {
  ValidatePoint(x, f.size());
  return SubsetTable(f).Multilinear(x);
}

double PartialDerivative(const SetFunction& f, std::span<const double> x,
                         int e) {
  ValidatePoint(x, f.size());
  if (e < 0 || e >= f.size()) throw std::out_of_range("element id");
  if (x[e] >= 1.0) {
    throw std::domain_error("partial derivative undefined at x_e = 1");
  }
  const SubsetTable table(f);
  FractionalPoint raised(x.begin(), x.end());
  raised[e] = 1.0;
  return (table.Multilinear(raised) - table.Multilinear(x)) / (1.0 - x[e]);
}

int64_t EstimateSampleCount(double alpha, double beta, double delta) {
  for (double v : {alpha, beta, delta}) {
    if (!(v > 0.0 && v < 1.0)) {
      throw std::invalid_argument("alpha, beta, delta must lie in (0, 1)");
    }
  }
  return static_cast<int64_t>(
      std::ceil(3.0 * std::log(2.0 / delta) / (alpha * beta)));
}

double EstimateMean(const std::function<double(RngStream&)>& draw, double d,
                    double alpha, double beta, double delta, RngStream& rng) {
  if (!(d > 0.0)) throw std::invalid_argument("range bound d must be > 0");
  const int64_t count = EstimateSampleCount(alpha, beta, delta);
  const RngStream base = rng.Split(rng());
  double total = 0.0;
  for (int64_t k = 0; k < count; ++k) {
    RngStream stream = base.Split(static_cast<uint64_t>(k));
    const double value = draw(stream);
    if (!std::isfinite(value)) {
      throw std::domain_error("estimator draw is not finite");
    }
    total += value;
  }
  return total / static_cast<double>(count);
}

double EstimateMarginalOverRandomSet(const SetFunction& f,
                                     std::span<const double> x, int e,
                                     double alpha, double beta, double delta,
                                     double d, RngStream& rng) {
  ValidatePoint(x, f.size());
  return EstimateMean(
      [&](RngStream& stream) {
        return Marginal(f, SampleSet(x, stream), e);
      },
      d, alpha, beta, delta, rng);
}

bool CheckDiscretizationLemma(const SetFunction& f, std::span<const double> x,
                              std::span<const double> y, double epsilon) {
  const int n = f.size();
  if (n > kMaxExhaustiveCheck) {
    throw CapabilityError("discretization check supports n <= 12");
  }
  ValidatePoint(x, n);
  ValidatePoint(y, n);
  FractionalPoint moved(n);
  for (int e = 0; e < n; ++e) {
    moved[e] = x[e] + epsilon * y[e];
    // Tolerate rounding right at the box boundary.
    if (moved[e] > 1.0 && moved[e] < 1.0 + 1e-12) moved[e] = 1.0;
  }
  ValidatePoint(moved, n);
  const SubsetTable table(f);
  const double gain = table.Multilinear(moved) - table.Multilinear(x);
  const std::vector<double> marginals = table.ExpectedMarginals(moved);
  double bound = 0.0;
  for (int e = 0; e < n; ++e) bound += y[e] * marginals[e];
  return gain >= epsilon * bound - kCheckTolerance;
}

}  // namespace curvknap
