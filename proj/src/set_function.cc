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

#include "curvknap/set_function.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace curvknap {

ElementSet MaskToSet(uint64_t mask) {
  ElementSet out;
  for (int e = 0; mask != 0; ++e, mask >>= 1) {
    if (mask & 1) out.push_back(e);
  }
  return out;
}

uint64_t SetToMask(std::span<const int> set) {
  uint64_t mask = 0;
  for (int e : set) {
    if (e < 0 || e >= 64) throw std::out_of_range("element id outside mask");
    mask |= uint64_t{1} << e;
  }
  return mask;
}

ElementSet Normalize(ElementSet set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

bool Contains(std::span<const int> set, int e) {
  return std::binary_search(set.begin(), set.end(), e);
}

ElementSet WithElement(std::span<const int> set, int e) {
  ElementSet out(set.begin(), set.end());
  auto it = std::lower_bound(out.begin(), out.end(), e);
  if (it == out.end() || *it != e) out.insert(it, e);
  return out;
}

ElementSet WithoutElement(std::span<const int> set, int e) {
  ElementSet out;
  out.reserve(set.size());
  for (int x : set) {
    if (x != e) out.push_back(x);
  }
  return out;
}

ElementSet Union(std::span<const int> a, std::span<const int> b) {
  ElementSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

ElementSet FullSet(int n) {
  ElementSet out(n);
  for (int e = 0; e < n; ++e) out[e] = e;
  return out;
}

double SetWeight(std::span<const int> set, std::span<const double> weights) {
  double total = 0.0;
  for (int e : set) total += weights[e];
  return total;
}

std::string SetToString(std::span<const int> set) {
  std::ostringstream out;
  out << '{';
  for (size_t i = 0; i < set.size(); ++i) {
    if (i) out << ',';
    out << set[i];
  }
  out << '}';
  return out.str();
}

SetFunction::SetFunction(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("ground set must be nonempty");
}

double SetFunction::Value(std::span<const int> set) const {
  int previous = -1;
  for (int e : set) {
    if (e < 0 || e >= n_) {
      throw std::out_of_range("element id " + std::to_string(e) +
                              " outside ground set of size " +
                              std::to_string(n_));
    }
    if (e <= previous) {
      throw std::invalid_argument("element set must be sorted and unique");
    }
    previous = e;
  }
  evals_.fetch_add(1, std::memory_order_relaxed);
  return Evaluate(set);
}

double Marginal(const SetFunction& f, std::span<const int> set, int e) {
  if (e < 0 || e >= f.size()) throw std::out_of_range("element id");
  if (Contains(set, e)) return 0.0;
  return f.Value(WithElement(set, e)) - f.Value(set);
}

ExplicitFunction::ExplicitFunction(int n, std::vector<double> values)
    : SetFunction(n), values_(std::move(values)) {
  if (n > kMaxElements) {
    throw CapabilityError("explicit table supports at most 16 elements");
  }
  if (values_.size() != (size_t{1} << n)) {
    throw std::invalid_argument("explicit table needs 2^n values");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("explicit table values must be finite, >= 0");
    }
  }
}

double ExplicitFunction::Evaluate(std::span<const int> set) const {
  return values_[SetToMask(set)];
}

LinearFunction::LinearFunction(std::vector<double> coefficients)
    : SetFunction(static_cast<int>(coefficients.size())),
      coefficients_(std::move(coefficients)) {
  for (double c : coefficients_) {
    if (!std::isfinite(c) || c < 0.0) {
      throw std::invalid_argument("linear coefficients must be finite, >= 0");
    }
  }
}

double LinearFunction::Extension(std::span<const double> x) const {
  double total = 0.0;
  for (size_t e = 0; e < x.size(); ++e) total += x[e] * coefficients_[e];
  return total;
}

double LinearFunction::Evaluate(std::span<const int> set) const {
  double total = 0.0;
  for (int e : set) total += coefficients_[e];
  return total;
}

CoverageFunction::CoverageFunction(std::vector<double> item_weights,
                                   std::vector<std::vector<int>> covers)
    : SetFunction(static_cast<int>(covers.size())),
      item_weights_(std::move(item_weights)),
      covers_(std::move(covers)) {
  for (double v : item_weights_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("item weights must be finite, >= 0");
    }
  }
  const int universe = static_cast<int>(item_weights_.size());
  for (auto& items : covers_) {
    items = Normalize(std::move(items));
    for (int u : items) {
      if (u < 0 || u >= universe) {
        throw std::out_of_range("covered item outside universe");
      }
    }
  }
}

double CoverageFunction::Evaluate(std::span<const int> set) const {
  std::vector<char> covered(item_weights_.size(), 0);
  double total = 0.0;
  for (int e : set) {
    for (int u : covers_[e]) {
      if (!covered[u]) {
        covered[u] = 1;
        total += item_weights_[u];
      }
    }
  }
  return total;
}

double TotalCurvature(const SetFunction& f) {
  const int n = f.size();
  const ElementSet everything = FullSet(n);
  const double full = f.Value(everything);
  double min_ratio = 1.0;
  for (int e = 0; e < n; ++e) {
    const double singleton = f.Value(ElementSet{e});
    const double last_gain = full - f.Value(WithoutElement(everything, e));
    if (singleton <= 0.0) {
      if (last_gain > kCheckTolerance) {
        throw std::domain_error(
            "f(e) = 0 but f_{E-e}(e) > 0 for element " + std::to_string(e) +
            ": function is not submodular");
      }
      continue;
    }
    min_ratio = std::min(min_ratio, last_gain / singleton);
  }
  return std::clamp(1.0 - min_ratio, 0.0, 1.0);
}

PropertyReport CheckMonotoneSubmodular(const SetFunction& f, double tolerance) {
  const int n = f.size();
  if (n > kMaxExhaustiveCheck) {
    throw CapabilityError("exhaustive check supports at most 12 elements");
  }
  const uint64_t count = uint64_t{1} << n;
  std::vector<double> table(count);
  for (uint64_t mask = 0; mask < count; ++mask) {
    table[mask] = f.Value(MaskToSet(mask));
  }
  PropertyReport report;
  if (table[0] < -tolerance) {
    report.ok = false;
    report.property = "nonnegative";
    report.detail = "f(empty) < 0";
    return report;
  }
  for (uint64_t big = 0; big < count; ++big) {
    // Iterate every submask of `big`, including big itself and 0.
    for (uint64_t small = big;; small = (small - 1) & big) {
      if (table[small] > table[big] + tolerance) {
        report.ok = false;
        report.property = "monotone";
        report.witness_small = MaskToSet(small);
        report.witness_large = MaskToSet(big);
        report.detail = "f(S) > f(T) for S subset of T";
        return report;
      }
      for (int e = 0; e < n; ++e) {
        const uint64_t bit = uint64_t{1} << e;
        if (big & bit) continue;
        const double gain_small = table[small | bit] - table[small];
        const double gain_big = table[big | bit] - table[big];
        if (gain_small < gain_big - tolerance) {
          report.ok = false;
          report.property = "submodular";
          report.witness_small = MaskToSet(small);
          report.witness_large = MaskToSet(big);
          report.witness_element = e;
          std::ostringstream msg;
          msg << "f_S(e) = " << gain_small << " < f_T(e) = " << gain_big;
          report.detail = msg.str();
          return report;
        }
      }
      if (small == 0) break;
    }
  }
  return report;
}

SingletonMaxima ComputeSingletonMaxima(const SetFunction& g,
                                       const SetFunction& l) {
  SingletonMaxima out;
  for (int e = 0; e < g.size(); ++e) {
    out.d_g = std::max(out.d_g, g.Value(ElementSet{e}));
  }
  for (int e = 0; e < l.size(); ++e) {
    out.d_l = std::max(out.d_l, l.Value(ElementSet{e}));
  }
  out.d_gl = std::max(out.d_g, out.d_l);
  return out;
}

void ValidateWeights(std::span<const double> weights, int n) {
  if (static_cast<int>(weights.size()) != n) {
    throw std::invalid_argument("weights must have one entry per element");
  }
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("weights must be finite and >= 0");
    }
  }
}

}  // namespace curvknap
