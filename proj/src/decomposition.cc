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

#include "curvknap/decomposition.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace curvknap {

ResidualFunction::ResidualFunction(std::shared_ptr<const SetFunction> f,
                                   std::shared_ptr<const LinearFunction> l)
    : SetFunction(f->size()), f_(std::move(f)), l_(std::move(l)) {
  if (l_->size() != f_->size()) {
    throw std::invalid_argument("f and l must share a ground set");
  }
}

double ResidualFunction::Evaluate(std::span<const int> set) const {
  return f_->Value(set) - l_->Value(set);
}

Decomposition Decompose(std::shared_ptr<const SetFunction> f, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  const int n = f->size();
  const ElementSet everything = FullSet(n);
  const double full = f->Value(everything);
  std::vector<double> coefficients(n);
  for (int e = 0; e < n; ++e) {
    const double last_gain = full - f->Value(WithoutElement(everything, e));
    if (last_gain < -kCheckTolerance) {
      throw std::domain_error("f_{E-e}(e) < 0 for element " +
                              std::to_string(e) + ": f is not monotone");
    }
    coefficients[e] = (1.0 - epsilon / 2.0) * std::max(last_gain, 0.0);
  }
  Decomposition d;
  d.f = f;
  d.l = std::make_shared<LinearFunction>(std::move(coefficients));
  d.g = std::make_shared<ResidualFunction>(f, d.l);
  d.epsilon = epsilon;
  d.c_f = TotalCurvature(*f);
  d.c_g_bound = 1.0 - epsilon * (1.0 - d.c_f) / 2.0;
  return d;
}

DecompositionReport VerifyDecomposition(const Decomposition& d) {
  const int n = d.f->size();
  if (n > kMaxExhaustiveCheck) {
    throw CapabilityError("decomposition check supports n <= 12");
  }
  DecompositionReport report;
  const uint64_t count = uint64_t{1} << n;
  for (uint64_t mask = 0; mask < count; ++mask) {
    const ElementSet s = MaskToSet(mask);
    const double f = d.f->Value(s);
    const double g = d.g->Value(s);
    const double l = d.l->Value(s);
    if (std::abs(g + l - f) > kCheckTolerance) {
      report.ok = false;
      report.failed_check = "sum";
      report.witness = s;
      report.detail = "g(S) + l(S) != f(S)";
      return report;
    }
    const double lower = (1.0 - d.c_f - d.epsilon / 2.0) * f;
    if (l < lower - kCheckTolerance) {
      report.ok = false;
      report.failed_check = "linear-lower-bound";
      report.witness = s;
      std::ostringstream msg;
      msg << "l(S) = " << l << " < (1 - c_f - eps/2) f(S) = " << lower;
      report.detail = msg.str();
      return report;
    }
  }
  const PropertyReport g_report = CheckMonotoneSubmodular(*d.g);
  if (!g_report.ok) {
    report.ok = false;
    report.failed_check = "g-submodular";
    report.witness = g_report.witness_small;
    report.detail = g_report.property + ": " + g_report.detail;
    return report;
  }
  report.c_g = TotalCurvature(*d.g);
  if (report.c_g > d.c_g_bound + kCheckTolerance) {
    report.ok = false;
    report.failed_check = "curvature";
    std::ostringstream msg;
    msg << "c_g = " << report.c_g << " > bound " << d.c_g_bound;
    report.detail = msg.str();
  }
  return report;
}

}  // namespace curvknap
