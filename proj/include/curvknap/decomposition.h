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

#ifndef CURVKNAP_DECOMPOSITION_H_
#define CURVKNAP_DECOMPOSITION_H_

// Splits a monotone submodular f into f = g + l, where l is linear with
// l(e) = (1 - eps/2) f_{E-e}(e) and g = f - l keeps curvature bounded away
// from 1.

#include <memory>
#include <string>

#include "curvknap/set_function.h"

namespace curvknap {

// g(S) = f(S) - l(S), evaluated lazily with one call to f per query.
class ResidualFunction : public SetFunction {
 public:
  ResidualFunction(std::shared_ptr<const SetFunction> f,
                   std::shared_ptr<const LinearFunction> l);

 protected:
  double Evaluate(std::span<const int> set) const override;

 private:
  std::shared_ptr<const SetFunction> f_;
  std::shared_ptr<const LinearFunction> l_;
};

struct Decomposition {
  std::shared_ptr<const SetFunction> f;
  std::shared_ptr<const ResidualFunction> g;
  std::shared_ptr<const LinearFunction> l;
  double epsilon = 0.0;
  double c_f = 0.0;
  // 1 - eps (1 - c_f) / 2, an upper bound on the curvature of g.
  double c_g_bound = 1.0;
};

// Throws std::invalid_argument for eps outside (0, 1) and std::domain_error
// when some f_{E-e}(e) < 0 (f is not monotone).
Decomposition Decompose(std::shared_ptr<const SetFunction> f, double epsilon);

struct DecompositionReport {
  bool ok = true;
  std::string failed_check;  // "sum", "linear-lower-bound", "curvature",
                             // or "g-submodular"
  std::string detail;
  ElementSet witness;
  double c_g = 0.0;  // measured
};

// Exhaustive check for n <= 12 of: g + l = f on every S; l(S) >= (1 - c_f -
// eps/2) f(S) on every S; measured c_g <= c_g_bound; g monotone submodular.
DecompositionReport VerifyDecomposition(const Decomposition& d);

}  // namespace curvknap

#endif  // CURVKNAP_DECOMPOSITION_H_
