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

#include "curvknap/box_lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace curvknap {
namespace {

constexpr double kPivotTolerance = 1e-11;

class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(int r, int c) { return data_[r * (cols_ + 1) + c]; }
  double at(int r, int c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }
  int objective_row() const { return rows_; }

  void Pivot(int pivot_row, int pivot_col) {
    const double scale = at(pivot_row, pivot_col);
    for (int c = 0; c <= cols_; ++c) at(pivot_row, c) /= scale;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pivot_row) continue;
      const double factor = at(r, pivot_col);
      if (factor == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) {
        at(r, c) -= factor * at(pivot_row, c);
      }
      at(r, pivot_col) = 0.0;
    }
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

// Runs Bland's-rule pivots on the objective row until optimal. Columns with
// allowed[c] == false never enter. Returns false when unbounded.
bool RunSimplex(Tableau& t, std::vector<int>& basis, int rows, int cols,
                const std::vector<bool>& allowed) {
  const int obj = t.objective_row();
  for (int iteration = 0; iteration < 50000; ++iteration) {
    int entering = -1;
    for (int c = 0; c < cols; ++c) {
      if (allowed[c] && t.at(obj, c) < -kPivotTolerance) {
        entering = c;
        break;
      }
    }
    if (entering < 0) return true;
    int leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows; ++r) {
      const double coef = t.at(r, entering);
      if (coef <= kPivotTolerance) continue;
      const double ratio = t.rhs(r) / coef;
      if (ratio < best_ratio - 1e-14 ||
          (std::abs(ratio - best_ratio) <= 1e-14 && leaving >= 0 &&
           basis[r] < basis[leaving])) {
        best_ratio = ratio;
        leaving = r;
      }
    }
    if (leaving < 0) return false;
    t.Pivot(leaving, entering);
    basis[leaving] = entering;
  }
  throw std::runtime_error("simplex iteration limit reached");
}

}  // namespace

DenseLpResult SolveDenseLp(const DenseLp& lp) {
  const int n = static_cast<int>(lp.c.size());
  const int m = static_cast<int>(lp.a.size());
  if (static_cast<int>(lp.b.size()) != m ||
      static_cast<int>(lp.sense.size()) != m) {
    throw std::invalid_argument("dense LP dimensions disagree");
  }
  // Normalize to nonnegative right-hand sides.
  std::vector<std::vector<double>> a = lp.a;
  std::vector<double> b = lp.b;
  std::vector<ConstraintSense> sense = lp.sense;
  for (int r = 0; r < m; ++r) {
    if (static_cast<int>(a[r].size()) != n) {
      throw std::invalid_argument("dense LP row has wrong width");
    }
    if (b[r] < 0.0) {
      b[r] = -b[r];
      for (double& v : a[r]) v = -v;
      if (sense[r] == ConstraintSense::kLessEqual) {
        sense[r] = ConstraintSense::kGreaterEqual;
      } else if (sense[r] == ConstraintSense::kGreaterEqual) {
        sense[r] = ConstraintSense::kLessEqual;
      }
    }
  }
  int slack_count = 0;
  int artificial_count = 0;
  for (ConstraintSense s : sense) {
    if (s != ConstraintSense::kEqual) ++slack_count;
    if (s != ConstraintSense::kLessEqual) ++artificial_count;
  }
  const int cols = n + slack_count + artificial_count;
  const int first_artificial = n + slack_count;
  Tableau t(m, cols);
  std::vector<int> basis(m, -1);
  int next_slack = n;
  int next_artificial = first_artificial;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) t.at(r, c) = a[r][c];
    t.rhs(r) = b[r];
    switch (sense[r]) {
      case ConstraintSense::kLessEqual:
        t.at(r, next_slack) = 1.0;
        basis[r] = next_slack++;
        break;
      case ConstraintSense::kGreaterEqual:
        t.at(r, next_slack++) = -1.0;
        t.at(r, next_artificial) = 1.0;
        basis[r] = next_artificial++;
        break;
      case ConstraintSense::kEqual:
        t.at(r, next_artificial) = 1.0;
        basis[r] = next_artificial++;
        break;
    }
  }
  const int obj = t.objective_row();
  DenseLpResult result;

  // Phase 1: minimize the sum of artificials.
  if (artificial_count > 0) {
    for (int c = 0; c <= cols; ++c) t.at(obj, c) = 0.0;
    for (int c = first_artificial; c < cols; ++c) t.at(obj, c) = 1.0;
    for (int r = 0; r < m; ++r) {
      if (basis[r] < first_artificial) continue;
      for (int c = 0; c <= cols; ++c) t.at(obj, c) -= t.at(r, c);
    }
    std::vector<bool> allowed(cols, true);
    RunSimplex(t, basis, m, cols, allowed);
    double infeasibility = 0.0;
    for (int r = 0; r < m; ++r) {
      if (basis[r] >= first_artificial) infeasibility += t.rhs(r);
    }
    double scale = 1.0;
    for (double v : b) scale = std::max(scale, std::abs(v));
    if (infeasibility > 1e-9 * scale) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive remaining artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
      if (basis[r] < first_artificial) continue;
      for (int c = 0; c < first_artificial; ++c) {
        if (std::abs(t.at(r, c)) > kPivotTolerance) {
          t.Pivot(r, c);
          basis[r] = c;
          break;
        }
      }
    }
  }

  // Phase 2.
  for (int c = 0; c <= cols; ++c) t.at(obj, c) = 0.0;
  for (int c = 0; c < n; ++c) t.at(obj, c) = lp.c[c];
  for (int r = 0; r < m; ++r) {
    const int bc = basis[r];
    const double cost = bc < n ? lp.c[bc] : 0.0;
    if (cost == 0.0) continue;
    for (int c = 0; c <= cols; ++c) t.at(obj, c) -= cost * t.at(r, c);
  }
  std::vector<bool> allowed(cols, true);
  for (int c = first_artificial; c < cols; ++c) allowed[c] = false;
  if (!RunSimplex(t, basis, m, cols, allowed)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) result.x[basis[r]] = std::max(0.0, t.rhs(r));
  }
  for (int c = 0; c < n; ++c) result.objective += lp.c[c] * result.x[c];
  return result;
}

void ValidateBoxLp(const BoxLp2& lp) {
  for (int e : lp.support) {
    if (e < 0 || e >= static_cast<int>(lp.cost.size()) ||
        e >= static_cast<int>(lp.row1.size()) ||
        e >= static_cast<int>(lp.row2.size())) {
      throw std::out_of_range("LP support element outside coefficient arrays");
    }
    for (double v : {lp.cost[e], lp.row1[e], lp.row2[e]}) {
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("LP coefficients must be finite, >= 0");
      }
    }
  }
  if (!std::isfinite(lp.bound1) || !std::isfinite(lp.bound2)) {
    throw std::invalid_argument("LP bounds must be finite");
  }
}

namespace {

double RowTolerance(double bound) { return 1e-12 * (1.0 + std::abs(bound)); }

bool AllOnesFeasible(const BoxLp2& lp) {
  double s1 = 0.0;
  double s2 = 0.0;
  for (int e : lp.support) {
    s1 += lp.row1[e];
    s2 += lp.row2[e];
  }
  return s1 >= lp.bound1 - RowTolerance(lp.bound1) &&
         s2 >= lp.bound2 - RowTolerance(lp.bound2);
}

BoxLpResult Infeasible(const BoxLp2& lp) {
  BoxLpResult out;
  out.feasible = false;
  out.v.assign(lp.cost.size(), 0.0);
  return out;
}

// Solves the box LP restricted to `vars` with adjusted bounds by the dense
// simplex. Writes values into `v`. Returns false when infeasible.
bool SimplexOnSubset(const BoxLp2& lp, const std::vector<int>& vars,
                     double bound1, double bound2, std::vector<double>& v) {
  const int k = static_cast<int>(vars.size());
  DenseLp dense;
  dense.c.resize(k);
  std::vector<double> r1(k), r2(k);
  for (int j = 0; j < k; ++j) {
    dense.c[j] = lp.cost[vars[j]];
    r1[j] = lp.row1[vars[j]];
    r2[j] = lp.row2[vars[j]];
  }
  dense.a.push_back(r1);
  dense.b.push_back(bound1);
  dense.sense.push_back(ConstraintSense::kGreaterEqual);
  dense.a.push_back(r2);
  dense.b.push_back(bound2);
  dense.sense.push_back(ConstraintSense::kGreaterEqual);
  for (int j = 0; j < k; ++j) {
    std::vector<double> unit(k, 0.0);
    unit[j] = 1.0;
    dense.a.push_back(std::move(unit));
    dense.b.push_back(1.0);
    dense.sense.push_back(ConstraintSense::kLessEqual);
  }
  const DenseLpResult solved = SolveDenseLp(dense);
  if (solved.status != LpStatus::kOptimal) return false;
  for (int j = 0; j < k; ++j) v[vars[j]] = std::clamp(solved.x[j], 0.0, 1.0);
  return true;
}

double Objective(const BoxLp2& lp, const std::vector<double>& v) {
  double total = 0.0;
  for (int e : lp.support) total += lp.cost[e] * v[e];
  return total;
}

}  // namespace

BoxLpResult SolveBoxLpSimplex(const BoxLp2& lp) {
  ValidateBoxLp(lp);
  if (!AllOnesFeasible(lp)) return Infeasible(lp);
  BoxLpResult out;
  out.v.assign(lp.cost.size(), 0.0);
  if (!SimplexOnSubset(lp, lp.support, lp.bound1, lp.bound2, out.v)) {
    // Only reachable through round-off right at the all-ones boundary.
    for (int e : lp.support) out.v[e] = 1.0;
  }
  out.feasible = true;
  out.objective = Objective(lp, out.v);
  return out;
}

BoxLpResult SolveBoxLp(const BoxLp2& lp) {
  ValidateBoxLp(lp);
  if (!AllOnesFeasible(lp)) return Infeasible(lp);
  BoxLpResult out;
  out.feasible = true;
  out.v.assign(lp.cost.size(), 0.0);
  if (lp.bound1 <= 0.0 && lp.bound2 <= 0.0) return out;

  const std::vector<int>& s = lp.support;
  const int k = static_cast<int>(s.size());
  // Dual: maximize phi(mu) = mu1 a + mu2 b - sum_e max(0, mu1 t_e + mu2 l_e -
  // w_e) over mu >= 0. Its breakpoints are the lines mu1 t_e + mu2 l_e = w_e
  // together with the two axes.
  struct Line {
    double p, q, r;  // p mu1 + q mu2 = r
  };
  std::vector<Line> lines;
  lines.push_back({1.0, 0.0, 0.0});
  lines.push_back({0.0, 1.0, 0.0});
  for (int e : s) lines.push_back({lp.row1[e], lp.row2[e], lp.cost[e]});
  auto phi = [&](double mu1, double mu2) {
    double value = mu1 * lp.bound1 + mu2 * lp.bound2;
    for (int e : s) {
      value -= std::max(0.0, mu1 * lp.row1[e] + mu2 * lp.row2[e] - lp.cost[e]);
    }
    return value;
  };
  double best = phi(0.0, 0.0);
  double best_mu1 = 0.0;
  double best_mu2 = 0.0;
  const int line_count = static_cast<int>(lines.size());
  for (int i = 0; i < line_count; ++i) {
    for (int j = i + 1; j < line_count; ++j) {
      const Line& l1 = lines[i];
      const Line& l2 = lines[j];
      const double det = l1.p * l2.q - l1.q * l2.p;
      if (std::abs(det) < 1e-14) continue;
      const double mu1 = (l1.r * l2.q - l1.q * l2.r) / det;
      const double mu2 = (l1.p * l2.r - l1.r * l2.p) / det;
      if (mu1 < -1e-12 || mu2 < -1e-12 || !std::isfinite(mu1) ||
          !std::isfinite(mu2)) {
        continue;
      }
      const double value = phi(std::max(mu1, 0.0), std::max(mu2, 0.0));
      if (value > best) {
        best = value;
        best_mu1 = std::max(mu1, 0.0);
        best_mu2 = std::max(mu2, 0.0);
      }
    }
  }

  // Complementary slackness: negative reduced cost forces v = 1, positive
  // forces v = 0, ties are resolved on the residual problem.
  double scale = 1.0;
  for (int e : s) {
    scale = std::max({scale, lp.cost[e], best_mu1 * lp.row1[e],
                      best_mu2 * lp.row2[e]});
  }
  const double tie = 1e-10 * scale;
  std::vector<int> tied;
  double residual1 = lp.bound1;
  double residual2 = lp.bound2;
  for (int e : s) {
    const double reduced =
        lp.cost[e] - best_mu1 * lp.row1[e] - best_mu2 * lp.row2[e];
    if (reduced < -tie) {
      out.v[e] = 1.0;
      residual1 -= lp.row1[e];
      residual2 -= lp.row2[e];
    } else if (reduced <= tie) {
      tied.push_back(e);
    }
  }
  bool recovered = true;
  if (!tied.empty() && (residual1 > 0.0 || residual2 > 0.0)) {
    recovered = SimplexOnSubset(lp, tied, residual1, residual2, out.v);
  } else {
    recovered = residual1 <= RowTolerance(lp.bound1) &&
                residual2 <= RowTolerance(lp.bound2);
  }
  out.objective = Objective(lp, out.v);
  const double gap_tolerance = 1e-9 * (1.0 + std::abs(best));
  if (!recovered || std::abs(out.objective - best) > gap_tolerance || k == 0) {
    BoxLpResult fallback = SolveBoxLpSimplex(lp);
    fallback.used_fallback = true;
    return fallback;
  }
  return out;
}

}  // namespace curvknap
