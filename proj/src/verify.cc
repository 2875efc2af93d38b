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

#include "curvknap/verify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "curvknap/box_lp.h"
#include "curvknap/budget_allocation.h"
#include "curvknap/decomposition.h"
#include "curvknap/generators.h"
#include "curvknap/guess_grids.h"
#include "curvknap/multilinear.h"
#include "curvknap/rounding.h"

namespace curvknap {

void CheckResult::Record(bool ok, const std::string& witness) {
  ++checks;
  if (ok) return;
  ++failures;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(witness);
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed(); });
}

nlohmann::json SuiteReport::ToJson() const {
  nlohmann::json list = nlohmann::json::array();
  for (const CheckResult& c : checks) {
    list.push_back({{"name", c.name},
                    {"checks", c.checks},
                    {"failures", c.failures},
                    {"passed", c.passed()},
                    {"detail", c.detail},
                    {"witnesses", c.witnesses}});
  }
  return {{"suite", suite}, {"seed", seed}, {"passed", passed()},
          {"invariants", list}};
}

namespace {

constexpr double kTol = kCheckTolerance;

std::string Format(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream out;
  out.precision(12);
  bool first = true;
  for (const auto& [key, value] : kv) {
    if (!first) out << " ";
    out << key << "=" << value;
    first = false;
  }
  return out.str();
}

CheckResult& Find(std::vector<CheckResult>& list, const std::string& name) {
  for (CheckResult& c : list) {
    if (c.name == name) return c;
  }
  CheckResult fresh;
  fresh.name = name;
  list.push_back(fresh);
  return list.back();
}

void Merge(std::vector<CheckResult>& into,
           const std::vector<CheckResult>& from) {
  for (const CheckResult& c : from) {
    CheckResult& target = Find(into, c.name);
    target.checks += c.checks;
    target.failures += c.failures;
    for (const std::string& w : c.witnesses) {
      if (target.witnesses.size() < kMaxWitnesses) target.witnesses.push_back(w);
    }
  }
}

std::vector<CheckResult> DiscretizationSuite(uint64_t seed) {
  CheckResult check;
  check.name = "discretization-lemma";
  RngStream root(seed, 101);
  const double epsilons[] = {0.05, 0.1, 0.25, 0.5};
  for (int k = 0; k < 1000; ++k) {
    RngStream rng = root.Split(k);
    const int n = 1 + static_cast<int>(rng.Below(8));
    ExplicitFunction f(n, RandomSubmodularTable(n, rng));
    const double eps = epsilons[rng.Below(4)];
    std::vector<double> x(n), y(n);
    for (int e = 0; e < n; ++e) {
      x[e] = (1.0 - eps) * rng.Uniform();
      y[e] = rng.Uniform();
    }
    check.Record(CheckDiscretizationLemma(f, x, y, eps),
                 "case " + std::to_string(k));
  }
  return {check};
}

std::vector<CheckResult> GridCoverageSuite(uint64_t seed) {
  CheckResult check;
  check.name = "grid-coverage";
  RngStream root(seed, 102);
  uint64_t cell = 0;
  for (double eps : {0.1, 0.25, 0.5}) {
    for (int n : {1, 4, 10}) {
      for (double d : {0.5, 1.0, 3.0}) {
        const ValueGrid grid = BuildGrid(eps, n, d);
        RngStream rng = root.Split(cell++);
        for (int k = 0; k < 10000; ++k) {
          const double v = n * d * rng.Uniform();
          const double snapped = grid.SnapUp(v);
          const bool ok = v <= snapped + kTol &&
                          (1.0 - eps) * snapped - eps * d <= v + kTol;
          check.Record(ok, Format({{"eps", eps},
                                   {"n", static_cast<double>(n)},
                                   {"d", d},
                                   {"v", v},
                                   {"grid", snapped}}));
        }
      }
    }
  }
  return {check};
}

std::vector<CheckResult> DecompositionSuite(uint64_t seed) {
  std::vector<CheckResult> out;
  RngStream root(seed, 103);
  for (int k = 0; k < 100; ++k) {
    RngStream rng = root.Split(k);
    const int n = 2 + static_cast<int>(rng.Below(9));
    auto f = std::make_shared<ExplicitFunction>(n, RandomSubmodularTable(n, rng));
    for (double eps : {0.1, 0.25, 0.5}) {
      const DecompositionReport report = VerifyDecomposition(Decompose(f, eps));
      const std::string witness = "case " + std::to_string(k) + " eps " +
                                  std::to_string(eps) + ": " + report.detail;
      for (const char* name :
           {"sum", "linear-lower-bound", "curvature", "g-submodular"}) {
        Find(out, name).Record(report.failed_check != name, witness);
      }
    }
  }
  return out;
}

std::vector<CheckResult> EstimatorSuite(uint64_t seed) {
  CheckResult check;
  check.name = "estimator-contract";
  const double alpha = 0.1, beta = 0.1, delta = 0.01, d = 2.0;
  const double mu = 0.5 * d;
  RngStream root(seed, 104);
  int violations = 0;
  const int meta = 200;
  for (int k = 0; k < meta; ++k) {
    RngStream rng = root.Split(k);
    const double estimate = EstimateMean(
        [d](RngStream& r) { return r.Bernoulli(0.5) ? d : 0.0; }, d, alpha,
        beta, delta, rng);
    if (std::abs(estimate - mu) > alpha * mu + beta * d) ++violations;
  }
  const double fraction = static_cast<double>(violations) / meta;
  check.detail = "violation fraction " + std::to_string(fraction) +
                 " over " + std::to_string(meta) + " meta-trials (limit 0.02)";
  check.Record(fraction <= 0.02, check.detail);
  return {check};
}

BoxLp2 RandomBoxLp(RngStream& rng, int n) {
  BoxLp2 lp;
  for (int e = 0; e < n; ++e) {
    if (rng.Bernoulli(0.8)) lp.support.push_back(e);
  }
  auto coefficient = [&rng](double zero_prob) {
    return rng.Bernoulli(zero_prob) ? 0.0 : rng.Uniform();
  };
  lp.cost.resize(n);
  lp.row1.resize(n);
  lp.row2.resize(n);
  double sum1 = 0.0, sum2 = 0.0;
  for (int e = 0; e < n; ++e) {
    lp.cost[e] = coefficient(0.1);
    lp.row1[e] = coefficient(0.2);
    lp.row2[e] = coefficient(0.2);
    if (Contains(lp.support, e)) {
      sum1 += lp.row1[e];
      sum2 += lp.row2[e];
    }
  }
  lp.bound1 = (1.3 * rng.Uniform() - 0.2) * sum1;
  lp.bound2 = (1.3 * rng.Uniform() - 0.2) * sum2;
  return lp;
}

std::vector<CheckResult> LpSuite(uint64_t seed) {
  CheckResult agree;
  agree.name = "lp-feasibility-agrees";
  CheckResult gap;
  gap.name = "lp-objective-gap";
  CheckResult residual;
  residual.name = "lp-residual";
  RngStream root(seed, 105);
  for (int k = 0; k < 500; ++k) {
    RngStream rng = root.Split(k);
    const BoxLp2 lp = RandomBoxLp(rng, 1 + static_cast<int>(rng.Below(6)));
    const BoxLpResult fast = SolveBoxLp(lp);
    const BoxLpResult slow = SolveBoxLpSimplex(lp);
    const std::string witness = "case " + std::to_string(k);
    agree.Record(fast.feasible == slow.feasible, witness);
    if (!fast.feasible || !slow.feasible) continue;
    gap.Record(std::abs(fast.objective - slow.objective) <= 1e-6,
               witness + " " + Format({{"fast", fast.objective},
                                       {"simplex", slow.objective}}));
    double r1 = 0.0, r2 = 0.0;
    bool box = true;
    for (size_t e = 0; e < fast.v.size(); ++e) {
      r1 += lp.row1[e] * fast.v[e];
      r2 += lp.row2[e] * fast.v[e];
      if (fast.v[e] < 0.0 || fast.v[e] > 1.0) box = false;
      if (!Contains(lp.support, static_cast<int>(e)) && fast.v[e] != 0.0) {
        box = false;
      }
    }
    residual.Record(box && r1 >= lp.bound1 - 1e-8 && r2 >= lp.bound2 - 1e-8,
                    witness);
  }
  return {agree, gap, residual};
}

std::vector<CheckResult> BudgetSuite(uint64_t seed) {
  CheckResult marginal;
  marginal.name = "budget-marginal-identity";
  CheckResult symmetry;
  symmetry.name = "budget-copy-symmetry";
  CheckResult submodular;
  submodular.name = "budget-monotone-submodular";
  CheckResult bound;
  bound.name = "budget-curvature-bound";
  CheckResult tight;
  tight.name = "budget-single-channel-tight";
  RngStream root(seed, 106);
  int made = 0;
  for (int k = 0; made < 50; ++k) {
    RngStream rng = root.Split(k);
    BudgetGeneratorSpec spec;
    spec.channels = 2 + static_cast<int>(rng.Below(3));
    spec.customers = 2 + static_cast<int>(rng.Below(4));
    spec.max_capacity = 3;
    spec.min_prob = 0.0;
    spec.max_prob = 1.0;
    const BudgetInstance instance = GenerateBudgetInstance(spec, rng);
    const BudgetFunction f(instance);
    if (f.size() > kMaxExhaustiveCheck) continue;
    ++made;
    const std::string witness = "instance " + std::to_string(k);
    const int n = f.size();
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
      const ElementSet set = MaskToSet(mask);
      const double base = f.Value(set);
      for (int e = 0; e < n; ++e) {
        if (mask >> e & 1) continue;
        const double diff = f.Value(WithElement(set, e)) - base;
        marginal.Record(std::abs(diff - f.MarginalGain(set, e)) <= 1e-12,
                        witness + " S=" + SetToString(set));
        // Replace e's channel copy in S by the unused copy e.
        for (int s : set) {
          if (f.ChannelOf(s) != f.ChannelOf(e)) continue;
          const ElementSet swapped = WithElement(WithoutElement(set, s), e);
          symmetry.Record(std::abs(f.Value(swapped) - base) <= 1e-12,
                          witness + " S=" + SetToString(set));
          break;
        }
      }
    }
    const PropertyReport report = CheckMonotoneSubmodular(f);
    submodular.Record(report.ok, witness + " " + report.detail);
    const double exact = TotalCurvature(f);
    const double upper = BudgetCurvatureBound(instance);
    bound.Record(exact <= upper + kTol,
                 witness + " " + Format({{"c_f", exact}, {"bound", upper}}));
  }
  BudgetInstance single;
  single.channels = {{0, 0.5, 2, 0.5}};
  single.customers = {{0, {0}}};
  const BudgetFunction f(single);
  const double exact = TotalCurvature(f);
  const double upper = BudgetCurvatureBound(single);
  tight.Record(std::abs(exact - 0.5) <= kTol && std::abs(upper - 0.5) <= kTol,
               Format({{"c_f", exact}, {"bound", upper}}));
  return {marginal, symmetry, submodular, bound, tight};
}

std::vector<CheckResult> MonotoneSubmodularSuite(uint64_t seed) {
  CheckResult property;
  property.name = "random-tables-monotone-submodular";
  CheckResult coverage;
  coverage.name = "coverage-monotone-submodular";
  CheckResult range;
  range.name = "curvature-in-unit-interval";
  CheckResult lemma;
  lemma.name = "linear-part-dominates";
  RngStream root(seed, 107);
  for (int k = 0; k < 50; ++k) {
    RngStream rng = root.Split(k);
    const int n = 1 + static_cast<int>(rng.Below(10));
    ExplicitFunction f(n, RandomSubmodularTable(n, rng));
    CoverageSpec spec;
    spec.n = n;
    const CoverageInstance cov = GenerateCoverage(spec, rng);
    CoverageFunction h(cov.item_weights, cov.covers);
    const std::string witness = "case " + std::to_string(k);
    const PropertyReport report = CheckMonotoneSubmodular(f);
    property.Record(report.ok, witness + " " + report.detail);
    const PropertyReport cov_report = CheckMonotoneSubmodular(h);
    coverage.Record(cov_report.ok, witness + " " + cov_report.detail);
    const double c_f = TotalCurvature(f);
    range.Record(c_f >= 0.0 && c_f <= 1.0, witness);
    std::vector<double> tail(n);
    const ElementSet all = FullSet(n);
    const double top = f.Value(all);
    for (int e = 0; e < n; ++e) {
      tail[e] = top - f.Value(WithoutElement(all, e));
    }
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
      const ElementSet set = MaskToSet(mask);
      double sum = 0.0;
      for (int e : set) sum += tail[e];
      lemma.Record(sum >= (1.0 - c_f) * f.Value(set) - kTol,
                   witness + " S=" + SetToString(set));
    }
  }
  return {property, coverage, range, lemma};
}

// Known-optimum runs on curvature-targeted coverage instances.
struct CoupledCase {
  std::shared_ptr<ExplicitFunction> f;
  std::vector<double> weights;
  Decomposition parts;
  std::unique_ptr<SubsetTable> table;
  KnownOptimumRun run;
};

std::vector<CoupledCase> CoupledCases(uint64_t seed, int count) {
  std::vector<CoupledCase> out;
  RngStream root(seed, 108);
  for (int k = 0; k < count; ++k) {
    RngStream rng = root.Split(k);
    CoverageSpec spec;
    spec.n = 8;
    const double target = 0.2 + 0.7 * k / std::max(1, count - 1);
    const CoverageInstance cov =
        GenerateCoverageWithCurvature(spec, target, rng);
    CoverageFunction h(cov.item_weights, cov.covers);
    const SubsetTable values(h);
    std::vector<double> table_values(size_t{1} << spec.n);
    for (uint64_t m = 0; m < table_values.size(); ++m) table_values[m] = values[m];
    CoupledCase c;
    c.f = std::make_shared<ExplicitFunction>(spec.n, table_values);
    c.weights = cov.weights;
    c.parts = Decompose(c.f, 0.25);
    c.table = std::make_unique<SubsetTable>(*c.parts.g);
    c.run = RunKnownOptimum(*c.parts.g, *c.table, *c.parts.l, c.weights, 0.25,
                            Estimation::kExact, seed + k);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CheckResult> PerStepSuite(uint64_t seed) {
  std::vector<CheckResult> out;
  for (const CoupledCase& c : CoupledCases(seed, 10)) {
    Merge(out, CheckPerStepLemmas(c.run, *c.table, *c.parts.l, c.weights));
  }
  return out;
}

std::vector<CheckResult> RoundingSuite(uint64_t seed) {
  CheckResult feasible;
  feasible.name = "rounding-feasible";
  CheckResult dominance;
  dominance.name = "large-part-weight-dominance";
  CheckResult tail;
  tail.name = "weight-tail-monotone";
  const auto cases = CoupledCases(seed, 10);
  for (size_t k = 0; k < cases.size(); ++k) {
    const CoupledCase& c = cases[k];
    if (!c.run.outcome.accepted) continue;
    const RoundingInput in = MakeRoundingInput(
        c.run.outcome.state, c.weights, c.run.classes.large,
        c.run.classes.small);
    const double large_weight = SetWeight(c.run.large_optimum, c.weights);
    const RngStream root(seed, 200 + k);
    for (int t = 0; t < 1000; ++t) {
      RngStream rng = root.Split(t);
      const RoundingDraw draw = RoundDetailed(in, rng);
      const std::string witness =
          "case " + std::to_string(k) + " trial " + std::to_string(t);
      feasible.Record(WithinBudget(SetWeight(draw.result, c.weights)), witness);
      dominance.Record(
          SetWeight(draw.large_part, c.weights) <= large_weight + kTol,
          witness);
    }
    const auto profile = WeightTailProfile(
        in, SetWeight(c.run.optimum, c.weights), 1000, root.Split(1u << 20));
    tail.Record(profile[2] <= profile[1] && profile[3] <= profile[2],
                "case " + std::to_string(k));
  }
  return {feasible, dominance, tail};
}

std::vector<CheckResult> RestrictedGridSuite(uint64_t seed) {
  CheckResult check;
  check.name = "small-guesses-within-restricted-grid";
  check.detail =
      "gamma_S^t >= (1 - eps)(1 - c_g) gamma_S^0 for the known-optimum "
      "guesses";
  for (const CoupledCase& c : CoupledCases(seed, 10)) {
    const auto& gammas = c.run.profile.gamma_small;
    const double eps = c.run.epsilon;
    for (size_t t = 1; t < gammas.size(); ++t) {
      const double floor = (1.0 - eps) * (1.0 - c.run.c_g) * gammas[0];
      check.Record(gammas[t] >= floor - kTol,
                   Format({{"t", static_cast<double>(t)},
                           {"gamma_t", gammas[t]},
                           {"gamma_0", gammas[0]},
                           {"c_g", c.run.c_g}}));
    }
  }
  return {check};
}

const std::map<std::string, std::function<std::vector<CheckResult>(uint64_t)>>&
Suites() {
  static const auto* suites = new std::map<
      std::string, std::function<std::vector<CheckResult>(uint64_t)>>{
      {"discretization-lemma", DiscretizationSuite},
      {"grid-coverage", GridCoverageSuite},
      {"decomposition", DecompositionSuite},
      {"estimator", EstimatorSuite},
      {"lp", LpSuite},
      {"budget-identities", BudgetSuite},
      {"monotone-submodular", MonotoneSubmodularSuite},
      {"per-step-lemmas", PerStepSuite},
      {"rounding-feasibility", RoundingSuite},
      {"restricted-grid", RestrictedGridSuite},
  };
  return *suites;
}

}  // namespace

std::vector<std::string> SuiteNames() {
  std::vector<std::string> out;
  for (const auto& [name, run] : Suites()) out.push_back(name);
  return out;
}

SuiteReport RunSuite(const std::string& name, uint64_t seed) {
  const auto it = Suites().find(name);
  if (it == Suites().end()) {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  SuiteReport report;
  report.suite = name;
  report.seed = seed;
  report.checks = it->second(seed);
  return report;
}

std::vector<CheckResult> CheckPerStepLemmas(const KnownOptimumRun& run,
                                            const SubsetTable& g_table,
                                            const LinearFunction& l,
                                            std::span<const double> weights) {
  CheckResult accepted;
  accepted.name = "accepted";
  CheckResult large_weight;
  large_weight.name = "large-weight";
  CheckResult small_gain;
  small_gain.name = "small-gain";
  CheckResult small_linear;
  small_linear.name = "small-linear";
  CheckResult small_weight;
  small_weight.name = "small-weight";
  CheckResult weight_step;
  weight_step.name = "weight-step";
  CheckResult total_weight;
  total_weight.name = "total-weight";
  CheckResult total_linear;
  total_linear.name = "total-linear";
  accepted.Record(run.outcome.accepted, run.outcome.rejection);
  const GreedyState& state = run.outcome.state;
  const double eps = run.epsilon;
  const double d = run.d;
  const double w_opt = SetWeight(run.optimum, weights);
  const double w_small = SetWeight(run.small_optimum, weights);
  const double l_small = l.Value(run.small_optimum);
  const uint64_t small_mask = SetToMask(run.small_optimum);
  for (int t = 0; t < state.steps_done; ++t) {
    const std::string step = "step " + std::to_string(t);
    double step_weight = 0.0;
    for (int i = 0; i < state.m; ++i) {
      const int picked = state.picks[t][i];
      const int target = run.large_optimum[i];
      step_weight += eps * weights[picked];
      large_weight.Record(weights[picked] <= weights[target] + kTol,
                          step + " copy " + std::to_string(i));
    }
    const std::vector<double>& v = state.v_history[t];
    const std::vector<double> x = state.CollapsedAt(t, state.m);
    const std::vector<double> marginals = g_table.ExpectedMarginals(x);
    double gain = 0.0, linear = 0.0, weight = 0.0;
    for (size_t e = 0; e < v.size(); ++e) {
      gain += v[e] * marginals[e];
      linear += v[e] * l.coefficient(static_cast<int>(e));
      weight += v[e] * weights[e];
    }
    const double small_target = g_table.ExpectedSetMarginal(x, small_mask);
    small_gain.Record(
        gain >= std::pow(1.0 - eps, 3) * small_target - 3.0 * eps * d - kTol,
        step + " " + Format({{"gain", gain}, {"target", small_target}}));
    small_linear.Record(linear >= (1.0 - eps) * l_small - eps * d - kTol,
                        step + " " + Format({{"L(v)", linear}}));
    small_weight.Record(weight <= w_small + kTol,
                        step + " " + Format({{"W(v)", weight},
                                             {"w(O_S)", w_small}}));
    step_weight += eps * weight;
    weight_step.Record(step_weight <= eps * w_opt + kTol,
                       step + " " + Format({{"dW", step_weight}}));
  }
  if (run.outcome.accepted) {
    const double w_x = state.CopiedWeight(weights);
    total_weight.Record(w_x <= w_opt + kTol,
                        Format({{"W(x)", w_x}, {"w(O)", w_opt}}));
    const double l_x = state.CopiedLinear(l);
    total_linear.Record(
        l_x >= (1.0 - eps) * run.l_optimum - 2.0 * eps * d - kTol,
        Format({{"L(x)", l_x}, {"l(O)", run.l_optimum}}));
  }
  return {accepted,     large_weight, small_gain,  small_linear,
          small_weight, weight_step,  total_weight, total_linear};
}

}  // namespace curvknap
