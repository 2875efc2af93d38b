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

#include "curvknap/knapsack.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace curvknap {

namespace {

constexpr uint64_t kGreedyStream = 1;
constexpr uint64_t kRoundingStream = 2;
constexpr int kMaxBruteForce = 20;

double SnapUpClamped(const ValueGrid& grid, double v) {
  if (v >= grid.top) return grid.values.front();
  return grid.SnapUp(v);
}

double SafeCurvature(const SetFunction& f) {
  try {
    return TotalCurvature(f);
  } catch (const std::domain_error&) {
    return 1.0;
  }
}

ElementSet Intersect(std::span<const int> a, std::span<const int> b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

// Ratio greedy from `start` until no remaining element fits.
ElementSet CompleteByRatio(const SetFunction& f,
                           std::span<const double> weights, ElementSet start) {
  const int n = f.size();
  ElementSet set = std::move(start);
  double value = f.Value(set);
  double weight = SetWeight(set, weights);
  while (true) {
    int best = -1;
    double best_ratio = 0.0;
    double best_value = 0.0;
    for (int e = 0; e < n; ++e) {
      if (Contains(set, e) || !WithinBudget(weight + weights[e])) continue;
      const double next = f.Value(WithElement(set, e));
      const double gain = next - value;
      const double ratio = weights[e] > 0.0
                               ? gain / weights[e]
                               : std::numeric_limits<double>::infinity();
      if (best < 0 || ratio > best_ratio) {
        best = e;
        best_ratio = ratio;
        best_value = next;
      }
    }
    if (best < 0) break;
    set = WithElement(set, best);
    value = best_value;
    weight += weights[best];
  }
  return set;
}

RunReport FinishReport(const SetFunction& f, std::span<const double> weights,
                       ElementSet set, std::string algorithm,
                       uint64_t calls_before) {
  RunReport report;
  report.objective = f.Value(set);
  report.weight = SetWeight(set, weights);
  report.set = std::move(set);
  report.algorithm = std::move(algorithm);
  report.mode = "deterministic";
  report.diagnostics.oracle_calls = f.eval_count() - calls_before;
  return report;
}

// Keeps the best candidate by g + l; ties go to the lexicographically
// smaller set.
struct CandidatePool {
  ElementSet best;
  double best_value = -std::numeric_limits<double>::infinity();
  GreedyState owned_state;
  bool has_state = false;

  void Offer(const SetFunction& g, const LinearFunction& l, ElementSet set,
             const GreedyState* state) {
    const double value = g.Value(set) + l.Value(set);
    if (value > best_value || (value == best_value && set < best)) {
      best_value = value;
      best = std::move(set);
      if (state != nullptr) {
        owned_state = *state;
        has_state = true;
      }
    }
  }
};

void FillStateDiagnostics(const GreedyState& state, const SubsetTable* table,
                          const LinearFunction& l,
                          std::span<const double> weights,
                          RunDiagnostics& diag) {
  if (table != nullptr) diag.g_hat = table->Multilinear(state.Collapsed());
  diag.l_x = state.CopiedLinear(l);
  diag.w_x = state.CopiedWeight(weights);
}

}  // namespace

std::string GuessModeName(GuessMode mode) {
  switch (mode) {
    case GuessMode::kEnumerate:
      return "enumerate";
    case GuessMode::kKnownOptimum:
      return "known-O";
    case GuessMode::kHeuristic:
      return "heuristic";
  }
  return "unknown";
}

std::string EstimationName(Estimation estimation) {
  return estimation == Estimation::kExact ? "exact" : "sampled";
}

nlohmann::json ToJson(const RunReport& report) {
  auto optional = [](const auto& value) -> nlohmann::json {
    if (value.has_value()) return *value;
    return nullptr;
  };
  const RunDiagnostics& d = report.diagnostics;
  nlohmann::json diag = {
      {"epsilon", d.epsilon},
      {"c_f", optional(d.c_f)},
      {"c_g", optional(d.c_g)},
      {"v_g", optional(d.v_g)},
      {"v_l", optional(d.v_l)},
      {"m", optional(d.m)},
      {"g_hat_x", optional(d.g_hat)},
      {"l_x", optional(d.l_x)},
      {"w_x", optional(d.w_x)},
      {"profiles_tried", d.profiles_tried},
      {"profiles_rejected", d.profiles_rejected},
      {"oracle_calls", d.oracle_calls},
      {"guarantee", d.guarantee},
  };
  return {
      {"set", report.set},
      {"objective", report.objective},
      {"weight", report.weight},
      {"feasible", WithinBudget(report.weight)},
      {"algorithm", report.algorithm},
      {"mode", report.mode},
      {"seed", report.seed},
      {"diagnostics", diag},
  };
}

std::string CsvHeader() {
  return "instance-id,algorithm,mode,seed,objective,weight,oracle-calls,"
         "wall-time-ms";
}

std::string CsvRow(const std::string& instance_id, const RunReport& report) {
  char numbers[128];
  std::snprintf(numbers, sizeof(numbers), "%.17g,%.17g,%llu,%.3f",
                report.objective, report.weight,
                static_cast<unsigned long long>(
                    report.diagnostics.oracle_calls),
                report.wall_time_ms);
  return instance_id + "," + report.algorithm + "," + report.mode + "," +
         std::to_string(report.seed) + "," + numbers;
}

SumFunction::SumFunction(const SetFunction& g, const SetFunction& l)
    : SetFunction(g.size()), g_(g), l_(l) {
  if (g.size() != l.size()) throw std::invalid_argument("size mismatch");
}

double SumFunction::Evaluate(std::span<const int> set) const {
  return g_.Value(set) + l_.Value(set);
}

RunReport BruteForce(const SetFunction& f, std::span<const double> weights) {
  const int n = f.size();
  if (n > kMaxBruteForce) {
    throw CapabilityError("brute force supports n <= 20");
  }
  ValidateWeights(weights, n);
  const uint64_t before = f.eval_count();
  uint64_t best_mask = 0;
  double best_value = f.Value({});
  for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
    const ElementSet set = MaskToSet(mask);
    if (!WithinBudget(SetWeight(set, weights))) continue;
    const double value = f.Value(set);
    if (value > best_value) {
      best_value = value;
      best_mask = mask;
    }
  }
  return FinishReport(f, weights, MaskToSet(best_mask), "brute", before);
}

uint64_t BruteForceMask(const SubsetTable& table, std::span<const double> l,
                        std::span<const double> weights) {
  const int n = table.size();
  uint64_t best_mask = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    double weight = 0.0;
    double linear = 0.0;
    for (int e = 0; e < n; ++e) {
      if (mask >> e & 1) {
        weight += weights[e];
        linear += l.empty() ? 0.0 : l[e];
      }
    }
    if (!WithinBudget(weight)) continue;
    const double value = table[mask] + linear;
    if (value > best_value) {
      best_value = value;
      best_mask = mask;
    }
  }
  return best_mask;
}

RunReport GreedyCostBenefit(const SetFunction& f,
                            std::span<const double> weights) {
  const int n = f.size();
  ValidateWeights(weights, n);
  const uint64_t before = f.eval_count();
  ElementSet best = CompleteByRatio(f, weights, {});
  double best_value = f.Value(best);
  for (int e = 0; e < n; ++e) {
    if (!WithinBudget(weights[e])) continue;
    const double value = f.Value(ElementSet{e});
    if (value > best_value) {
      best_value = value;
      best = {e};
    }
  }
  return FinishReport(f, weights, std::move(best), "greedy", before);
}

RunReport SviridenkoGreedy(const SetFunction& f,
                           std::span<const double> weights) {
  const int n = f.size();
  ValidateWeights(weights, n);
  const uint64_t before = f.eval_count();
  ElementSet best;
  double best_value = -std::numeric_limits<double>::infinity();
  auto consider = [&](ElementSet seed) {
    if (!WithinBudget(SetWeight(seed, weights))) return;
    ElementSet completed = CompleteByRatio(f, weights, std::move(seed));
    const double value = f.Value(completed);
    if (value > best_value) {
      best_value = value;
      best = std::move(completed);
    }
  };
  consider({});
  for (int a = 0; a < n; ++a) consider({a});
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) consider({a, b});
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) consider({a, b, c});
    }
  }
  return FinishReport(f, weights, std::move(best), "sviridenko", before);
}

KnownOptimumRun RunKnownOptimum(const SetFunction& g, const SubsetTable& table,
                                const LinearFunction& l,
                                std::span<const double> weights,
                                double epsilon, Estimation estimation,
                                uint64_t seed) {
  const int n = g.size();
  if (n > kMaxExhaustiveCheck) {
    throw CapabilityError("known-O mode needs n <= 12");
  }
  const int steps = IterationCount(epsilon);
  KnownOptimumRun run;
  run.epsilon = epsilon;
  run.d = ComputeSingletonMaxima(g, l).d_gl;
  run.c_g = SafeCurvature(g);
  const uint64_t mask = BruteForceMask(table, l.coefficients(), weights);
  run.optimum = MaskToSet(mask);
  run.g_optimum = table[mask];
  run.l_optimum = l.Value(run.optimum);

  const ValueGrid grid = BuildGrid(epsilon, n, run.d);
  run.v_g = SnapUpClamped(grid, run.g_optimum);
  run.v_l = SnapUpClamped(grid, run.l_optimum);
  run.classes = ClassifyElements(g, l, run.v_g, run.v_l, epsilon);
  run.large_optimum = Intersect(run.optimum, run.classes.large);
  run.small_optimum = Intersect(run.optimum, run.classes.small);
  run.m = static_cast<int>(run.large_optimum.size());
  run.large_bound =
      run.c_g < 1.0 ? LargeElementCountBound(run.c_g, epsilon) : -1;

  KnownOptimumGuessPolicy policy(
      table, l.coefficients(), run.large_optimum, run.small_optimum,
      PerCopyGrid(epsilon, std::max(run.m, 1), run.d), grid, steps);
  GreedyInputs in;
  in.g = &g;
  in.g_table = &table;
  in.l = &l;
  in.weights = weights;
  in.large = run.classes.large;
  in.small = run.classes.small;
  in.m = run.m;
  in.epsilon = epsilon;
  in.delta = epsilon;
  in.d = run.d;
  in.estimation = estimation;
  RngStream rng(seed, kGreedyStream);
  run.outcome = GuessingContinuousGreedy(in, policy, rng);
  run.profile = policy.profile();
  run.large_targets = policy.large_targets();
  run.small_targets = policy.small_targets();
  return run;
}

namespace {

GreedyInputs BaseInputs(const SetFunction& g, const SubsetTable* table,
                        const LinearFunction& l,
                        std::span<const double> weights, double epsilon,
                        double d, Estimation estimation) {
  GreedyInputs in;
  in.g = &g;
  in.g_table = table;
  in.l = &l;
  in.weights = weights;
  in.epsilon = epsilon;
  in.delta = epsilon;
  in.d = d;
  in.estimation = estimation;
  return in;
}

void RunEnumerate(const SetFunction& g, const SubsetTable* table,
                  const LinearFunction& l, std::span<const double> weights,
                  double eps, const DriverOptions& options,
                  CandidatePool& pool, RunDiagnostics& diag) {
  const int n = g.size();
  const int steps = IterationCount(eps);
  const double d = ComputeSingletonMaxima(g, l).d_gl;
  const double c_g = SafeCurvature(g);
  diag.c_g = c_g;
  const int64_t bound = c_g < 1.0 ? LargeElementCountBound(c_g, eps) : n;
  const ValueGrid grid = BuildGrid(eps, n, d);

  struct Cell {
    double v_g;
    double v_l;
    ElementClassification classes;
    int m;
    GuessProfileEnumerator profiles;
  };
  std::vector<Cell> cells;
  uint64_t total = 0;
  for (double v_g : grid.values) {
    for (double v_l : grid.values) {
      ElementClassification classes = ClassifyElements(g, l, v_g, v_l, eps);
      const int top = static_cast<int>(std::min<int64_t>(
          bound, static_cast<int64_t>(classes.large.size())));
      for (int m = 0; m <= top; ++m) {
        GuessProfileEnumerator profiles(
            v_g, v_l, m, steps, PerCopyGrid(eps, std::max(m, 1), d), grid,
            c_g);
        total = SaturatingAdd(total, profiles.size());
        cells.push_back({v_g, v_l, classes, m, std::move(profiles)});
      }
    }
  }
  if (total > options.profile_budget) {
    throw CapabilityError(
        "enumerate mode needs " + std::to_string(total) +
        " guess profiles, over the budget of " +
        std::to_string(options.profile_budget) +
        "; use --mode known-O or --mode heuristic");
  }
  const RngStream greedy_root(options.seed, kGreedyStream);
  const RngStream rounding_root(options.seed, kRoundingStream);
  uint64_t counter = 0;
  for (const Cell& cell : cells) {
    GreedyInputs in =
        BaseInputs(g, table, l, weights, eps, d, options.estimation);
    in.large = cell.classes.large;
    in.small = cell.classes.small;
    in.m = cell.m;
    for (uint64_t k = 0; k < cell.profiles.size(); ++k, ++counter) {
      FixedGuessPolicy policy(cell.profiles.At(k));
      RngStream rng = greedy_root.Split(counter);
      GreedyOutcome outcome = GuessingContinuousGreedy(in, policy, rng);
      ++diag.profiles_tried;
      if (!outcome.accepted) {
        ++diag.profiles_rejected;
        continue;
      }
      RngStream round_rng = rounding_root.Split(counter);
      const RoundingInput rin = MakeRoundingInput(
          outcome.state, weights, cell.classes.large, cell.classes.small);
      const double before = pool.best_value;
      pool.Offer(g, l, Round(rin, round_rng), &outcome.state);
      if (pool.best_value > before) {
        diag.v_g = cell.v_g;
        diag.v_l = cell.v_l;
        diag.m = cell.m;
      }
    }
  }
}

void RunHeuristic(const SetFunction& g, const SubsetTable* table,
                  const LinearFunction& l, std::span<const double> weights,
                  double eps, const DriverOptions& options,
                  CandidatePool& pool, RunDiagnostics& diag) {
  const int n = g.size();
  const int steps = IterationCount(eps);
  const double d = ComputeSingletonMaxima(g, l).d_gl;
  const double c_g = SafeCurvature(g);
  diag.c_g = c_g;
  diag.guarantee = false;
  SumFunction h(g, l);
  const ElementSet warm = GreedyCostBenefit(h, weights).set;
  const ValueGrid grid = BuildGrid(eps, n, d);
  const double v_g = SnapUpClamped(grid, g.Value(warm));
  const double v_l = SnapUpClamped(grid, l.Value(warm));
  const ElementClassification classes =
      ClassifyElements(g, l, v_g, v_l, eps);
  const ElementSet warm_large = Intersect(warm, classes.large);
  const ElementSet warm_small = Intersect(warm, classes.small);
  const int m = static_cast<int>(warm_large.size());
  diag.v_g = v_g;
  diag.v_l = v_l;
  diag.m = m;
  const ValueGrid per_copy = PerCopyGrid(eps, std::max(m, 1), d);
  const double decay = std::max(1.0 - c_g, eps);
  const double empty_value = g.Value({});
  const double small_g = g.Value(warm_small) - empty_value;
  const double small_l = l.Value(warm_small);

  GreedyInputs in = BaseInputs(g, table, l, weights, eps, d, options.estimation);
  in.large = classes.large;
  in.small = classes.small;
  in.m = m;
  const RngStream greedy_root(options.seed, kGreedyStream);
  const RngStream rounding_root(options.seed, kRoundingStream);
  const double scales[] = {1.0, 0.5, 0.25, 0.0};
  uint64_t counter = 0;
  for (double scale : scales) {
    GuessProfile profile;
    profile.v_g = v_g;
    profile.v_l = v_l;
    profile.m = m;
    profile.gamma_large.assign(steps, std::vector<double>(m, 0.0));
    profile.gamma_small.assign(steps, 0.0);
    profile.lambda_large.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
      const ElementSet single{warm_large[i]};
      profile.lambda_large[i] = per_copy.SnapDown(scale * l.Value(single));
      const double start = scale * (g.Value(single) - empty_value);
      for (int t = 0; t < steps; ++t) {
        profile.gamma_large[t][i] = per_copy.SnapDown(
            start * std::pow(decay, static_cast<double>(t) / steps));
      }
    }
    for (int t = 0; t < steps; ++t) {
      profile.gamma_small[t] = grid.SnapDown(
          scale * small_g * std::pow(decay, static_cast<double>(t) / steps));
    }
    profile.lambda_small = grid.SnapDown(scale * small_l);
    FixedGuessPolicy policy(profile);
    RngStream rng = greedy_root.Split(counter);
    GreedyOutcome outcome = GuessingContinuousGreedy(in, policy, rng);
    ++diag.profiles_tried;
    if (!outcome.accepted) {
      ++diag.profiles_rejected;
      ++counter;
      continue;
    }
    RngStream round_rng = rounding_root.Split(counter);
    const RoundingInput rin =
        MakeRoundingInput(outcome.state, weights, classes.large, classes.small);
    pool.Offer(g, l, Round(rin, round_rng), &outcome.state);
    break;
  }
}

}  // namespace

RunReport KnapsackCurvature(const SetFunction& g, const LinearFunction& l,
                            std::span<const double> weights, double epsilon,
                            const DriverOptions& options) {
  const auto start_time = std::chrono::steady_clock::now();
  const int n = g.size();
  if (l.size() != n) throw std::invalid_argument("g and l sizes differ");
  ValidateWeights(weights, n);
  const double eps = NormalizeEpsilon(epsilon);
  const bool needs_table = options.estimation == Estimation::kExact ||
                           options.guess == GuessMode::kKnownOptimum;
  if (needs_table && n > kMaxExhaustiveCheck) {
    throw CapabilityError(
        "exact estimation and known-O mode need n <= 12; use --mode sampled "
        "with --mode heuristic");
  }
  const uint64_t before = g.eval_count() + l.eval_count();
  std::unique_ptr<SubsetTable> table;
  if (needs_table) table = std::make_unique<SubsetTable>(g);

  RunReport report;
  report.algorithm = "curvature";
  report.mode =
      GuessModeName(options.guess) + "/" + EstimationName(options.estimation);
  report.seed = options.seed;
  RunDiagnostics& diag = report.diagnostics;
  diag.epsilon = eps;
  CandidatePool pool;
  pool.Offer(g, l, {}, nullptr);
  const SubsetTable* exact_table =
      options.estimation == Estimation::kExact ? table.get() : nullptr;

  switch (options.guess) {
    case GuessMode::kKnownOptimum: {
      KnownOptimumRun run = RunKnownOptimum(g, *table, l, weights, eps,
                                            options.estimation, options.seed);
      diag.c_g = run.c_g;
      diag.v_g = run.v_g;
      diag.v_l = run.v_l;
      diag.m = run.m;
      diag.profiles_tried = 1;
      if (run.outcome.accepted) {
        RngStream rng(options.seed, kRoundingStream);
        const RoundingInput rin =
            MakeRoundingInput(run.outcome.state, weights, run.classes.large,
                              run.classes.small);
        pool.Offer(g, l, Round(rin, rng), &run.outcome.state);
        FillStateDiagnostics(run.outcome.state, table.get(), l, weights, diag);
      } else {
        diag.profiles_rejected = 1;
      }
      break;
    }
    case GuessMode::kEnumerate:
      RunEnumerate(g, exact_table, l, weights, eps, options, pool, diag);
      break;
    case GuessMode::kHeuristic:
      RunHeuristic(g, exact_table, l, weights, eps, options, pool, diag);
      break;
  }
  if (pool.has_state && !diag.l_x.has_value()) {
    FillStateDiagnostics(pool.owned_state, table.get(), l, weights, diag);
  }
  report.set = pool.best;
  report.weight = SetWeight(report.set, weights);
  report.objective = g.Value(report.set) + l.Value(report.set);
  diag.oracle_calls = g.eval_count() + l.eval_count() - before;
  report.wall_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start_time)
                            .count();
  return report;
}

bool PrefersEnumerationGreedy(double c_f, double epsilon) {
  return c_f >= 1.0 - std::numbers::e * epsilon;
}

RunReport CurvaturePath(std::shared_ptr<const SetFunction> f,
                        std::span<const double> weights, double epsilon,
                        const DriverOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  const auto start_time = std::chrono::steady_clock::now();
  ValidateWeights(weights, f->size());
  const uint64_t before = f->eval_count();
  const Decomposition parts = Decompose(f, epsilon);
  RunReport report =
      KnapsackCurvature(*parts.g, *parts.l, weights, epsilon / 2.0, options);
  report.objective = f->Value(report.set);
  report.diagnostics.c_f = parts.c_f;
  report.diagnostics.oracle_calls = f->eval_count() - before;
  report.wall_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start_time)
                            .count();
  return report;
}

RunReport Dispatch(std::shared_ptr<const SetFunction> f,
                   std::span<const double> weights, double epsilon,
                   const DriverOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  const auto start_time = std::chrono::steady_clock::now();
  ValidateWeights(weights, f->size());
  const uint64_t before = f->eval_count();
  const double c_f = TotalCurvature(*f);
  RunReport report;
  if (PrefersEnumerationGreedy(c_f, epsilon)) {
    report = SviridenkoGreedy(*f, weights);
    report.algorithm = "dispatch:sviridenko";
    report.diagnostics.epsilon = epsilon;
  } else {
    report = CurvaturePath(f, weights, epsilon, options);
    report.algorithm = "dispatch:curvature";
  }
  report.seed = options.seed;
  report.diagnostics.c_f = c_f;
  report.diagnostics.oracle_calls = f->eval_count() - before;
  report.wall_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start_time)
                            .count();
  return report;
}

}  // namespace curvknap
