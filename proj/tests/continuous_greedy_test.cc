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

#include <cmath>
#include <memory>
#include <vector>

#include "curvknap/continuous_greedy.h"
#include "curvknap/decomposition.h"
#include "curvknap/generators.h"
#include "curvknap/knapsack.h"
#include "curvknap/rng.h"
#include "curvknap/verify.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace curvknap {
namespace {

TEST(ContinuousGreedyTest, IterationCount) {
  EXPECT_EQ(IterationCount(0.25), 4);
  EXPECT_EQ(IterationCount(0.1), 10);
  EXPECT_THROW(IterationCount(0.3), std::invalid_argument);
  EXPECT_DOUBLE_EQ(NormalizeEpsilon(0.3), 0.25);
  EXPECT_DOUBLE_EQ(NormalizeEpsilon(0.5), 0.5);
}

TEST(ContinuousGreedyTest, CollapseExamples) {
  const std::vector<double> z = {0.2, 0.0, 0.7};
  const std::vector<double> same = CollapseCopies({}, z);
  for (int e = 0; e < 3; ++e) EXPECT_NEAR(same[e], z[e], 1e-15);
  const std::vector<std::vector<double>> two = {{0.5, 0, 0}, {0.5, 0, 0}};
  EXPECT_DOUBLE_EQ(CollapseCopies(two, std::vector<double>(3, 0.0))[0], 0.75);
  const std::vector<std::vector<double>> one = {{0.25, 0, 0}};
  const std::vector<double> x = CollapseCopies(one, std::vector<double>(3));
  EXPECT_DOUBLE_EQ(x[0], 0.25);
  EXPECT_DOUBLE_EQ(x[1], 0.0);
}

TEST(ContinuousGreedyTest, SmallElementsTrivialGuess) {
  ExplicitFunction g(2, {0, 1, 1, 1.5});
  SubsetTable table(g);
  LinearFunction l({0.3, 0.4});
  const std::vector<double> w = {0.5, 0.5};
  GreedyInputs in;
  in.g = &g;
  in.g_table = &table;
  in.l = &l;
  in.weights = w;
  in.small = {0, 1};
  in.epsilon = 0.5;
  in.delta = 0.5;
  in.d = 1.0;
  RngStream rng(1, 0);
  const SmallElementsResult r =
      SmallElements(in, 0.0, 0.0, std::vector<double>{0, 0}, 0.25, rng);
  ASSERT_TRUE(r.feasible);
  EXPECT_DOUBLE_EQ(r.v[0], 0.0);
  EXPECT_DOUBLE_EQ(r.v[1], 0.0);
}

TEST(ContinuousGreedyTest, LinearOnlySmallRun) {
  ExplicitFunction g(3, std::vector<double>(8, 0.0));
  SubsetTable table(g);
  LinearFunction l({0.3, 0.5, 0.2});
  const std::vector<double> w = {0.4, 0.3, 0.5};
  GreedyInputs in;
  in.g = &g;
  in.g_table = &table;
  in.l = &l;
  in.weights = w;
  in.small = {0, 1, 2};
  in.epsilon = 0.25;
  in.delta = 0.25;
  in.d = 0.5;
  GuessProfile p;
  p.gamma_small.assign(4, 0.0);
  p.lambda_small = 0.5;
  FixedGuessPolicy policy(p);
  RngStream rng(2, 0);
  const GreedyOutcome out = GuessingContinuousGreedy(in, policy, rng);
  ASSERT_TRUE(out.accepted) << out.rejection;
  ASSERT_EQ(out.state.v_history.size(), 4u);
  for (int e = 0; e < 3; ++e) {
    double sum = 0.0;
    for (const auto& v : out.state.v_history) sum += 0.25 * v[e];
    EXPECT_NEAR(out.state.z[e], sum, 1e-12);
  }
  for (const auto& v : out.state.v_history) {
    double lv = 0.0;
    for (int e = 0; e < 3; ++e) lv += l.coefficient(e) * v[e];
    EXPECT_GE(lv, 0.5 - 1e-9);
  }
  EXPECT_GE(l.Extension(out.state.z), 0.5 - 1e-9);
}

TEST(ContinuousGreedyTest, InfeasibleSmallGuessRejects) {
  ExplicitFunction g(2, std::vector<double>(4, 0.0));
  SubsetTable table(g);
  LinearFunction l({0.3, 0.4});
  const std::vector<double> w = {0.5, 0.5};
  GreedyInputs in;
  in.g = &g;
  in.g_table = &table;
  in.l = &l;
  in.weights = w;
  in.small = {0, 1};
  in.epsilon = 0.5;
  in.delta = 0.5;
  in.d = 0.4;
  GuessProfile p;
  p.gamma_small.assign(2, 0.0);
  p.lambda_small = 5.0;
  FixedGuessPolicy policy(p);
  RngStream rng(3, 0);
  const GreedyOutcome out = GuessingContinuousGreedy(in, policy, rng);
  EXPECT_FALSE(out.accepted);
  EXPECT_EQ(out.rejection, "small-lp-infeasible");
}

struct Coupled {
  CoverageInstance instance;
  std::shared_ptr<CoverageFunction> f;
  Decomposition d;
  std::unique_ptr<SubsetTable> table;
};

Coupled MakeCoupled(uint64_t seed, double curvature) {
  Coupled c;
  RngStream rng(seed, 0);
  CoverageSpec spec;
  spec.n = 8;
  c.instance = GenerateCoverageWithCurvature(spec, curvature, rng);
  c.f = std::make_shared<CoverageFunction>(c.instance.item_weights,
                                           c.instance.covers);
  c.d = Decompose(c.f, 0.25);
  c.table = std::make_unique<SubsetTable>(*c.d.g);
  return c;
}

TEST(ContinuousGreedyPropertyTest, KnownOptimumGuessesAreGood) {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    Coupled c = MakeCoupled(seed, 0.3 + 0.1 * seed);
    const KnownOptimumRun run =
        RunKnownOptimum(*c.d.g, *c.table, *c.d.l, c.instance.weights, 0.25,
                        Estimation::kExact, seed);
    ASSERT_TRUE(run.outcome.accepted) << run.outcome.rejection;
    const int steps = IterationCount(run.epsilon);
    for (int t = 0; t < steps; ++t) {
      for (int i = 0; i < run.m; ++i) {
        const double target = run.large_targets[t][i];
        const double guess = run.profile.gamma_large[t][i];
        EXPECT_LE(guess, target + 1e-12);
        EXPECT_GE(guess, (1 - run.epsilon) * target -
                             run.epsilon * run.d / run.m - 1e-12);
      }
    }
    // W(x) <= w(O) on the copied point.
    EXPECT_LE(run.outcome.state.CopiedWeight(c.instance.weights),
              SetWeight(run.optimum, c.instance.weights) + 1e-9);
    for (const CheckResult& check :
         CheckPerStepLemmas(run, *c.table, *c.d.l, c.instance.weights)) {
      EXPECT_TRUE(check.passed()) << check.name << " " << check.detail;
    }
  }
}

TEST(ContinuousGreedyPropertyTest, SampledModeStaysWithinBudget) {
  Coupled c = MakeCoupled(42, 0.5);
  const KnownOptimumRun run =
      RunKnownOptimum(*c.d.g, *c.table, *c.d.l, c.instance.weights, 0.25,
                      Estimation::kSampled, 42);
  if (run.outcome.accepted) {
    EXPECT_LE(run.outcome.state.CopiedWeight(c.instance.weights),
              SetWeight(run.optimum, c.instance.weights) + 1e-9);
  }
  const std::vector<double> x = run.outcome.state.Collapsed();
  for (double v : x) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

}  // namespace
}  // namespace curvknap
