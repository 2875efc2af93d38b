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
#include <vector>

#include "curvknap/box_lp.h"
#include "curvknap/rng.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace curvknap {
namespace {

BoxLp2 TwoElementLp() {
  BoxLp2 lp;
  lp.support = {0, 1};
  lp.cost = {1, 1};
  lp.row1 = {1, 0};
  lp.bound1 = 0.5;
  lp.row2 = {0, 1};
  lp.bound2 = 0.5;
  return lp;
}

TEST(BoxLpTest, InactiveConstraints) {
  BoxLp2 lp = TwoElementLp();
  lp.bound1 = -1.0;
  lp.bound2 = 0.0;
  const BoxLpResult r = SolveBoxLp(lp);
  ASSERT_TRUE(r.feasible);
  EXPECT_DOUBLE_EQ(r.objective, 0.0);
  EXPECT_DOUBLE_EQ(r.v[0], 0.0);
  EXPECT_DOUBLE_EQ(r.v[1], 0.0);
}

TEST(BoxLpTest, SplitExample) {
  const BoxLpResult r = SolveBoxLp(TwoElementLp());
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.v[0], 0.5, 1e-9);
  EXPECT_NEAR(r.v[1], 0.5, 1e-9);
  EXPECT_NEAR(r.objective, 1.0, 1e-9);
}

TEST(BoxLpTest, CheapestElementExample) {
  BoxLp2 lp;
  lp.support = {0, 1};
  lp.cost = {1, 2};
  lp.row1 = {1, 1};
  lp.bound1 = 1.0;
  lp.row2 = {1, 1};
  lp.bound2 = 1.0;
  const BoxLpResult r = SolveBoxLp(lp);
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.v[0], 1.0, 1e-9);
  EXPECT_NEAR(r.v[1], 0.0, 1e-9);
  EXPECT_NEAR(r.objective, 1.0, 1e-9);
}

TEST(BoxLpTest, Infeasible) {
  BoxLp2 lp = TwoElementLp();
  lp.bound1 = 2.0;
  EXPECT_FALSE(SolveBoxLp(lp).feasible);
  EXPECT_FALSE(SolveBoxLpSimplex(lp).feasible);
}

TEST(BoxLpTest, RejectsNegativeCoefficients) {
  BoxLp2 lp = TwoElementLp();
  lp.cost[0] = -1.0;
  EXPECT_THROW(SolveBoxLp(lp), std::invalid_argument);
}

TEST(DenseLpTest, SmallProblem) {
  // min -x - y s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0.
  DenseLp lp;
  lp.c = {-1, -1};
  lp.a = {{1, 2}, {3, 1}};
  lp.b = {4, 6};
  lp.sense = {ConstraintSense::kLessEqual, ConstraintSense::kLessEqual};
  const DenseLpResult r = SolveDenseLp(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, -2.8, 1e-9);
}

TEST(DenseLpTest, Unbounded) {
  DenseLp lp;
  lp.c = {-1};
  lp.a = {{1}};
  lp.b = {1};
  lp.sense = {ConstraintSense::kGreaterEqual};
  EXPECT_EQ(SolveDenseLp(lp).status, LpStatus::kUnbounded);
}

BoxLp2 RandomLp(RngStream& rng) {
  BoxLp2 lp;
  const int n = 8;
  const int k = 1 + static_cast<int>(rng.Below(6));
  for (int e = 0; e < n; ++e) {
    if (static_cast<int>(lp.support.size()) < k && rng.Bernoulli(0.7)) {
      lp.support.push_back(e);
    }
  }
  if (lp.support.empty()) lp.support.push_back(0);
  lp.cost.resize(n);
  lp.row1.resize(n);
  lp.row2.resize(n);
  double s1 = 0.0, s2 = 0.0;
  for (int e = 0; e < n; ++e) {
    lp.cost[e] = rng.Bernoulli(0.1) ? 0.0 : rng.Uniform();
    lp.row1[e] = rng.Bernoulli(0.2) ? 0.0 : rng.Uniform();
    lp.row2[e] = rng.Bernoulli(0.2) ? 0.0 : rng.Uniform();
  }
  for (int e : lp.support) {
    s1 += lp.row1[e];
    s2 += lp.row2[e];
  }
  lp.bound1 = (rng.Uniform() * 1.2 - 0.1) * s1;
  lp.bound2 = (rng.Uniform() * 1.2 - 0.1) * s2;
  return lp;
}

TEST(BoxLpPropertyTest, MatchesVertexEnumeration) {
  RngStream rng(31, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const BoxLp2 lp = RandomLp(rng);
    const testing::LpOracleResult oracle = testing::OracleBoxLp(lp);
    const BoxLpResult fast = SolveBoxLp(lp);
    const BoxLpResult simplex = SolveBoxLpSimplex(lp);
    ASSERT_EQ(fast.feasible, oracle.feasible) << "trial " << trial;
    ASSERT_EQ(simplex.feasible, oracle.feasible) << "trial " << trial;
    if (!oracle.feasible) continue;
    EXPECT_NEAR(fast.objective, oracle.objective, 1e-6);
    EXPECT_NEAR(simplex.objective, oracle.objective, 1e-6);
    double r1 = 0.0, r2 = 0.0;
    for (int e : lp.support) {
      EXPECT_GE(fast.v[e], -1e-8);
      EXPECT_LE(fast.v[e], 1.0 + 1e-8);
      r1 += lp.row1[e] * fast.v[e];
      r2 += lp.row2[e] * fast.v[e];
    }
    EXPECT_GE(r1, lp.bound1 - 1e-8);
    EXPECT_GE(r2, lp.bound2 - 1e-8);
  }
}

}  // namespace
}  // namespace curvknap
