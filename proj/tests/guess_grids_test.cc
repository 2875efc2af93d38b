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

#include "curvknap/generators.h"
#include "curvknap/guess_grids.h"
#include "curvknap/rng.h"
#include "gtest/gtest.h"

namespace curvknap {
namespace {

TEST(GridTest, BuildExamples) {
  EXPECT_EQ(BuildGrid(0.5, 2, 1.0).values,
            (std::vector<double>{2, 1, 0.5, 0}));
  EXPECT_EQ(BuildGrid(0.5, 1, 1.0).values, (std::vector<double>{1, 0.5, 0}));
  EXPECT_EQ(BuildGrid(0.5, 3, 0.0).values, (std::vector<double>{0}));
}

TEST(GridTest, SnapAndContains) {
  const ValueGrid grid = BuildGrid(0.5, 2, 1.0);
  EXPECT_DOUBLE_EQ(grid.SnapUp(0.7), 1.0);
  EXPECT_DOUBLE_EQ(grid.SnapUp(1.0), 1.0);
  EXPECT_DOUBLE_EQ(grid.SnapDown(0.7), 0.5);
  EXPECT_DOUBLE_EQ(grid.SnapDown(0.2), 0.0);
  EXPECT_THROW(grid.SnapUp(2.5), std::out_of_range);
  EXPECT_TRUE(grid.Contains(0.5));
  EXPECT_FALSE(grid.Contains(0.7));
}

TEST(GridTest, PerCopyGridScales) {
  const ValueGrid grid = PerCopyGrid(0.5, 2, 1.0);
  EXPECT_DOUBLE_EQ(grid.values.front(), 1.0);
  EXPECT_LE(grid.values[grid.size() - 2], 0.5 * 1.0 / 2 + 1e-15);
  EXPECT_DOUBLE_EQ(grid.values.back(), 0.0);
}

TEST(GridTest, RestrictedExamples) {
  const ValueGrid grid = BuildGrid(0.5, 2, 1.0);
  EXPECT_EQ(RestrictedGrid(grid, 2.0, 0.0).values,
            (std::vector<double>{2, 1}));
  EXPECT_EQ(RestrictedGrid(grid, 2.0, 1.0).values, grid.values);
  EXPECT_EQ(RestrictedGrid(grid, 0.0, 0.3).values, grid.values);
}

TEST(GridTest, ClassifyExamples) {
  ExplicitFunction g(2, {0, 1, 1, 1.5});
  LinearFunction l({0.3, 0.4});
  const ElementClassification c = ClassifyElements(g, l, 2.0, 2.0, 0.5);
  EXPECT_EQ(c.large, (ElementSet{0, 1}));
  EXPECT_TRUE(c.small.empty());

  LinearFunction l2({0.0, 0.4});
  ExplicitFunction g2(2, {0, 0, 1, 1});
  const ElementClassification zero = ClassifyElements(g2, l2, 0.0, 0.0, 0.5);
  EXPECT_EQ(zero.small, (ElementSet{0}));
  EXPECT_EQ(zero.large, (ElementSet{1}));

  const ElementClassification all = ClassifyElements(g, l, 1e6, 1e6, 0.5);
  EXPECT_TRUE(all.large.empty());
}

TEST(GridTest, LargeCountBound) {
  EXPECT_EQ(LargeElementCountBound(0.0, 1.0), 2);
  EXPECT_EQ(LargeElementCountBound(0.5, 0.5), 192);
  EXPECT_THROW(LargeElementCountBound(1.0, 0.5), std::domain_error);
}

TEST(GridTest, GoodGuessPredicate) {
  EXPECT_TRUE(IsGoodGuess(1.0, 1.0, 0.5, 0.0));
  EXPECT_TRUE(IsGoodGuess(0.5, 1.0, 0.5, 0.0));
  EXPECT_FALSE(IsGoodGuess(0.4, 1.0, 0.5, 0.0));
  EXPECT_FALSE(IsGoodGuess(1.1, 1.0, 0.5, 0.0));
}

TEST(GridTest, EnumeratorCountsMatchProduct) {
  const ValueGrid per_copy = PerCopyGrid(0.5, 1, 1.0);
  const ValueGrid small = BuildGrid(0.5, 2, 1.0);
  // m = 0: only the small components vary.
  GuessProfileEnumerator none(1.0, 1.0, 0, 2, per_copy, small, 0.0);
  uint64_t expected_small = 0;
  for (double g0 : small.values) {
    expected_small += RestrictedGrid(small, g0, 0.0).size() * small.size();
  }
  EXPECT_EQ(none.size(), expected_small);
  for (uint64_t i = 0; i < none.size(); ++i) {
    const GuessProfile p = none.At(i);
    EXPECT_TRUE(p.Matches(0, 2));
    EXPECT_TRUE(p.lambda_large.empty());
  }
  // m = 1, two steps: per-copy choices for two gammas and one lambda.
  GuessProfileEnumerator one(1.0, 1.0, 1, 2, per_copy, small, 0.0);
  const uint64_t c = per_copy.size();
  EXPECT_EQ(one.size(), c * c * c * expected_small);
  for (uint64_t i = 0; i < one.size(); i += 7) {
    const GuessProfile p = one.At(i);
    EXPECT_TRUE(per_copy.Contains(p.gamma_large[1][0]));
    EXPECT_TRUE(p.gamma_small[1] >=
                (1 - 0.5) * p.gamma_small[0] - 1e-12);
  }
}

TEST(GridTest, Saturation) {
  EXPECT_EQ(SaturatingAdd(UINT64_MAX - 1, 5), UINT64_MAX);
  EXPECT_EQ(SaturatingMultiply(uint64_t{1} << 40, uint64_t{1} << 40),
            UINT64_MAX);
  EXPECT_EQ(SaturatingMultiply(3, 4), 12u);
}

TEST(GridPropertyTest, CoverageOfRandomValues) {
  RngStream rng(21, 0);
  int violations = 0;
  for (double eps : {0.1, 0.25, 0.5}) {
    for (int n : {1, 4, 10}) {
      for (double d : {0.5, 1.0, 7.0}) {
        const ValueGrid grid = BuildGrid(eps, n, d);
        for (int i = 0; i < 2000; ++i) {
          const double v = rng.Uniform() * n * d;
          const double up = grid.SnapUp(v);
          if (!((1 - eps) * up - eps * d <= v + 1e-12 && v <= up)) {
            ++violations;
          }
        }
      }
    }
  }
  EXPECT_EQ(violations, 0);
}

TEST(GridPropertyTest, LargeOptimalElementsWithinBound) {
  RngStream rng(22, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(10));
    ExplicitFunction g(n, RandomSubmodularTable(n, rng));
    std::vector<double> coef(n);
    for (double& c : coef) c = rng.Uniform();
    LinearFunction l(coef);
    const double eps = 0.5;
    const double c_g = std::min(TotalCurvature(g), 0.99);
    const ElementSet all = FullSet(n);
    const ElementClassification cls =
        ClassifyElements(g, l, g.Value(all), l.Value(all), eps);
    EXPECT_LE(static_cast<int64_t>(cls.large.size()),
              LargeElementCountBound(c_g, eps));
  }
}

}  // namespace
}  // namespace curvknap
