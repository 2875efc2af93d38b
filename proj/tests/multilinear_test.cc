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
#include "curvknap/multilinear.h"
#include "curvknap/rng.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace curvknap {
namespace {

ExplicitFunction PairTable() { return ExplicitFunction(2, {0, 1, 1, 1.5}); }

TEST(MultilinearTest, SampleSetDegenerate) {
  RngStream rng(1, 0);
  const std::vector<double> one = {1, 0, 1};
  const std::vector<double> zero = {0, 0, 0};
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(SampleSet(one, rng), (ElementSet{0, 2}));
    EXPECT_TRUE(SampleSet(zero, rng).empty());
  }
}

TEST(MultilinearTest, SampleSetFrequencies) {
  RngStream rng(2, 0);
  const std::vector<double> half(4, 0.5);
  std::vector<int> hits(4, 0);
  constexpr int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) {
    for (int e : SampleSet(half, rng)) ++hits[e];
  }
  for (int e = 0; e < 4; ++e) {
    EXPECT_NEAR(hits[e] / static_cast<double>(kDraws), 0.5, 0.02);
  }
}

TEST(MultilinearTest, ExactValues) {
  ExplicitFunction f = PairTable();
  EXPECT_DOUBLE_EQ(ExactMultilinear(f, std::vector<double>{0.5, 0.5}), 0.875);
  EXPECT_DOUBLE_EQ(ExactMultilinear(f, std::vector<double>{1, 1}), 1.5);
  LinearFunction l({0.3, 0.4, 0.2});
  const std::vector<double> x = {0.1, 0.7, 0.4};
  EXPECT_NEAR(ExactMultilinear(l, x), l.Extension(x), 1e-15);
}

TEST(MultilinearTest, PartialDerivatives) {
  ExplicitFunction f = PairTable();
  EXPECT_DOUBLE_EQ(PartialDerivative(f, std::vector<double>{0, 0}, 0), 1.0);
  EXPECT_DOUBLE_EQ(PartialDerivative(f, std::vector<double>{0, 1}, 0), 0.5);
  LinearFunction l({0.3, 0.4});
  EXPECT_NEAR(PartialDerivative(l, std::vector<double>{0.2, 0.9}, 1), 0.4,
              1e-15);
}

TEST(MultilinearTest, SampleCountFormula) {
  EXPECT_EQ(EstimateSampleCount(0.1, 0.1, 0.01), 1590);
}

TEST(MultilinearTest, ConstantSamplerIsExact) {
  RngStream rng(3, 0);
  const double est = EstimateMean([](RngStream&) { return 0.7; }, 1.0, 0.1,
                                  0.1, 0.01, rng);
  EXPECT_NEAR(est, 0.7, 1e-12);
}

TEST(MultilinearTest, MarginalOverDegeneratePoints) {
  ExplicitFunction f = PairTable();
  RngStream rng(4, 0);
  EXPECT_DOUBLE_EQ(EstimateMarginalOverRandomSet(
                       f, std::vector<double>{0, 0}, 0, 0.1, 0.1, 0.1, 1.0,
                       rng),
                   1.0);
  EXPECT_DOUBLE_EQ(EstimateMarginalOverRandomSet(
                       f, std::vector<double>{0, 1}, 0, 0.1, 0.1, 0.1, 1.0,
                       rng),
                   0.5);
  const double est = EstimateMarginalOverRandomSet(
      f, std::vector<double>{0, 0.5}, 0, 0.1, 0.1, 0.01, 1.0, rng);
  EXPECT_LE(std::abs(est - 0.75), 0.1 * 0.75 + 0.1);
}

TEST(MultilinearTest, DiscretizationExamples) {
  EXPECT_TRUE(CheckDiscretizationLemma(PairTable(), std::vector<double>{0, 0},
                                       std::vector<double>{1, 1}, 0.5));
  LinearFunction l({0.3, 0.4});
  EXPECT_TRUE(CheckDiscretizationLemma(l, std::vector<double>{0.2, 0.1},
                                       std::vector<double>{0.5, 0.5}, 0.25));
}

TEST(MultilinearPropertyTest, TableMatchesBruteForce) {
  RngStream rng(5, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(7));
    const std::vector<double> values = RandomSubmodularTable(n, rng);
    ExplicitFunction f(n, values);
    SubsetTable table(f);
    std::vector<double> x(n);
    for (double& v : x) v = rng.Uniform();
    EXPECT_NEAR(table.Multilinear(x), testing::OracleMultilinear(values, x),
                1e-10);
    const std::vector<double> marginals = table.ExpectedMarginals(x);
    for (int e = 0; e < n; ++e) {
      EXPECT_NEAR(marginals[e],
                  testing::OracleExpectedMarginal(values, x, e), 1e-10);
    }
  }
}

TEST(MultilinearPropertyTest, DiscretizationLemmaOnRandomTables) {
  RngStream rng(6, 0);
  int violations = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(8));
    ExplicitFunction f(n, RandomSubmodularTable(n, rng));
    const double eps = 0.05 + 0.9 * rng.Uniform();
    std::vector<double> x(n), y(n);
    for (int e = 0; e < n; ++e) {
      x[e] = (1.0 - eps) * rng.Uniform();
      y[e] = rng.Uniform();
    }
    if (!CheckDiscretizationLemma(f, x, y, eps)) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(MultilinearTest, RejectsOutOfRangePoint) {
  EXPECT_THROW(ValidatePoint(std::vector<double>{0.5, 1.5}, 2),
               std::invalid_argument);
}

}  // namespace
}  // namespace curvknap
