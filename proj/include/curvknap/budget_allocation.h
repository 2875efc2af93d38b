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

#ifndef CURVKNAP_BUDGET_ALLOCATION_H_
#define CURVKNAP_BUDGET_ALLOCATION_H_

// Budget allocation over a bipartite influence graph. Channel a may be bought
// up to c(a) times at weight w(a) each; a customer b is reached with
// probability 1 - prod_{a in N(b)} p(a)^{k(a)} when k(a) copies of each
// neighboring channel are bought.

#include <span>
#include <vector>

#include "curvknap/rng.h"
#include "curvknap/set_function.h"
#include "json.hpp"

namespace curvknap {

struct BudgetChannel {
  int id = 0;
  double weight = 0.0;
  int capacity = 1;
  double prob = 0.0;
};

struct BudgetCustomer {
  int id = 0;
  std::vector<int> neighbors;  // channel ids
};

struct BudgetInstance {
  std::vector<BudgetChannel> channels;
  std::vector<BudgetCustomer> customers;
};

// Throws std::invalid_argument on duplicate ids, unknown neighbor ids, a
// customer without neighbors, capacity < 1, or weight / prob outside [0, 1].
void ValidateBudgetInstance(const BudgetInstance& instance);

// Ground set: channels in input order, copies of a channel consecutive.
class BudgetFunction : public SetFunction {
 public:
  explicit BudgetFunction(BudgetInstance instance);

  const BudgetInstance& instance() const { return instance_; }
  // Index of the channel (position in instance().channels) of element e.
  int ChannelOf(int e) const { return channel_of_[e]; }
  // w'((a, i)) = w(a).
  std::vector<double> ElementWeights() const;
  // Closed-form f_S(e) = sum over customers b adjacent to a of
  // (1 - p(a)) prod_{a' in N(b)} p(a')^{|S cap E_a'|}; 0 when e is in S.
  // Does not touch the evaluation counter.
  double MarginalGain(std::span<const int> set, int e) const;

 protected:
  double Evaluate(std::span<const int> set) const override;

 private:
  std::vector<int> Counts(std::span<const int> set) const;

  BudgetInstance instance_;
  std::vector<int> channel_of_;
  std::vector<std::vector<int>> customer_channels_;  // channel positions
  std::vector<std::vector<int>> channel_customers_;  // customer positions
};

// 1 - min_a min_{b adjacent to a} p(a)^{c(a)-1} prod_{a' in N(b) - a}
// p(a')^{c(a')}. Equals 1 whenever some product vanishes.
double BudgetCurvatureBound(const BudgetInstance& instance);

struct BudgetGeneratorSpec {
  int channels = 3;
  int customers = 4;
  int min_capacity = 1;
  int max_capacity = 2;
  double min_prob = 0.2;
  double max_prob = 0.8;
  double min_weight = 0.1;
  double max_weight = 0.6;
  double density = 0.5;  // edge probability
};

// Deterministic per rng state; customers left without neighbors redraw
// their edges.
BudgetInstance GenerateBudgetInstance(const BudgetGeneratorSpec& spec,
                                      RngStream& rng);

nlohmann::json BudgetToJson(const BudgetInstance& instance);
// Throws std::invalid_argument on schema errors.
BudgetInstance BudgetFromJson(const nlohmann::json& doc);

}  // namespace curvknap

#endif  // CURVKNAP_BUDGET_ALLOCATION_H_
