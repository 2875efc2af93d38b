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

#include "curvknap/budget_allocation.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace curvknap {

namespace {

int TotalCapacity(const BudgetInstance& instance) {
  ValidateBudgetInstance(instance);
  int total = 0;
  for (const BudgetChannel& c : instance.channels) total += c.capacity;
  return total;
}

std::map<int, int> ChannelPositions(const BudgetInstance& instance) {
  std::map<int, int> out;
  for (size_t i = 0; i < instance.channels.size(); ++i) {
    out[instance.channels[i].id] = static_cast<int>(i);
  }
  return out;
}

bool InUnit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void ValidateBudgetInstance(const BudgetInstance& instance) {
  std::map<int, int> seen;
  for (const BudgetChannel& c : instance.channels) {
    if (!seen.emplace(c.id, 0).second) {
      throw std::invalid_argument("duplicate channel id " +
                                  std::to_string(c.id));
    }
    if (c.capacity < 1) {
      throw std::invalid_argument("channel capacity must be >= 1");
    }
    if (!InUnit(c.weight) || !InUnit(c.prob)) {
      throw std::invalid_argument("channel weight and prob must lie in [0, 1]");
    }
  }
  std::map<int, int> customers;
  for (const BudgetCustomer& b : instance.customers) {
    if (!customers.emplace(b.id, 0).second) {
      throw std::invalid_argument("duplicate customer id " +
                                  std::to_string(b.id));
    }
    if (b.neighbors.empty()) {
      throw std::invalid_argument("customer " + std::to_string(b.id) +
                                  " has no neighbors");
    }
    std::vector<int> sorted = b.neighbors;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("repeated neighbor for customer " +
                                  std::to_string(b.id));
    }
    for (int a : b.neighbors) {
      if (!seen.count(a)) {
        throw std::invalid_argument("unknown channel id " + std::to_string(a));
      }
    }
  }
}

BudgetFunction::BudgetFunction(BudgetInstance instance)
    : SetFunction(TotalCapacity(instance)), instance_(std::move(instance)) {
  for (size_t a = 0; a < instance_.channels.size(); ++a) {
    for (int i = 0; i < instance_.channels[a].capacity; ++i) {
      channel_of_.push_back(static_cast<int>(a));
    }
  }
  const std::map<int, int> position = ChannelPositions(instance_);
  channel_customers_.resize(instance_.channels.size());
  for (size_t b = 0; b < instance_.customers.size(); ++b) {
    std::vector<int> adjacent;
    for (int id : instance_.customers[b].neighbors) {
      const int a = position.at(id);
      adjacent.push_back(a);
      channel_customers_[a].push_back(static_cast<int>(b));
    }
    customer_channels_.push_back(std::move(adjacent));
  }
}

std::vector<double> BudgetFunction::ElementWeights() const {
  std::vector<double> out;
  for (int a : channel_of_) out.push_back(instance_.channels[a].weight);
  return out;
}

std::vector<int> BudgetFunction::Counts(std::span<const int> set) const {
  std::vector<int> counts(instance_.channels.size(), 0);
  for (int e : set) ++counts[channel_of_[e]];
  return counts;
}

double BudgetFunction::Evaluate(std::span<const int> set) const {
  const std::vector<int> counts = Counts(set);
  double total = 0.0;
  for (const auto& adjacent : customer_channels_) {
    double missed = 1.0;
    for (int a : adjacent) {
      missed *= std::pow(instance_.channels[a].prob, counts[a]);
    }
    total += 1.0 - missed;
  }
  return total;
}

double BudgetFunction::MarginalGain(std::span<const int> set, int e) const {
  if (e < 0 || e >= size()) throw std::out_of_range("element id");
  if (Contains(set, e)) return 0.0;
  const std::vector<int> counts = Counts(set);
  const int channel = channel_of_[e];
  const double p = instance_.channels[channel].prob;
  double total = 0.0;
  for (int b : channel_customers_[channel]) {
    double missed = 1.0;
    for (int a : customer_channels_[b]) {
      missed *= std::pow(instance_.channels[a].prob, counts[a]);
    }
    total += (1.0 - p) * missed;
  }
  return total;
}

double BudgetCurvatureBound(const BudgetInstance& instance) {
  ValidateBudgetInstance(instance);
  const std::map<int, int> position = ChannelPositions(instance);
  double lowest = 1.0;
  bool any = false;
  for (const BudgetCustomer& b : instance.customers) {
    for (int id : b.neighbors) {
      const BudgetChannel& a = instance.channels[position.at(id)];
      double product = std::pow(a.prob, a.capacity - 1);
      for (int other : b.neighbors) {
        if (other == id) continue;
        const BudgetChannel& c = instance.channels[position.at(other)];
        product *= std::pow(c.prob, c.capacity);
      }
      lowest = any ? std::min(lowest, product) : product;
      any = true;
    }
  }
  return any ? 1.0 - lowest : 0.0;
}

BudgetInstance GenerateBudgetInstance(const BudgetGeneratorSpec& spec,
                                      RngStream& rng) {
  if (spec.channels < 1 || spec.customers < 1) {
    throw std::invalid_argument("need at least one channel and one customer");
  }
  if (spec.min_capacity < 1 || spec.max_capacity < spec.min_capacity) {
    throw std::invalid_argument("bad capacity range");
  }
  if (!InUnit(spec.min_prob) || !InUnit(spec.max_prob) ||
      spec.max_prob < spec.min_prob || !InUnit(spec.min_weight) ||
      !InUnit(spec.max_weight) || spec.max_weight < spec.min_weight) {
    throw std::invalid_argument("bad probability or weight range");
  }
  if (!(spec.density > 0.0 && spec.density <= 1.0)) {
    throw std::invalid_argument("density must lie in (0, 1]");
  }
  BudgetInstance out;
  for (int a = 0; a < spec.channels; ++a) {
    BudgetChannel c;
    c.id = a;
    c.capacity = spec.min_capacity +
                 static_cast<int>(rng.Below(static_cast<uint64_t>(
                     spec.max_capacity - spec.min_capacity + 1)));
    c.prob = spec.min_prob + (spec.max_prob - spec.min_prob) * rng.Uniform();
    c.weight =
        spec.min_weight + (spec.max_weight - spec.min_weight) * rng.Uniform();
    out.channels.push_back(c);
  }
  for (int b = 0; b < spec.customers; ++b) {
    BudgetCustomer customer;
    customer.id = b;
    while (customer.neighbors.empty()) {
      for (int a = 0; a < spec.channels; ++a) {
        if (rng.Bernoulli(spec.density)) customer.neighbors.push_back(a);
      }
    }
    out.customers.push_back(std::move(customer));
  }
  return out;
}

nlohmann::json BudgetToJson(const BudgetInstance& instance) {
  nlohmann::json channels = nlohmann::json::array();
  for (const BudgetChannel& c : instance.channels) {
    channels.push_back({{"id", c.id},
                        {"weight", c.weight},
                        {"capacity", c.capacity},
                        {"prob", c.prob}});
  }
  nlohmann::json customers = nlohmann::json::array();
  for (const BudgetCustomer& b : instance.customers) {
    customers.push_back({{"id", b.id}, {"neighbors", b.neighbors}});
  }
  return {{"type", "budget"}, {"channels", channels}, {"customers", customers}};
}

BudgetInstance BudgetFromJson(const nlohmann::json& doc) {
  BudgetInstance out;
  try {
    for (const auto& c : doc.at("channels")) {
      BudgetChannel channel;
      channel.id = c.at("id").get<int>();
      channel.weight = c.at("weight").get<double>();
      channel.capacity = c.at("capacity").get<int>();
      channel.prob = c.at("prob").get<double>();
      out.channels.push_back(channel);
    }
    for (const auto& b : doc.at("customers")) {
      BudgetCustomer customer;
      customer.id = b.at("id").get<int>();
      customer.neighbors = b.at("neighbors").get<std::vector<int>>();
      out.customers.push_back(std::move(customer));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("budget schema: ") + e.what());
  }
  ValidateBudgetInstance(out);
  return out;
}

}  // namespace curvknap
