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

#include "curvknap/instance_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace curvknap {

namespace {

using nlohmann::json;

void Require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

void CheckInstance(const Instance& in) {
  Require(in.n >= 1, "ground_set must be >= 1");
  Require(static_cast<int>(in.weights.size()) == in.n,
          "weights must have ground_set entries");
  for (double w : in.weights) {
    Require(std::isfinite(w) && w >= 0.0 && w <= 1.0,
            "weights must lie in [0, 1]");
  }
  if (in.epsilon) {
    Require(*in.epsilon > 0.0 && *in.epsilon < 1.0,
            "epsilon must lie in (0, 1)");
  }
  if (const auto* table = std::get_if<ExplicitSpec>(&in.function)) {
    Require(in.n <= ExplicitFunction::kMaxElements,
            "explicit functions support n <= 16");
    Require(table->values.size() == (size_t{1} << in.n),
            "explicit function needs 2^n values");
    for (double v : table->values) {
      Require(std::isfinite(v) && v >= 0.0, "values must be finite and >= 0");
    }
  } else if (const auto* cov = std::get_if<CoverageData>(&in.function)) {
    Require(cov->universe_size >= 0 &&
                static_cast<int>(cov->item_weights.size()) ==
                    cov->universe_size,
            "item_weights must have universe_size entries");
    Require(static_cast<int>(cov->covers.size()) == in.n,
            "covers must have ground_set entries");
    for (double v : cov->item_weights) {
      Require(std::isfinite(v) && v >= 0.0, "item weights must be >= 0");
    }
    for (const auto& cover : cov->covers) {
      for (int j : cover) {
        Require(j >= 0 && j < cov->universe_size, "covered item out of range");
      }
    }
  }
}

}  // namespace

std::shared_ptr<const SetFunction> Instance::MakeFunction() const {
  if (const auto* table = std::get_if<ExplicitSpec>(&function)) {
    return std::make_shared<ExplicitFunction>(n, table->values);
  }
  if (const auto* cov = std::get_if<CoverageData>(&function)) {
    return std::make_shared<CoverageFunction>(cov->item_weights, cov->covers);
  }
  return std::make_shared<BudgetFunction>(std::get<BudgetInstance>(function));
}

std::string Instance::FunctionType() const {
  switch (function.index()) {
    case 0:
      return "explicit";
    case 1:
      return "coverage";
    default:
      return "budget";
  }
}

Instance ParseInstance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("not valid JSON: ") + e.what());
  }
  Instance out;
  try {
    Require(doc.is_object(), "instance must be a JSON object");
    out.n = doc.at("ground_set").get<int>();
    if (doc.contains("epsilon")) out.epsilon = doc.at("epsilon").get<double>();
    const json& fn = doc.at("function");
    const std::string type = fn.at("type").get<std::string>();
    if (type == "explicit") {
      out.function = ExplicitSpec{fn.at("values").get<std::vector<double>>()};
    } else if (type == "coverage") {
      CoverageData cov;
      cov.universe_size = fn.at("universe_size").get<int>();
      cov.item_weights = fn.at("item_weights").get<std::vector<double>>();
      cov.covers = fn.at("covers").get<std::vector<std::vector<int>>>();
      out.function = std::move(cov);
    } else if (type == "budget") {
      BudgetInstance budget;
      try {
        budget = BudgetFromJson(fn);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      const BudgetFunction oracle(budget);
      Require(oracle.size() == out.n,
              "ground_set must equal the total channel capacity");
      const std::vector<double> derived = oracle.ElementWeights();
      if (doc.contains("weights")) {
        out.weights = doc.at("weights").get<std::vector<double>>();
        Require(out.weights == derived,
                "weights disagree with the channel weights");
      } else {
        out.weights = derived;
      }
      out.function = std::move(budget);
    } else {
      throw InputError("unknown function type '" + type + "'");
    }
    if (out.weights.empty() && doc.contains("weights")) {
      out.weights = doc.at("weights").get<std::vector<double>>();
    }
    Require(doc.contains("weights") || type == "budget", "missing weights");
  } catch (const json::exception& e) {
    throw InputError(std::string("schema error: ") + e.what());
  }
  CheckInstance(out);
  return out;
}

std::string SerializeInstance(const Instance& instance) {
  json fn;
  if (const auto* table = std::get_if<ExplicitSpec>(&instance.function)) {
    fn = {{"type", "explicit"}, {"values", table->values}};
  } else if (const auto* cov = std::get_if<CoverageData>(&instance.function)) {
    fn = {{"type", "coverage"},
          {"universe_size", cov->universe_size},
          {"item_weights", cov->item_weights},
          {"covers", cov->covers}};
  } else {
    fn = BudgetToJson(std::get<BudgetInstance>(instance.function));
  }
  json doc = {{"ground_set", instance.n},
              {"weights", instance.weights},
              {"function", fn}};
  if (instance.epsilon) doc["epsilon"] = *instance.epsilon;
  return doc.dump(2) + "\n";
}

Instance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseInstance(buffer.str());
}

void SaveInstance(const Instance& instance, const std::string& path) {
  const std::string text = SerializeInstance(instance);
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed for " + path);
}

}  // namespace curvknap
