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

#include "curvknap/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "curvknap/budget_allocation.h"
#include "curvknap/generators.h"
#include "curvknap/rng.h"

namespace curvknap {

namespace {

constexpr uint64_t kGenerateStream = 11;

std::vector<std::string> SplitTokens(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, sep)) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

struct LoadedInstance {
  std::string id;
  bool ok = false;
  std::string error;
  Instance instance;
};

LoadedInstance Load(const nlohmann::json& entry) {
  LoadedInstance out;
  try {
    if (entry.is_string()) {
      const std::string path = entry.get<std::string>();
      out.id = std::filesystem::path(path).stem().string();
      out.instance = LoadInstance(path);
    } else {
      const GenerateSpec spec = GenerateSpecFromJson(entry);
      out.id = spec.type + "-n" + std::to_string(spec.n) + "-s" +
               std::to_string(spec.seed);
      out.instance = GenerateInstance(spec);
    }
    out.ok = true;
  } catch (const std::exception& e) {
    if (out.id.empty()) out.id = entry.dump();
    out.error = e.what();
  }
  return out;
}

double Mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / v.size();
}

}  // namespace

Instance GenerateInstance(const GenerateSpec& spec) {
  RngStream rng(spec.seed, kGenerateStream);
  Instance out;
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
    throw UsageError("epsilon must lie in (0, 1)");
  }
  out.epsilon = spec.epsilon;
  try {
    if (spec.type == "coverage") {
      if (spec.n < 1) throw UsageError("n must be >= 1");
      CoverageSpec cs;
      cs.n = spec.n;
      cs.universe = spec.universe;
      cs.density = spec.density;
      const CoverageInstance cov =
          spec.curvature > 0.0
              ? GenerateCoverageWithCurvature(cs, spec.curvature, rng)
              : GenerateCoverage(cs, rng);
      out.n = spec.n;
      out.weights = cov.weights;
      out.function = CoverageData{static_cast<int>(cov.item_weights.size()),
                                  cov.item_weights, cov.covers};
    } else if (spec.type == "budget") {
      BudgetGeneratorSpec bs;
      bs.channels = spec.channels;
      bs.customers = spec.customers;
      bs.max_capacity = spec.max_capacity;
      bs.density = spec.density;
      BudgetInstance budget = GenerateBudgetInstance(bs, rng);
      const BudgetFunction f(budget);
      out.n = f.size();
      out.weights = f.ElementWeights();
      out.function = std::move(budget);
    } else if (spec.type == "explicit") {
      if (spec.n < 1 || spec.n > ExplicitFunction::kMaxElements) {
        throw UsageError("explicit instances need 1 <= n <= 16");
      }
      out.n = spec.n;
      out.function = ExplicitSpec{RandomSubmodularTable(spec.n, rng)};
      out.weights = RandomWeights(spec.n, 0.1, 0.6, rng);
    } else {
      throw UsageError("unknown generator type '" + spec.type + "'");
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return out;
}

GenerateSpec GenerateSpecFromJson(const nlohmann::json& doc) {
  GenerateSpec spec;
  try {
    spec.type = doc.value("type", spec.type);
    spec.n = doc.value("n", spec.n);
    spec.seed = doc.value("seed", spec.seed);
    spec.epsilon = doc.value("epsilon", spec.epsilon);
    spec.curvature = doc.value("curvature", spec.curvature);
    spec.universe = doc.value("universe", spec.universe);
    spec.density = doc.value("density", spec.density);
    spec.channels = doc.value("channels", spec.channels);
    spec.customers = doc.value("customers", spec.customers);
    spec.max_capacity = doc.value("max_capacity", spec.max_capacity);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("generator spec: ") + e.what());
  }
  return spec;
}

DriverOptions ResolveModes(const std::vector<std::string>& tokens, int n,
                           uint64_t seed) {
  DriverOptions options;
  options.seed = seed;
  bool has_guess = false, has_estimation = false;
  for (const std::string& raw : tokens) {
    for (const std::string& token : SplitTokens(raw, '+')) {
      bool is_estimation = true;
      if (token == "exact") {
        options.estimation = Estimation::kExact;
      } else if (token == "sampled") {
        options.estimation = Estimation::kSampled;
      } else {
        is_estimation = false;
        if (token == "known-O") {
          options.guess = GuessMode::kKnownOptimum;
        } else if (token == "enumerate") {
          options.guess = GuessMode::kEnumerate;
        } else if (token == "heuristic") {
          options.guess = GuessMode::kHeuristic;
        } else {
          throw UsageError("unknown mode '" + token + "'");
        }
      }
      bool& seen = is_estimation ? has_estimation : has_guess;
      if (seen) throw UsageError("conflicting mode '" + token + "'");
      seen = true;
    }
  }
  if (!has_estimation) {
    options.estimation =
        n <= kMaxExhaustiveCheck ? Estimation::kExact : Estimation::kSampled;
  }
  if (!has_guess) {
    options.guess = n <= kMaxExhaustiveCheck ? GuessMode::kKnownOptimum
                                             : GuessMode::kHeuristic;
  }
  return options;
}

RunReport RunAlgorithm(const Instance& instance, const std::string& algorithm,
                       const DriverOptions& options, double epsilon) {
  const std::shared_ptr<const SetFunction> f = instance.MakeFunction();
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  if (algorithm == "brute") {
    report = BruteForce(*f, instance.weights);
  } else if (algorithm == "greedy") {
    report = GreedyCostBenefit(*f, instance.weights);
  } else if (algorithm == "sviridenko") {
    report = SviridenkoGreedy(*f, instance.weights);
  } else if (algorithm == "curvature") {
    report = CurvaturePath(f, instance.weights, epsilon, options);
    report.algorithm = "curvature";
  } else if (algorithm == "dispatch") {
    report = Dispatch(f, instance.weights, epsilon, options);
  } else {
    throw UsageError("unknown algorithm '" + algorithm + "'");
  }
  report.seed = options.seed;
  report.wall_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

void BenchConfig::Validate() const {
  if (instances.empty()) throw UsageError("bench needs at least one instance");
  if (trials < 1) throw UsageError("trials must be >= 1");
  if (jobs < 1) throw UsageError("jobs must be >= 1");
  if (algorithms.empty() || modes.empty() || epsilons.empty() ||
      seeds.empty()) {
    throw UsageError("algorithms, modes, epsilons and seeds must be nonempty");
  }
  for (const std::string& a : algorithms) {
    if (std::find(AlgorithmNames().begin(), AlgorithmNames().end(), a) ==
        AlgorithmNames().end()) {
      throw UsageError("unknown algorithm '" + a + "'");
    }
  }
  for (double eps : epsilons) {
    if (!(eps > 0.0 && eps < 1.0)) throw UsageError("epsilon outside (0, 1)");
  }
  for (const std::string& m : modes) ResolveModes({m}, 1, 0);
}

BenchConfig BenchConfigFromJson(const nlohmann::json& doc) {
  BenchConfig config;
  try {
    if (doc.contains("instances")) {
      config.instances = doc.at("instances").get<std::vector<nlohmann::json>>();
    }
    config.algorithms = doc.value("algorithms", config.algorithms);
    config.modes = doc.value("modes", config.modes);
    config.epsilons = doc.value("epsilons", config.epsilons);
    config.seeds = doc.value("seeds", config.seeds);
    config.trials = doc.value("trials", config.trials);
    config.jobs = doc.value("jobs", config.jobs);
    config.profile_budget = doc.value("profile_budget", config.profile_budget);
    config.out_csv = doc.value("out_csv", config.out_csv);
    config.out_json = doc.value("out_json", config.out_json);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bench config: ") + e.what());
  }
  return config;
}

uint64_t TrialSeed(uint64_t seed, int trial) {
  if (trial == 0) return seed;
  return MixBits(seed ^ MixBits(static_cast<uint64_t>(trial)));
}

BenchResult RunBench(const BenchConfig& config) {
  config.Validate();
  std::vector<LoadedInstance> loaded;
  std::map<std::string, int> id_count;
  for (const nlohmann::json& entry : config.instances) {
    LoadedInstance li = Load(entry);
    const int k = id_count[li.id]++;
    if (k > 0) li.id += "#" + std::to_string(k);
    loaded.push_back(std::move(li));
  }

  struct Cell {
    size_t instance;
    std::string algorithm;
    std::string mode;
    double epsilon;
    uint64_t seed;
    int trial;
  };
  std::vector<Cell> cells;
  for (size_t i = 0; i < loaded.size(); ++i) {
    for (const std::string& algorithm : config.algorithms) {
      for (const std::string& mode : config.modes) {
        for (double eps : config.epsilons) {
          for (uint64_t seed : config.seeds) {
            for (int t = 0; t < config.trials; ++t) {
              cells.push_back({i, algorithm, mode, eps, seed, t});
            }
          }
        }
      }
    }
  }

  BenchResult result;
  result.rows.resize(cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      const Cell& cell = cells[k];
      const LoadedInstance& li = loaded[cell.instance];
      BenchRow& row = result.rows[k];
      row.instance_id = li.id;
      row.algorithm = cell.algorithm;
      row.mode = cell.mode;
      row.epsilon = cell.epsilon;
      row.seed = TrialSeed(cell.seed, cell.trial);
      row.trial = cell.trial;
      if (!li.ok) {
        row.error = li.error;
        continue;
      }
      try {
        DriverOptions options =
            ResolveModes({cell.mode}, li.instance.n, row.seed);
        options.profile_budget = config.profile_budget;
        row.report =
            RunAlgorithm(li.instance, cell.algorithm, options, cell.epsilon);
        row.mode = row.report.mode;
        row.ok = true;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const int jobs = std::min<int>(config.jobs, std::max<size_t>(1, cells.size()));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  nlohmann::json instances = nlohmann::json::object();
  std::map<std::string, double> optimum;
  std::map<std::string, double> curvature;
  for (const LoadedInstance& li : loaded) {
    nlohmann::json info = {{"loaded", li.ok}};
    if (!li.ok) {
      info["error"] = li.error;
    } else {
      const auto f = li.instance.MakeFunction();
      info["n"] = li.instance.n;
      info["type"] = li.instance.FunctionType();
      try {
        curvature[li.id] = TotalCurvature(*f);
        info["c_f"] = curvature[li.id];
      } catch (const std::exception& e) {
        info["c_f"] = nullptr;
      }
      if (li.instance.n <= 20) {
        optimum[li.id] = BruteForce(*f, li.instance.weights).objective;
        info["optimum"] = optimum[li.id];
      } else {
        info["optimum"] = nullptr;
      }
    }
    instances[li.id] = info;
  }

  struct Group {
    std::vector<double> objectives;
    std::vector<double> ratios;
    int failures = 0;
    double epsilon = 0.0;
    std::string instance_id;
    std::string algorithm;
    std::string mode;
  };
  std::map<std::string, Group> groups;
  std::vector<std::string> order;
  nlohmann::json rows = nlohmann::json::array();
  for (size_t k = 0; k < cells.size(); ++k) {
    const Cell& cell = cells[k];
    const BenchRow& row = result.rows[k];
    std::ostringstream key;
    key << row.instance_id << "|" << cell.algorithm << "|" << cell.mode << "|"
        << cell.epsilon;
    if (!groups.count(key.str())) order.push_back(key.str());
    Group& group = groups[key.str()];
    group.epsilon = cell.epsilon;
    group.instance_id = row.instance_id;
    group.algorithm = cell.algorithm;
    group.mode = cell.mode;
    nlohmann::json entry = {{"instance_id", row.instance_id},
                            {"algorithm", cell.algorithm},
                            {"epsilon", cell.epsilon},
                            {"seed", row.seed},
                            {"trial", row.trial},
                            {"ok", row.ok}};
    if (row.ok) {
      entry["report"] = ToJson(row.report);
      group.objectives.push_back(row.report.objective);
      const auto opt = optimum.find(row.instance_id);
      if (opt != optimum.end() && opt->second > 0.0) {
        group.ratios.push_back(row.report.objective / opt->second);
      }
    } else {
      entry["error"] = row.error;
      ++group.failures;
    }
    rows.push_back(entry);
  }
  nlohmann::json cells_summary = nlohmann::json::array();
  for (const std::string& key : order) {
    const Group& g = groups[key];
    nlohmann::json s = {{"instance_id", g.instance_id},
                        {"algorithm", g.algorithm},
                        {"mode", g.mode},
                        {"epsilon", g.epsilon},
                        {"runs", g.objectives.size()},
                        {"failures", g.failures}};
    s["mean_objective"] = g.objectives.empty()
                              ? nlohmann::json(nullptr)
                              : nlohmann::json(Mean(g.objectives));
    if (g.ratios.empty()) {
      s["mean_ratio"] = nullptr;
      s["min_ratio"] = nullptr;
    } else {
      s["mean_ratio"] = Mean(g.ratios);
      s["min_ratio"] = *std::min_element(g.ratios.begin(), g.ratios.end());
    }
    const auto c = curvature.find(g.instance_id);
    if (c != curvature.end()) {
      s["curvature_bound"] = 1.0 - c->second / std::numbers::e - g.epsilon;
    } else {
      s["curvature_bound"] = nullptr;
    }
    cells_summary.push_back(s);
  }
  result.summary = {{"instances", instances},
                    {"cells", cells_summary},
                    {"rows", rows}};
  return result;
}

std::string BenchCsv(const BenchResult& result) {
  std::string out = CsvHeader() + "\n";
  for (const BenchRow& row : result.rows) {
    if (row.ok) {
      out += CsvRow(row.instance_id, row.report) + "\n";
    } else {
      out += row.instance_id + "," + row.algorithm + "," + row.mode + "," +
             std::to_string(row.seed) + ",,,,\n";
    }
  }
  return out;
}

}  // namespace curvknap
