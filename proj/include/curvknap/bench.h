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

#ifndef CURVKNAP_BENCH_H_
#define CURVKNAP_BENCH_H_

// Instance generation specs, single algorithm runs, and full-factorial
// benchmark sweeps shared by the command-line tool.

#include <cstdint>
#include <string>
#include <vector>

#include "curvknap/instance_io.h"
#include "curvknap/knapsack.h"
#include "json.hpp"

namespace curvknap {

// Unknown tokens or conflicting choices throw std::invalid_argument.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GenerateSpec {
  std::string type = "coverage";  // coverage | budget | explicit
  int n = 8;                      // elements (coverage, explicit)
  uint64_t seed = 0;
  double epsilon = 0.25;
  double curvature = -1.0;  // coverage: exact target in (0, 1) when set
  int universe = 12;
  double density = 0.3;
  int channels = 3;  // budget
  int customers = 4;
  int max_capacity = 2;
};

// Throws UsageError for an invalid spec (including n < 1).
Instance GenerateInstance(const GenerateSpec& spec);
GenerateSpec GenerateSpecFromJson(const nlohmann::json& doc);

// Mode tokens: at most one of exact | sampled and one of known-O |
// enumerate | heuristic. Missing choices default to exact and known-O for
// n <= 12, sampled and heuristic otherwise.
DriverOptions ResolveModes(const std::vector<std::string>& tokens, int n,
                           uint64_t seed);

inline const std::vector<std::string>& AlgorithmNames() {
  static const std::vector<std::string> names = {
      "brute", "greedy", "sviridenko", "curvature", "dispatch"};
  return names;
}

// Runs one algorithm on one instance. Throws CapabilityError on size/mode
// mismatches and UsageError on unknown names.
RunReport RunAlgorithm(const Instance& instance, const std::string& algorithm,
                       const DriverOptions& options, double epsilon);

struct BenchConfig {
  // Entries are instance paths (strings) or generator specs (objects).
  std::vector<nlohmann::json> instances;
  std::vector<std::string> algorithms = {"brute", "greedy"};
  // Each entry is a '+'-joined list of mode tokens; "" means defaults.
  std::vector<std::string> modes = {""};
  std::vector<double> epsilons = {0.25};
  std::vector<uint64_t> seeds = {0};
  int trials = 1;
  int jobs = 1;
  uint64_t profile_budget = 1000000;
  std::string out_csv;
  std::string out_json;

  // Throws UsageError on invalid fields.
  void Validate() const;
};

// Fields as in BenchConfig; absent fields keep their defaults.
BenchConfig BenchConfigFromJson(const nlohmann::json& doc);

// Seed for trial k of a cell seeded with `seed`: the seed itself for k = 0.
uint64_t TrialSeed(uint64_t seed, int trial);

struct BenchRow {
  std::string instance_id;
  std::string algorithm;
  std::string mode;
  double epsilon = 0.0;
  uint64_t seed = 0;
  int trial = 0;
  bool ok = false;
  std::string error;
  RunReport report;
};

struct BenchResult {
  std::vector<BenchRow> rows;  // sorted by cell key
  nlohmann::json summary;
};

// Instances that fail to load are recorded as failed rows.
BenchResult RunBench(const BenchConfig& config);
std::string BenchCsv(const BenchResult& result);

}  // namespace curvknap

#endif  // CURVKNAP_BENCH_H_
