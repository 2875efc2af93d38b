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

// curvknap: generate instances, run algorithms, sweep benchmarks and run
// invariant suites.
//
// Exit codes: 0 success, 1 failed invariant suite or internal error,
// 2 usage, 3 input, 4 capability (size / mode mismatch).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curvknap/bench.h"
#include "curvknap/instance_io.h"
#include "curvknap/knapsack.h"
#include "curvknap/verify.h"
#include "json.hpp"

namespace {

using curvknap::BenchConfig;
using curvknap::CapabilityError;
using curvknap::InputError;
using curvknap::UsageError;

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitCapability = 4;

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed for " + path);
}

void AppendCsvRow(const std::string& path, const std::string& row) {
  const bool fresh = !std::filesystem::exists(path) ||
                     std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw InputError("cannot write " + path);
  if (fresh) out << curvknap::CsvHeader() << "\n";
  out << row << "\n";
}

struct GenerateArgs {
  curvknap::GenerateSpec spec;
  std::string out;
};

struct SolveArgs {
  std::string instance;
  std::string algorithm = "dispatch";
  std::vector<std::string> modes;
  double epsilon = -1.0;
  uint64_t seed = 0;
  uint64_t profile_budget = 1000000;
  std::string out_csv;
  std::string out_json;
};

struct BenchArgs {
  std::string config;
  std::vector<std::string> instances;
  std::vector<std::string> algorithms;
  std::vector<std::string> modes;
  std::vector<double> epsilons;
  std::vector<uint64_t> seeds;
  int trials = 0;
  int jobs = 0;
  std::string out_csv;
  std::string out_json;
};

struct VerifyArgs {
  std::string suite;
  uint64_t seed = 0;
};

int RunGenerate(const GenerateArgs& args) {
  const curvknap::Instance instance = curvknap::GenerateInstance(args.spec);
  if (args.out.empty()) {
    std::cout << curvknap::SerializeInstance(instance);
  } else {
    curvknap::SaveInstance(instance, args.out);
  }
  return 0;
}

int RunSolve(const SolveArgs& args) {
  const curvknap::Instance instance = curvknap::LoadInstance(args.instance);
  double epsilon = args.epsilon;
  if (epsilon < 0.0) epsilon = instance.epsilon.value_or(0.25);
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw UsageError("epsilon must lie in (0, 1)");
  }
  curvknap::DriverOptions options =
      curvknap::ResolveModes(args.modes, instance.n, args.seed);
  options.profile_budget = args.profile_budget;
  const curvknap::RunReport report =
      curvknap::RunAlgorithm(instance, args.algorithm, options, epsilon);
  const std::string json = curvknap::ToJson(report).dump(2) + "\n";
  std::cout << json;
  if (!args.out_json.empty()) WriteFile(args.out_json, json);
  if (!args.out_csv.empty()) {
    const std::string id =
        std::filesystem::path(args.instance).stem().string();
    AppendCsvRow(args.out_csv, curvknap::CsvRow(id, report));
  }
  return 0;
}

int RunBenchCommand(const BenchArgs& args) {
  BenchConfig config;
  if (!args.config.empty()) {
    std::ifstream in(args.config);
    if (!in) throw InputError("cannot read " + args.config);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("bench config is not valid JSON: ") +
                       e.what());
    }
    config = curvknap::BenchConfigFromJson(doc);
  }
  if (!args.instances.empty()) {
    config.instances.clear();
    for (const std::string& path : args.instances) {
      config.instances.emplace_back(path);
    }
  }
  if (!args.algorithms.empty()) config.algorithms = args.algorithms;
  if (!args.modes.empty()) config.modes = args.modes;
  if (!args.epsilons.empty()) config.epsilons = args.epsilons;
  if (!args.seeds.empty()) config.seeds = args.seeds;
  if (args.trials > 0) config.trials = args.trials;
  if (args.jobs > 0) config.jobs = args.jobs;
  if (!args.out_csv.empty()) config.out_csv = args.out_csv;
  if (!args.out_json.empty()) config.out_json = args.out_json;

  const curvknap::BenchResult result = curvknap::RunBench(config);
  const std::string csv = curvknap::BenchCsv(result);
  const std::string json = result.summary.dump(2) + "\n";
  if (!config.out_csv.empty()) {
    WriteFile(config.out_csv, csv);
  } else {
    std::cout << csv;
  }
  if (!config.out_json.empty()) {
    WriteFile(config.out_json, json);
  } else if (!config.out_csv.empty()) {
    std::cout << json;
  }
  return 0;
}

int RunVerify(const VerifyArgs& args) {
  const curvknap::SuiteReport report =
      curvknap::RunSuite(args.suite, args.seed);
  std::cout << report.ToJson().dump(2) << "\n";
  return report.passed() ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knapsack-constrained submodular maximization with curvature"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("--type", gen.spec.type, "coverage | budget | explicit")
      ->check(CLI::IsMember({"coverage", "budget", "explicit"}));
  generate->add_option("--n", gen.spec.n, "Elements (coverage, explicit)");
  generate->add_option("--seed", gen.spec.seed);
  generate->add_option("--epsilon", gen.spec.epsilon);
  generate->add_option("--curvature", gen.spec.curvature,
                       "Exact total curvature target for coverage");
  generate->add_option("--universe", gen.spec.universe);
  generate->add_option("--density", gen.spec.density);
  generate->add_option("--channels", gen.spec.channels);
  generate->add_option("--customers", gen.spec.customers);
  generate->add_option("--max-capacity", gen.spec.max_capacity);
  generate->add_option("--out", gen.out, "Output path (stdout if omitted)");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Run one algorithm");
  solve->add_option("--instance", solve_args.instance)->required();
  solve->add_option("--algorithm", solve_args.algorithm)
      ->check(CLI::IsMember(curvknap::AlgorithmNames()));
  solve->add_option("--mode", solve_args.modes,
                    "exact | sampled | known-O | enumerate | heuristic "
                    "(repeatable)");
  solve->add_option("--epsilon", solve_args.epsilon);
  solve->add_option("--seed", solve_args.seed);
  solve->add_option("--profile-budget", solve_args.profile_budget);
  solve->add_option("--out-csv", solve_args.out_csv, "Append a CSV row");
  solve->add_option("--out-json", solve_args.out_json);

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Full-factorial sweep");
  bench->add_option("--config", bench_args.config, "JSON config file");
  bench->add_option("--instance", bench_args.instances);
  bench->add_option("--algorithm", bench_args.algorithms)
      ->check(CLI::IsMember(curvknap::AlgorithmNames()));
  bench->add_option("--mode", bench_args.modes);
  bench->add_option("--epsilon", bench_args.epsilons);
  bench->add_option("--seed", bench_args.seeds);
  bench->add_option("--trials", bench_args.trials);
  bench->add_option("--jobs", bench_args.jobs);
  bench->add_option("--out-csv", bench_args.out_csv);
  bench->add_option("--out-json", bench_args.out_json);

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("--suite,suite", verify_args.suite)->required();
  verify->add_option("--seed", verify_args.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (generate->parsed()) return RunGenerate(gen);
    if (solve->parsed()) return RunSolve(solve_args);
    if (bench->parsed()) return RunBenchCommand(bench_args);
    if (verify->parsed()) return RunVerify(verify_args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
