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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "curvknap/instance_io.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

CommandResult RunCli(const std::string& args) {
  const std::string command =
      std::string(CURVKNAP_CLI_PATH) + " " + args + " 2>/dev/null";
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  size_t got;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.out.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(CURVKNAP_TEST_TMP) /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }

  std::string Write(const std::string& name, const std::string& text) const {
    std::ofstream(Path(name)) << text;
    return Path(name);
  }

  fs::path dir_;
};

constexpr char kPair[] = R"({"ground_set": 2, "weights": [0.4, 0.5],
  "function": {"type": "explicit", "values": [0, 1, 1, 1.5]}})";

// f(S) = min(|S|, 1) has total curvature 1.
constexpr char kRank[] = R"({"ground_set": 3, "weights": [0.3, 0.4, 0.5],
  "function": {"type": "explicit", "values": [0, 1, 1, 1, 1, 1, 1, 1]}})";

TEST_F(CliTest, GenerateRoundTrips) {
  const std::string out = Path("cov.json");
  ASSERT_EQ(RunCli("generate --type coverage --n 8 --seed 4 --out " + out)
                .exit_code,
            0);
  const std::string text = ReadFile(out);
  EXPECT_EQ(curvknap::SerializeInstance(curvknap::ParseInstance(text)), text);
  const CommandResult budget = RunCli("generate --type budget --seed 4");
  ASSERT_EQ(budget.exit_code, 0);
  EXPECT_EQ(curvknap::ParseInstance(budget.out).FunctionType(), "budget");
}

TEST_F(CliTest, GenerateRejectsEmptyGroundSet) {
  EXPECT_EQ(RunCli("generate --n 0").exit_code, 2);
}

TEST_F(CliTest, SolveBrute) {
  const std::string path = Write("pair.json", kPair);
  const CommandResult r = RunCli("solve --algorithm brute --instance " + path);
  ASSERT_EQ(r.exit_code, 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["set"], nlohmann::json::array({0, 1}));
  EXPECT_DOUBLE_EQ(j["objective"].get<double>(), 1.5);
}

TEST_F(CliTest, DispatchRoutesHighCurvature) {
  const std::string path = Write("rank.json", kRank);
  const CommandResult r =
      RunCli("solve --algorithm dispatch --epsilon 0.1 --instance " + path);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["algorithm"], "dispatch:sviridenko");
}

TEST_F(CliTest, SolveIsDeterministic) {
  const std::string path = Path("c.json");
  ASSERT_EQ(RunCli("generate --n 8 --curvature 0.3 --seed 2 --out " + path)
                .exit_code,
            0);
  for (const std::string alg : {"curvature", "dispatch", "greedy"}) {
    const std::string args =
        "solve --algorithm " + alg + " --seed 7 --instance " + path;
    const CommandResult a = RunCli(args);
    const CommandResult b = RunCli(args);
    ASSERT_EQ(a.exit_code, 0) << alg;
    EXPECT_EQ(a.out, b.out) << alg;
  }
}

TEST_F(CliTest, SolveWritesCsvWithHeader) {
  const std::string path = Write("pair.json", kPair);
  const std::string csv = Path("rows.csv");
  for (int i = 0; i < 2; ++i) {
    ASSERT_EQ(RunCli("solve --algorithm greedy --instance " + path +
                  " --out-csv " + csv)
                  .exit_code,
              0);
  }
  std::istringstream lines(ReadFile(csv));
  std::string line;
  int count = 0;
  std::getline(lines, line);
  EXPECT_EQ(line,
            "instance-id,algorithm,mode,seed,objective,weight,oracle-calls,"
            "wall-time-ms");
  while (std::getline(lines, line)) {
    EXPECT_EQ(line.rfind("pair,greedy,", 0), 0u);
    ++count;
  }
  EXPECT_EQ(count, 2);
}

TEST_F(CliTest, ExitCodes) {
  const std::string bad = Write("bad.json", "{ not json");
  EXPECT_EQ(RunCli("solve --instance " + bad).exit_code, 3);
  EXPECT_EQ(RunCli("solve --instance " + Path("missing.json")).exit_code, 3);
  EXPECT_EQ(RunCli("frobnicate").exit_code, 2);
  EXPECT_EQ(RunCli("solve").exit_code, 2);
  const std::string pair = Write("pair.json", kPair);
  EXPECT_EQ(RunCli("solve --algorithm nope --instance " + pair).exit_code, 2);
  EXPECT_EQ(RunCli("solve --mode exact --mode sampled --instance " + pair)
                .exit_code,
            2);
  const std::string big = Path("big.json");
  ASSERT_EQ(RunCli("generate --n 14 --out " + big).exit_code, 0);
  EXPECT_EQ(RunCli("solve --algorithm curvature --mode known-O --instance " + big)
                .exit_code,
            4);
  EXPECT_EQ(RunCli("verify --suite no-such-suite").exit_code, 2);
}

TEST_F(CliTest, VerifySuites) {
  const CommandResult grid = RunCli("verify --suite grid-coverage");
  ASSERT_EQ(grid.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(grid.out)["passed"], true);
  const CommandResult disc = RunCli("verify discretization-lemma --seed 3");
  ASSERT_EQ(disc.exit_code, 0);
  const nlohmann::json j = nlohmann::json::parse(disc.out);
  uint64_t checks = 0;
  for (const auto& c : j["invariants"]) checks += c["checks"].get<uint64_t>();
  EXPECT_EQ(checks, 1000u);
}

TEST_F(CliTest, BenchFactorial) {
  const std::string config = Write("bench.json", R"({
    "instances": [{"type": "coverage", "n": 6, "seed": 1},
                  {"type": "coverage", "n": 7, "seed": 2},
                  {"type": "budget", "seed": 3}],
    "algorithms": ["brute", "greedy"],
    "seeds": [0, 1],
    "jobs": 2})");
  const std::string csv = Path("bench.csv");
  const std::string json = Path("bench.json.out");
  ASSERT_EQ(RunCli("bench --config " + config + " --out-csv " + csv +
                " --out-json " + json)
                .exit_code,
            0);
  std::istringstream lines(ReadFile(csv));
  std::string line;
  int rows = -1;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 12);
  const nlohmann::json summary = nlohmann::json::parse(ReadFile(json));
  EXPECT_EQ(summary["rows"].size(), 12u);
  for (const auto& cell : summary["cells"]) {
    if (cell["algorithm"] == "brute") {
      EXPECT_DOUBLE_EQ(cell["mean_ratio"].get<double>(), 1.0);
    } else {
      EXPECT_LE(cell["mean_ratio"].get<double>(), 1.0 + 1e-12);
    }
  }
  // Same config, one worker: identical JSON.
  const std::string json1 = Path("bench1.json.out");
  ASSERT_EQ(RunCli("bench --config " + config + " --jobs 1 --out-csv " +
                Path("b1.csv") + " --out-json " + json1)
                .exit_code,
            0);
  EXPECT_EQ(ReadFile(json), ReadFile(json1));
}

TEST_F(CliTest, BenchCurvatureRatioOnLowCurvature) {
  const std::string config = Write("bench.json", R"({
    "instances": [{"type": "coverage", "n": 8, "seed": 1, "curvature": 0.1},
                  {"type": "coverage", "n": 8, "seed": 2, "curvature": 0.2},
                  {"type": "coverage", "n": 8, "seed": 3, "curvature": 0.25}],
    "algorithms": ["curvature"],
    "modes": ["known-O+exact"],
    "seeds": [0, 1, 2, 3, 4, 5, 6, 7, 8, 9]})");
  ASSERT_EQ(RunCli("bench --config " + config + " --out-csv " +
                   Path("c.csv") + " --out-json " + Path("s.json"))
                .exit_code,
            0);
  const nlohmann::json summary =
      nlohmann::json::parse(ReadFile(Path("s.json")));
  ASSERT_EQ(summary["cells"].size(), 3u);
  for (const auto& cell : summary["cells"]) {
    EXPECT_GE(cell["mean_ratio"].get<double>(),
              cell["curvature_bound"].get<double>())
        << cell["instance_id"];
  }
}

TEST_F(CliTest, BenchRecordsFailedRows) {
  const std::string config = Write("bench.json", R"({
    "instances": ["/nonexistent.json", {"type": "coverage", "n": 5}],
    "algorithms": ["greedy"]})");
  const CommandResult r =
      RunCli("bench --config " + config + " --out-json " + Path("s.json"));
  ASSERT_EQ(r.exit_code, 0);
  const nlohmann::json summary = nlohmann::json::parse(ReadFile(Path("s.json")));
  int failed = 0;
  for (const auto& row : summary["rows"]) failed += row["ok"] ? 0 : 1;
  EXPECT_EQ(failed, 1);
}

}  // namespace
