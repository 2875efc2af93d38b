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

#include <string>
#include <vector>

#include "curvknap/bench.h"
#include "curvknap/instance_io.h"
#include "gtest/gtest.h"

namespace curvknap {
namespace {

constexpr char kPair[] = R"({
  "ground_set": 2,
  "weights": [0.5, 0.6],
  "function": {"type": "explicit", "values": [0, 1, 1, 1.5]},
  "epsilon": 0.25
})";

TEST(InstanceIoTest, ParsesExplicit) {
  const Instance inst = ParseInstance(kPair);
  EXPECT_EQ(inst.n, 2);
  EXPECT_EQ(inst.FunctionType(), "explicit");
  ASSERT_TRUE(inst.epsilon.has_value());
  EXPECT_DOUBLE_EQ(*inst.epsilon, 0.25);
  EXPECT_DOUBLE_EQ(inst.MakeFunction()->Value(std::vector<int>{0, 1}), 1.5);
}

TEST(InstanceIoTest, RoundTripIsByteIdentical) {
  for (const std::string type : {"coverage", "budget", "explicit"}) {
    GenerateSpec spec;
    spec.type = type;
    spec.seed = 5;
    const std::string text = SerializeInstance(GenerateInstance(spec));
    EXPECT_EQ(SerializeInstance(ParseInstance(text)), text) << type;
  }
}

TEST(InstanceIoTest, GeneratorIsDeterministic) {
  GenerateSpec spec;
  spec.seed = 9;
  EXPECT_EQ(SerializeInstance(GenerateInstance(spec)),
            SerializeInstance(GenerateInstance(spec)));
  spec.seed = 10;
  GenerateSpec other = spec;
  other.seed = 11;
  EXPECT_NE(SerializeInstance(GenerateInstance(spec)),
            SerializeInstance(GenerateInstance(other)));
}

TEST(InstanceIoTest, GeneratorRejectsEmptyGroundSet) {
  GenerateSpec spec;
  spec.n = 0;
  EXPECT_THROW(GenerateInstance(spec), UsageError);
}

TEST(InstanceIoTest, BudgetSchema) {
  GenerateSpec spec;
  spec.type = "budget";
  const Instance inst = GenerateInstance(spec);
  const nlohmann::json doc = nlohmann::json::parse(SerializeInstance(inst));
  EXPECT_EQ(doc["function"]["type"], "budget");
  EXPECT_TRUE(doc["function"]["channels"].is_array());
  EXPECT_TRUE(doc["function"]["customers"].is_array());
  EXPECT_EQ(doc["weights"].size(), static_cast<size_t>(inst.n));
}

TEST(InstanceIoTest, RejectsMalformedInput) {
  EXPECT_THROW(ParseInstance("{"), InputError);
  EXPECT_THROW(ParseInstance(R"({"ground_set": 2})"), InputError);
  EXPECT_THROW(ParseInstance(R"({
    "ground_set": 2, "weights": [0.5],
    "function": {"type": "explicit", "values": [0, 1, 1, 1.5]}})"),
               InputError);
  EXPECT_THROW(ParseInstance(R"({
    "ground_set": 2, "weights": [0.5, 1.5],
    "function": {"type": "explicit", "values": [0, 1, 1, 1.5]}})"),
               InputError);
  EXPECT_THROW(ParseInstance(R"({
    "ground_set": 2, "weights": [0.5, 0.5],
    "function": {"type": "explicit", "values": [0, 1, 1]}})"),
               InputError);
  EXPECT_THROW(ParseInstance(R"({
    "ground_set": 0, "weights": [],
    "function": {"type": "explicit", "values": [0]}})"),
               InputError);
  EXPECT_THROW(ParseInstance(R"({
    "ground_set": 1, "weights": [0.5],
    "function": {"type": "mystery"}})"),
               InputError);
}

TEST(InstanceIoTest, LoadMissingFile) {
  EXPECT_THROW(LoadInstance("/nonexistent/instance.json"), InputError);
}

}  // namespace
}  // namespace curvknap
