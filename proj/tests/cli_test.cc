/*
 * Copyright (c) 2026, The sklab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "sklab/cli/config_io.hh"
#include "sklab/cli/runner.hh"
#include "sklab/core/errors.hh"

namespace sklab {
namespace cli {
namespace {

const char* kMinimal = R"({
  "schema": 1,
  "partitions": [
    {"id": 1, "name": "A", "ports": ["out"]},
    {"id": 2, "name": "B", "ports": ["in"], "max_processes": 1}
  ],
  "channels": [{"name": "c", "mode": "queuing", "source": "out", "dest": "in"}]
})";

std::string Replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return s.replace(at, from.size(), to);
}

InvalidConfig Invalid(const std::string& text) {
  try {
    ParseConfig(text);
  } catch (const InvalidConfig& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return InvalidConfig("", "");
}

TEST(ConfigIo, MinimalConfigGetsDefaults) {
  const auto c = ParseConfig(kMinimal);
  ASSERT_EQ(c.partitions.size(), 2u);
  EXPECT_EQ(c.partitions[0].max_processes, 2);
  EXPECT_EQ(c.channels[0].capacity, 1);
  EXPECT_EQ(c.alphabet, (std::vector<int>{0, 1}));
  EXPECT_EQ(c.bounds.max_seq_len, 4);
  EXPECT_EQ(c.ports.size(), 2u);
}

TEST(ConfigIo, BaselineFileMatchesBuiltIn) {
  const auto file = LoadConfig(SKLAB_SOURCE_DIR "/configs/baseline.cfg");
  EXPECT_EQ(DumpConfig(file), DumpConfig(arinc::BaselineConfig()));
}

TEST(ConfigIo, DumpRoundTrips) {
  const auto c = arinc::BaselineConfig();
  const auto text = DumpConfig(c);
  EXPECT_EQ(DumpConfig(ParseConfig(text)), text);
}

TEST(ConfigIo, SemanticErrorsNameTheConstraint) {
  EXPECT_EQ(Invalid(Replace(kMinimal, R"("dest": "in")", R"("dest": "zz")")).constraint(),
            "channel endpoint names an unconfigured port");
  const auto same = Replace(Replace(kMinimal, R"(["out"])", R"(["out", "in"])"),
                            R"("ports": ["in"])", R"("ports": [])");
  EXPECT_EQ(Invalid(same).constraint(), "channel endpoints must belong to distinct partitions");
  EXPECT_EQ(Invalid(Replace(kMinimal, R"(["in"])", R"(["out"])")).constraint(),
            "duplicate port name 'out'");
}

TEST(ConfigIo, StructuralErrorsCarryAPath) {
  const auto bad_id = Invalid(Replace(kMinimal, R"("id": 1)", R"("id": "one")"));
  EXPECT_EQ(bad_id.constraint(), "expected an integer");
  EXPECT_EQ(bad_id.where(), "$.partitions[0].id");
  const auto unknown = Invalid(Replace(kMinimal, R"("schema": 1,)", R"("schema": 1, "extra": 0,)"));
  EXPECT_EQ(unknown.constraint(), "unknown key 'extra'");
  EXPECT_EQ(Invalid(Replace(kMinimal, R"("schema": 1)", R"("schema": 2)")).where(), "$.schema");
  const auto mode = Invalid(Replace(kMinimal, R"("queuing")", R"("fifo")"));
  EXPECT_EQ(mode.where(), "$.channels[0].mode");
  const auto cap = Invalid(Replace(kMinimal, R"("queuing",)",
                                   R"("sampling", "capacity": 2,)"));
  EXPECT_EQ(cap.constraint(), "capacity applies to queuing channels only");
}

TEST(ConfigIo, MalformedInputIsAParseError) {
  EXPECT_THROW(ParseConfig("{\"schema\": 1,"), ParseError);
  EXPECT_THROW(LoadConfig("/nonexistent/sklab.cfg"), ParseError);
}

TEST(Runner, SuiteNamesAndWorkers) {
  for (auto s : kAllSuites) EXPECT_EQ(ParseSuite(SuiteName(s)), s);
  EXPECT_FALSE(ParseSuite("nope").has_value());
  setenv("SKLAB_WORKERS", "3", 1);
  EXPECT_EQ(WorkersFromEnv(), 3);
  setenv("SKLAB_WORKERS", "junk", 1);
  EXPECT_EQ(WorkersFromEnv(), 1);
  unsetenv("SKLAB_WORKERS");
  EXPECT_EQ(WorkersFromEnv(), 1);
}

TEST(Runner, CovertReportIsDeterministicAndReplays) {
  RunManifest man;
  man.suites = {Suite::kCovert};
  man.channel = covert::VariantId::kCC4;
  const auto a = cli::Run(arinc::BaselineConfig(), man);
  man.workers = 2;
  const auto b = cli::Run(arinc::BaselineConfig(), man);
  EXPECT_TRUE(a.passed()) << a.first_failure();
  EXPECT_EQ(a.exit_code(), 0);
  EXPECT_EQ(RenderMachine(a), RenderMachine(b));
  const auto report = Json::parse(RenderMachine(a));
  EXPECT_EQ(report["schema"], kReportSchema);
  const auto r = ReplayReport(report);
  EXPECT_GT(r.witnesses, 0u);
  EXPECT_TRUE(r.ok());
  EXPECT_NE(RenderText(a).find("PASS"), std::string::npos);
}

TEST(Runner, ReplayRejectsForeignDocuments) {
  EXPECT_THROW(ReplayReport(Json::parse(R"({"schema": 9})")), ParseError);
  EXPECT_THROW(ReplayReport(Json::array()), ParseError);
}

// ---- the executable --------------------------------------------------------

int Exec(const std::string& args) {
  const std::string cmd = std::string(SKLAB_CLI) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

TEST(Executable, ExitCodes) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto bad = (dir / "sklab_bad.cfg").string();
  const auto invalid = (dir / "sklab_invalid.cfg").string();
  std::ofstream(bad) << "{ not json";
  std::ofstream(invalid) << Replace(kMinimal, R"("dest": "in")", R"("dest": "x")");
  EXPECT_EQ(Exec("--help"), 0);
  EXPECT_EQ(Exec(""), 2);
  EXPECT_EQ(Exec("frobnicate"), 2);
  EXPECT_EQ(Exec("--config " + bad + " validate"), 2);
  EXPECT_EQ(Exec("--config " + invalid + " validate"), 2);
  EXPECT_EQ(Exec("--config /nonexistent.cfg validate"), 2);
  EXPECT_EQ(Exec("covert --channel CC9"), 2);
  EXPECT_EQ(Exec("--format xml validate"), 2);
  EXPECT_EQ(Exec("replay /nonexistent.json"), 2);
  // A state budget too small for the first level fails the checks.
  EXPECT_EQ(Exec("--state-budget 10 validate"), 1);
  EXPECT_EQ(Exec("--config " + std::string(SKLAB_SOURCE_DIR) +
                 "/configs/baseline.cfg covert --channel 4"),
            0);
}

}  // namespace
}  // namespace cli
}  // namespace sklab
