// Copyright 2026 The fbauction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the fbauction binary end to end.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kCli = FBA_CLI_PATH;
const fs::path kFixtures = FBA_FIXTURES_DIR;

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome RunCli(const std::string& args) {
  Outcome o;
  const std::string cmd = "'" + kCli + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return o;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) o.out.append(buf, n);
  int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("fbauction_cli_" + std::string(
                                   ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, SolveWritesArtifacts) {
  Outcome o = RunCli("solve --example 1 --eta-kind harmonic --eta-c 1 --max-iters 2000 "
                     "--check-interval 500 --out '" + dir_.string() + "'");
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("epsilon"), std::string::npos);

  json cert = json::parse(ReadFile(dir_ / "certificate.json"));
  EXPECT_EQ(cert["gaps"].size(), 4u);
  EXPECT_EQ(cert["iterations"].get<int>(), 2000);
  EXPECT_EQ(cert["config_echo"]["schedule"]["c"].get<double>(), 1.0);

  json manifest = json::parse(ReadFile(dir_ / "manifest.json"));
  EXPECT_EQ(manifest["epsilon"].get<double>(), cert["epsilon"].get<double>());
  EXPECT_EQ(manifest["trajectory"].size(), 4u);
  EXPECT_EQ(manifest["instance_definition"]["values"].size(), 4u);

  // 4 agents x 401 bids, header included.
  std::istringstream csv(ReadFile(dir_ / "strategies.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "agent_id,bid,pdf,cdf");
  int rows = 0;
  double last_cdf = 0.0;
  while (std::getline(csv, line)) {
    ++rows;
    last_cdf = std::stod(line.substr(line.rfind(',') + 1));
  }
  EXPECT_EQ(rows, 4 * 401);
  EXPECT_NEAR(last_cdf, 1.0, 1e-12);

  std::istringstream payoffs(ReadFile(dir_ / "payoffs.csv"));
  std::getline(payoffs, line);
  EXPECT_EQ(line, "agent_id,bid,expected_payoff");
}

TEST_F(CliTest, VerifyReproducesEpsilon) {
  ASSERT_EQ(RunCli("solve --example 2 --eta-c 1 --max-iters 1000 --out '" + dir_.string() + "'")
                .code,
            0);
  json cert = json::parse(ReadFile(dir_ / "certificate.json"));
  Outcome o = RunCli("verify --example 2 --strategies '" + (dir_ / "strategies.csv").string() +
                     "'");
  ASSERT_EQ(o.code, 0);
  json again = json::parse(o.out);
  EXPECT_NEAR(again["epsilon"].get<double>(), cert["epsilon"].get<double>(), 1e-12);
}

TEST_F(CliTest, VerifyRejectsMismatchedStrategies) {
  ASSERT_EQ(RunCli("solve --example 2 --eta-c 1 --max-iters 10 --out '" + dir_.string() + "'")
                .code,
            0);
  const std::string strategies = (dir_ / "strategies.csv").string();
  // Example 1 has a different grid and agent count.
  EXPECT_EQ(RunCli("verify --example 1 --strategies '" + strategies + "'").code, 2);
  std::ofstream(dir_ / "garbage.csv") << "agent_id,bid,pdf,cdf\n0,0,abc,0\n";
  EXPECT_EQ(RunCli("verify --example 2 --strategies '" + (dir_ / "garbage.csv").string() + "'")
                .code,
            2);
  EXPECT_EQ(RunCli("verify --example 2 --strategies '" + (dir_ / "missing.csv").string() + "'")
                .code,
            2);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(RunCli("solve --file '" + (kFixtures / "malformed.json").string() + "' --out '" +
                   dir_.string() + "'")
                .code,
            1);
  EXPECT_EQ(RunCli("solve --file '" + (kFixtures / "bad_probabilities.json").string() +
                   "' --out '" + dir_.string() + "'")
                .code,
            2);
  EXPECT_EQ(RunCli("solve --example 1 --eta-c 3 --out '" + dir_.string() + "'").code, 2);
  EXPECT_EQ(RunCli("solve --out '" + dir_.string() + "'").code, 1);
  EXPECT_EQ(RunCli("frobnicate").code, 1);
  // An unreachable target after a short run.
  EXPECT_EQ(RunCli("solve --example 1 --eta-c 1 --max-iters 100 --check-interval 50 "
                   "--eps-target 1e-9 --out '" + dir_.string() + "'")
                .code,
            3);
}

TEST_F(CliTest, FileSolveUsesSolverBlockAndRecordsHash) {
  Outcome o = RunCli("solve --file '" + (kFixtures / "example5.json").string() +
                     "' --max-iters 500 --out '" + dir_.string() + "'");
  ASSERT_EQ(o.code, 0);
  json manifest = json::parse(ReadFile(dir_ / "manifest.json"));
  EXPECT_TRUE(manifest["config"]["independent_player_cache"].get<bool>());
  EXPECT_EQ(manifest["config"]["max_iterations"].get<int>(), 500);
  EXPECT_EQ(manifest["instance"]["source"], "file");
  EXPECT_EQ(manifest["instance"]["fnv1a64"].get<std::string>().size(), 16u);
}

TEST_F(CliTest, BatchWritesOneRowPerSeed) {
  Outcome o = RunCli("batch --seed-from 1 --seed-to 3 --eta-c 1 --max-iters 200 --out '" +
                     dir_.string() + "'");
  ASSERT_EQ(o.code, 0);
  std::istringstream csv(ReadFile(dir_ / "batch.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "seed,epsilon,duration_seconds,status");
  std::vector<std::string> rows;
  while (std::getline(csv, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].rfind("1,", 0), 0u);
  EXPECT_NE(rows[2].find(",ok"), std::string::npos);
}

TEST_F(CliTest, BatchRecordsFailuresAndContinues) {
  // One agent cannot form a pair, so every seed fails without aborting.
  Outcome o = RunCli("batch --seed-from 1 --seed-to 2 --agents 1 --max-iters 10 --out '" +
                     dir_.string() + "'");
  ASSERT_EQ(o.code, 0);
  std::string csv = ReadFile(dir_ / "batch.csv");
  EXPECT_NE(csv.find("1,,0,error"), std::string::npos) << csv;
  EXPECT_NE(csv.find("2,,0,error"), std::string::npos) << csv;
}

TEST_F(CliTest, ZeroIterationsCertifiesInitialization) {
  EXPECT_EQ(RunCli("solve --example 1 --max-iters 0 --out '" + dir_.string() + "'").code, 0);
  json cert = json::parse(ReadFile(dir_ / "certificate.json"));
  EXPECT_EQ(cert["iterations"].get<int>(), 0);
  EXPECT_GT(cert["epsilon"].get<double>(), 0.0);
  EXPECT_EQ(RunCli("solve --example 1 --max-iters 0 --eps-target 1e-6 --out '" + dir_.string() +
                   "'")
                .code,
            3);
}

TEST_F(CliTest, VerifyHandWrittenPureEquilibrium) {
  // A value-1 agent outbids a value-0 agent by one grid step.
  std::ofstream(dir_ / "pair.json")
      << R"({"values": [1, 0], "scenarios": [{"members": [0, 1], "prob": 1}],
             "grid": {"max": 1, "steps": 4}})";
  std::ofstream csv(dir_ / "pure.csv");
  csv << "agent_id,bid,pdf,cdf\n";
  const double bids[] = {0, 0.25, 0.5, 0.75, 1};
  for (int a = 0; a < 2; ++a) {
    for (int j = 0; j < 5; ++j) {
      const int at = a == 0 ? 1 : 0;
      csv << a << ',' << bids[j] << ',' << (j == at ? 1 : 0) << ',' << (j >= at ? 1 : 0) << "\n";
    }
  }
  csv.close();
  Outcome o = RunCli("verify --file '" + (dir_ / "pair.json").string() + "' --strategies '" +
                     (dir_ / "pure.csv").string() + "'");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(json::parse(o.out)["epsilon"].get<double>(), 0.0);
}

TEST_F(CliTest, BatchEmptyRangeAndRepeatedSeed) {
  ASSERT_EQ(RunCli("batch --seed-from 5 --seed-to 4 --out '" + dir_.string() + "'").code, 0);
  EXPECT_EQ(ReadFile(dir_ / "batch.csv"), "seed,epsilon,duration_seconds,status\n");

  auto row = [&](const std::string& sub) {
    RunCli("batch --seed-from 7 --seed-to 7 --eta-c 1 --max-iters 300 --out '" +
           (dir_ / sub).string() + "'");
    std::istringstream csv(ReadFile(dir_ / sub / "batch.csv"));
    std::string line;
    std::getline(csv, line);
    std::getline(csv, line);
    // seed and epsilon; the duration varies between runs.
    return line.substr(0, line.find(',', line.find(',') + 1));
  };
  const std::string first = row("a");
  EXPECT_EQ(first, row("b"));
  EXPECT_EQ(first.rfind("7,", 0), 0u);
}

TEST_F(CliTest, ExportMatchesFixture) {
  Outcome o = RunCli("export --example 3");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(json::parse(o.out), json::parse(ReadFile(kFixtures / "example3.json")));
}

}  // namespace
