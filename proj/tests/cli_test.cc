// Copyright 2026 The Unsplit Authors
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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace unsplit {
namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("unsplit_cli_" + std::string(::testing::UnitTest::GetInstance()
                                             ->current_test_info()
                                             ->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return RunCli(args, out_, err_);
  }

  void WriteFile(const std::string& name, const std::string& text) {
    std::ofstream(Path(name)) << text;
  }

  std::filesystem::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, GenerateSolveVerify) {
  ASSERT_EQ(Run({"gen", "--family", "random", "--seed", "5", "-o", Path("i.txt"),
                 "--flow-out", Path("x.txt")}),
            kExitOk);
  ASSERT_EQ(Run({"solve", Path("i.txt"), "--flow", Path("x.txt"), "-o", Path("s.txt"),
                 "--check-invariants"}),
            kExitOk);
  EXPECT_EQ(Run({"verify", Path("i.txt"), Path("s.txt"), "--flow", Path("x.txt")}), kExitOk);
  EXPECT_NE(out_.str().find("result: pass"), std::string::npos);
  EXPECT_EQ(Run({"verify", Path("i.txt"), Path("s.txt"), "--flow", Path("x.txt"), "--format",
                 "kv"}),
            kExitOk);
}

TEST_F(CliTest, SolveWithoutFlowUsesFractionalFlow) {
  ASSERT_EQ(Run({"gen", "--family", "random", "--seed", "9", "-o", Path("i.txt")}), kExitOk);
  EXPECT_EQ(Run({"solve", Path("i.txt"), "--variant", "lower"}), kExitOk);
  EXPECT_NE(out_.str().find("# variant lower"), std::string::npos);
}

TEST_F(CliTest, VerifyFailsOnBrokenSolution) {
  WriteFile("i.txt", "v s 2\nv t -2\na st s t 2\n");
  WriteFile("s.txt", "p s t 1 st\n");
  EXPECT_EQ(Run({"verify", Path("i.txt"), Path("s.txt")}), kExitCheckFailed);
}

TEST_F(CliTest, InfeasibleFractionalExitsThree) {
  WriteFile("i.txt", "v s 2\nv t -2\na st s t 1\n");
  EXPECT_EQ(Run({"fractional", Path("i.txt")}), kExitInfeasible);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, OracleOnNonintegralFamily) {
  ASSERT_EQ(Run({"gen", "--family", "nonintegral", "-o", Path("n.txt")}), kExitOk);
  EXPECT_EQ(Run({"oracle", Path("n.txt")}), kExitOk);
  EXPECT_NE(out_.str().find("feasible"), std::string::npos);
  EXPECT_EQ(Run({"oracle", Path("n.txt"), "--integral"}), kExitInfeasible);
  EXPECT_EQ(Run({"oracle", Path("n.txt"), "--integral", "--max-nodes", "1"}), kExitScaleGuard);
}

TEST_F(CliTest, RoundsSchemesAndPlanVerification) {
  ASSERT_EQ(Run({"gen", "--family", "random", "--seed", "3", "--regime", "quarter", "-o",
                 Path("i.txt"), "--flow-out", Path("x.txt")}),
            kExitOk);
  ASSERT_EQ(Run({"rounds", Path("i.txt"), "--flow", Path("x.txt"), "--scheme", "four", "-o",
                 Path("p.txt")}),
            kExitOk);
  std::ifstream plan(Path("p.txt"));
  std::string header;
  std::getline(plan, header);
  EXPECT_EQ(header.rfind("# rounds", 0), 0u);
  EXPECT_EQ(Run({"rounds", Path("i.txt"), "--flow", Path("x.txt"), "--scheme", "general"}),
            kExitOk);
}

TEST_F(CliTest, RoundsRejectsEqualDemandAndCapacity) {
  ASSERT_EQ(Run({"gen", "--family", "tightness", "--q", "3", "--k", "1", "-o", Path("t.txt"),
                 "--flow-out", Path("x.txt")}),
            kExitOk);
  EXPECT_EQ(Run({"rounds", Path("t.txt"), "--flow", Path("x.txt")}), kExitUsage);
  EXPECT_NE(err_.str().find("d_max equals c_min"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Run({"frobnicate"}), kExitUsage);
  EXPECT_EQ(Run({"solve"}), kExitUsage);
  EXPECT_EQ(Run({"solve", Path("missing.txt")}), kExitUsage);
  EXPECT_EQ(Run({"gen", "--family", "tightness", "--q", "2", "--k", "2"}), kExitUsage);
  EXPECT_EQ(Run({"--help"}), kExitOk);
}

TEST_F(CliTest, DecomposePrintsPaths) {
  WriteFile("i.txt", "v s 2\nv m 0\nv t -2\na sm s m 2\na mt m t 2\n");
  WriteFile("x.txt", "f sm 2\nf mt 2\n");
  EXPECT_EQ(Run({"decompose", Path("i.txt"), Path("x.txt")}), kExitOk);
  EXPECT_NE(out_.str().find("p s t 2 sm mt"), std::string::npos);
}

}  // namespace
}  // namespace unsplit
