// Copyright 2026 The qotoc Authors
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


// Runs the installed command-line tool end to end.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  const std::string cmd = std::string(QOTOC_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qotoc_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

const char* kSampled = R"({"system_size": 3, "initial_state": "010", "observable_a": "XII", "observable_b": "IIZ",
  "times": [0, 0.5, 1.0], "phis": 0.7, "mode": "sampled", "trials": 500, "seed": 5})";

TEST_F(Cli, RunWritesCsvAndEcho) {
  const auto cfg = write("cfg.json", kSampled);
  const auto out = dir_ / "out.csv";
  ASSERT_EQ(run("run --config " + cfg.string() + " --out " + out.string()), 0);
  const std::string csv = slurp(out);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,re_value,im_value,re_stderr,im_stderr,rms_bound,mode,trials,seed");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  ASSERT_TRUE(fs::exists(dir_ / "out.config.json"));

  // Running the echo reproduces the CSV byte for byte.
  const auto out2 = dir_ / "again.csv";
  ASSERT_EQ(run("run --config " + (dir_ / "out.config.json").string() + " --out " + out2.string()), 0);
  EXPECT_EQ(slurp(out2), csv);
}

TEST_F(Cli, FlagsOverrideTheConfigAndThreadsDoNotMatter) {
  const auto cfg = write("cfg.json", kSampled);
  const std::string base = "run --config " + cfg.string() + " --seed 11 --trials 800";
  ASSERT_EQ(run(base + " --out " + (dir_ / "a.csv").string()), 0);
  ASSERT_EQ(run(base + " --threads 3 --out " + (dir_ / "b.csv").string()), 0);
  EXPECT_EQ(slurp(dir_ / "a.csv"), slurp(dir_ / "b.csv"));
  EXPECT_NE(slurp(dir_ / "a.csv").find(",sampled,800,11\n"), std::string::npos);
  const std::string echo = slurp(dir_ / "a.config.json");
  EXPECT_NE(echo.find("\"seed\": 11"), std::string::npos);

  ASSERT_EQ(run("run --config " + cfg.string() + " --mode exact --out " + (dir_ / "c.csv").string()), 0);
  EXPECT_NE(slurp(dir_ / "c.csv").find(",exact,0,5\n"), std::string::npos);
}

TEST_F(Cli, ValidationErrorsExitWithOne) {
  EXPECT_EQ(run("run --config " + (dir_ / "missing.json").string()), 1);
  EXPECT_EQ(run("run --config " + write("bad.json", R"({"system_size": 2, "phis": 3})").string()), 1);
  EXPECT_EQ(run("run --config " + write("ok.json", kSampled).string() + " --mode fast"), 1);
  EXPECT_EQ(run("run"), 1);
  EXPECT_EQ(run("frobnicate"), 1);
}

TEST_F(Cli, VerifyExitCodes) {
  EXPECT_EQ(run("verify --samples 5 --seed 2"), 0);
  EXPECT_EQ(run("verify --samples 5 --inject-alpha-sign-fault"), 2);
  EXPECT_EQ(run("verify --samples 0"), 1);
}

}  // namespace
