// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + FRACNOISE_CLI + std::string(" ") + args + " 2>/dev/null";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fracnoise_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out(const std::string& sub = "") const { return " --out-dir " + (dir_ / sub).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, RhoOfTemperedKernel) {
  const Outcome r = run("rho --kernel tempered --alpha 0.5 --eta 1" + out());
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.out), 1.5, 1e-3);
  const json j = json::parse(slurp(dir_ / "rho.json"));
  EXPECT_DOUBLE_EQ(j["closed_form"].get<double>(), 1.5);
}

TEST_F(Cli, ConditionsMatchExampleInequalities) {
  // l = 2, m = 1, alpha = 1: shift alpha (l - 1) / 4m = 1/4; with beta = 1,
  // H = 0.75, theta = 0.2 every window and threshold is satisfied:
  //   existence  0.25 < 1 < 1.25,  1 > 1 - 0.75 - 0.25
  //   time       0.45 < 1 < 1.25,  1 > 1 - 0.75 + 0.2 - 0.25
  //   space      0.25 < 1 < 1.25,  1 > 1 - 0.75 + 0.1 - 0.25
  const Outcome r = run("conditions --model example --l 2 --m 1 --alpha 1 --beta 1 --H 0.75 --theta 0.2" + out());
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["existence"].get<bool>());
  EXPECT_TRUE(j["time"].get<bool>());
  EXPECT_TRUE(j["space"].get<bool>());
  // beta = 0.4 with H = 0.75, theta = 0.2: time window needs beta > 0.45.
  const json k = json::parse(run("conditions --l 2 --m 1 --alpha 1 --beta 0.4 --H 0.75 --theta 0.2" + out()).out);
  EXPECT_TRUE(k["existence"].get<bool>());
  EXPECT_FALSE(k["time"].get<bool>());
  EXPECT_TRUE(k["space"].get<bool>());
}

TEST_F(Cli, Alpha2LocalCondition) {
  // 1.1 + 2 * 3 * (0.6 - 1) = -1.3 < 1
  const json j = json::parse(run("conditions --l 1.1 --m 3 --alpha 2 --beta 0.6 --N 500" + out()).out);
  EXPECT_FALSE(j["local_existence"].get<bool>());
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("variance --H 1.2" + out()).code, 1);
  EXPECT_EQ(run("variance --no-such-flag 1" + out()).code, 1);
  EXPECT_EQ(run("frobnicate" + out()).code, 1);
  EXPECT_EQ(run("fundamental --alpha 2.5 --beta 1" + out()).code, 1);
  EXPECT_EQ(run("conditions --l 0.5" + out()).code, 1);
  EXPECT_EQ(run("fundamental --alpha 0.5 --beta 0.3 --mu 1e300 --step 0.1 --horizon 1" + out()).code, 2);
  std::ofstream(dir_ / "bad.json") << "{\"H\": ";
  EXPECT_EQ(run("variance --config " + (dir_ / "bad.json").string() + out()).code, 1);
}

TEST_F(Cli, FlagsOverrideConfig) {
  std::ofstream(dir_ / "cfg.json") << R"({"model": {"N": 3}, "dynamics": {"alpha": 1.0, "beta": 1.0},
    "H": 0.6, "grid": {"step": 0.0625, "horizon": 1.0}, "mc": {"replicates": 50, "seed": 7}})";
  const Outcome r = run("simulate --config " + (dir_ / "cfg.json").string() + " --replicates 10" + out());
  ASSERT_EQ(r.code, 0);
  const json m = json::parse(slurp(dir_ / "simulate.manifest.json"));
  EXPECT_EQ(m["config"]["mc"]["replicates"].get<int>(), 10);
  EXPECT_EQ(m["config"]["mc"]["seed"].get<int>(), 7);
  EXPECT_EQ(m["seed"].get<int>(), 7);
  EXPECT_EQ(m["config"]["model"]["l"].get<double>(), 2.0);  // default kept
  EXPECT_TRUE(m["versions"].contains("fftw"));
  EXPECT_EQ(json::parse(slurp(dir_ / "simulate.json"))["replicates"].get<int>(), 10);
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  const Outcome r = run("rho --kernel exponential", "cd " + dir_.string() + " && FRACNOISE_OUTPUT_DIR=" + (dir_ / "env").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "env" / "rho.json"));
  EXPECT_TRUE(fs::exists(dir_ / "env" / "rho.manifest.json"));
}

TEST_F(Cli, CsvColumnContracts) {
  ASSERT_EQ(run("resolvent --mu 2 --step 0.125 --horizon 1" + out()).code, 0);
  std::ifstream f(dir_ / "resolvent.csv");
  std::string header, first, second;
  std::getline(f, header);
  std::getline(f, first);
  std::getline(f, second);
  EXPECT_EQ(header, "t,value");
  EXPECT_EQ(first, "0,1");
  EXPECT_EQ(second.substr(0, 6), "0.125,");

  ASSERT_EQ(run("fundamental --step 0.25 --horizon 1" + out()).code, 0);
  std::ifstream g(dir_ / "fundamental.csv");
  std::getline(g, header);
  EXPECT_EQ(header, "t,value");

  ASSERT_EQ(run("holder --N 3 --replicates 20 --step 0.03125 --horizon 2 --lags 4,8 --separations 0.1,0.2" + out()).code, 0);
  for (const char* name : {"holder_time.csv", "holder_space.csv"}) {
    std::ifstream h(dir_ / name);
    std::getline(h, header);
    EXPECT_EQ(header, "lag,value,stderr") << name;
  }
  ASSERT_EQ(run("simulate --N 2 --replicates 2 --step 0.25 --horizon 1 --xi 1" + out()).code, 0);
  std::ifstream s(dir_ / "simulate_modes.csv");
  std::getline(s, header);
  EXPECT_EQ(header, "t,value,mode,replicate");
  std::ifstream x(dir_ / "simulate_field.csv");
  std::getline(x, header);
  EXPECT_EQ(header, "t,xi,value,replicate");
}

TEST_F(Cli, FormatSelection) {
  ASSERT_EQ(run("resolvent --step 0.25 --horizon 1 --format csv" + out()).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "resolvent.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "resolvent.json"));
  EXPECT_EQ(run("resolvent --format xml" + out()).code, 1);
}

TEST_F(Cli, SimulateIsIndependentOfWorkerCount) {
  const std::string args = "simulate --N 6 --replicates 40 --step 0.03125 --horizon 1 --seed 5";
  ASSERT_EQ(run(args + " --workers 1" + out("a")).code, 0);
  ASSERT_EQ(run(args + " --workers 4" + out("b")).code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "simulate_modes.csv"), slurp(dir_ / "b" / "simulate_modes.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "simulate.json"), slurp(dir_ / "b" / "simulate.json"));
}

TEST_F(Cli, VerifySubsetReportsAndExitCode) {
  const Outcome r = run("verify --suite 1,2,7 --seed 42" + out());
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(slurp(dir_ / "verify.json"));
  EXPECT_EQ(j["total"].get<int>(), 3);
  EXPECT_TRUE(j["all_pass"].get<bool>());
  EXPECT_EQ(run("verify --suite 16" + out()).code, 1);
}

TEST_F(Cli, VerifyAllIsByteIdenticalAcrossRuns) {
  const Outcome a = run("verify --suite all --seed 42" + out("a"));
  const Outcome b = run("verify --suite all --seed 42" + out("b"));
  const json j = json::parse(slurp(dir_ / "a" / "verify.json"));
  EXPECT_EQ(a.code, j["all_pass"].get<bool>() ? 0 : 3);
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(slurp(dir_ / "a" / "verify.json"), slurp(dir_ / "b" / "verify.json"));
}
