// Copyright 2026 The riskfree Authors
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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"

namespace riskfree::cli {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun Invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"riskfree"};
  storage.insert(storage.end(), args);
  std::vector<const char*> argv;
  for (const std::string& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Fixture(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("riskfree_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(CliTest, RequiresSubcommand) {
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
}

TEST(CliTest, Tables) {
  const CliRun r = Invoke({"tables", "--m", "3", "--b", "0.2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "0.511111111111\n");
  EXPECT_EQ(Invoke({"tables", "--m", "1", "--b", "0.25"}).out, "0.75\n");
  EXPECT_EQ(Invoke({"tables", "--m", "4", "--b", "0.2"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"tables", "--m", "2", "--b", "-1"}).code, kExitUsage);
}

TEST(CliTest, SolveUniformWritesCsvAndJson) {
  const fs::path dir = ScratchDir("solve");
  const fs::path csv = dir / "f2.csv";
  const fs::path json = dir / "f2.json";
  const CliRun r = Invoke({"solve-uniform", "--m", "2", "--dump-csv", csv.string(),
                        "--json", json.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("mode exact"), std::string::npos);
  EXPECT_EQ(Slurp(csv), "x,value\n0,1\n0.25,0.5\n0.5,0.25\n1,0\n");
  const nlohmann::json j = nlohmann::json::parse(Slurp(json));
  EXPECT_FALSE(j.empty());
  EXPECT_EQ(Invoke({"solve-uniform", "--m", "0"}).code, kExitUsage);
}

TEST(CliTest, Oracle) {
  const CliRun r = Invoke({"oracle", "--m", "2", "--b", "0.3", "--delta", "0.01"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("exact 0.45"), std::string::npos);
  EXPECT_EQ(Invoke({"oracle", "--m", "2", "--b", "0.3", "--delta", "0.01",
                    "--leader", "nobody"})
                .code,
            kExitUsage);
  EXPECT_EQ(Invoke({"oracle", "--m", "2", "--b", "0.305", "--delta", "0.01"})
                .code,
            kExitUsage);
}

TEST(CliTest, Qp) {
  const CliRun r = Invoke({"qp", "--gamma-star", "0.5,0.5", "--b", "0.5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("value 0.125"), std::string::npos);
  EXPECT_EQ(Invoke({"qp", "--gamma-star", "0.5,0.5", "--b", "1.5"}).code,
            kExitUsage);
  EXPECT_EQ(Invoke({"qp", "--gamma-star", "0.5,x", "--b", "0.5"}).code,
            kExitUsage);
}

TEST(CliTest, PassingScenariosExitZero) {
  for (const char* name :
       {"seq_xos_sqrt.json", "seq_low_budget.json", "seq_high_budget.json",
        "seq_alpha_tilde.json", "seq_constant_price.json",
        "seq_s_adversary.json", "seq_simulation.json", "seq_second_price.json",
        "simul_second_price.json", "simul_randomized.json",
        "simul_randomized_draws.json", "simul_pure_counter.json",
        "simul_resolution.json"}) {
    const CliRun r = Invoke({"simulate", "--scenario", Fixture(name)});
    EXPECT_EQ(r.code, kExitOk) << name << ": " << r.err;
    EXPECT_NO_THROW((void)nlohmann::json::parse(r.out)) << name;
  }
}

TEST(CliTest, OutOfRangePolicyWarns) {
  const CliRun quiet =
      Invoke({"simulate", "--scenario", Fixture("seq_low_budget.json")});
  EXPECT_FALSE(nlohmann::json::parse(quiet.out).contains("warnings"));
  const CliRun r = Invoke(
      {"simulate", "--scenario", Fixture("seq_low_budget_warning.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.contains("warnings"));
  EXPECT_EQ(j["warnings"].size(), 1u);
  EXPECT_NEAR(j["profit"].get<double>(), 0.4, 1e-9);
}

TEST(CliTest, ViolationExitsTwo) {
  const CliRun r = Invoke({"simulate", "--scenario", Fixture("violation.json")});
  EXPECT_EQ(r.code, kExitViolation);
}

TEST(CliTest, BadScenariosExitOne) {
  for (const char* name : {"bad_policy.json", "bad_key.json",
                           "bad_domain.json", "malformed.json",
                           "does_not_exist.json"}) {
    const CliRun r = Invoke({"simulate", "--scenario", Fixture(name)});
    EXPECT_EQ(r.code, kExitUsage) << name;
    EXPECT_FALSE(r.err.empty()) << name;
  }
}

TEST(CliTest, ScenarioReportIsByteIdentical) {
  const fs::path dir = ScratchDir("determinism");
  for (const char* name : {"seq_simulation.json", "simul_qp_mc.json"}) {
    const fs::path a = dir / "a.json";
    const fs::path b = dir / "b.json";
    ASSERT_EQ(Invoke({"simulate", "--scenario", Fixture(name), "--out",
                      a.string()})
                  .code,
              kExitOk);
    ASSERT_EQ(Invoke({"simulate", "--scenario", Fixture(name), "--out",
                      b.string()})
                  .code,
              kExitOk);
    const std::string first = Slurp(a);
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, Slurp(b)) << name;
  }
}

TEST(CliTest, VerifyAndFigures) {
  const CliRun v = Invoke({"verify", "--suite", "simul", "--m-max", "4",
                        "--instances", "5", "--mc-samples", "1000"});
  EXPECT_EQ(v.code, kExitOk) << v.out;
  EXPECT_NE(v.out.find("all checks passed"), std::string::npos);
  EXPECT_EQ(Invoke({"verify", "--suite", "bogus"}).code, kExitUsage);

  const fs::path dir = ScratchDir("figures");
  const CliRun f = Invoke({"figures", "--out", dir.string(), "--step", "0.1"});
  ASSERT_EQ(f.code, kExitOk) << f.err;
  for (const char* name : {"figure1.csv", "figure2.csv", "table1.csv"}) {
    EXPECT_TRUE(fs::exists(dir / name)) << name;
  }
  EXPECT_EQ(Slurp(dir / "figure2.csv").rfind("x,series,value\n", 0), 0u);
}

}  // namespace
}  // namespace riskfree::cli
