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
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "riskfree/analysis.h"
#include "riskfree/closed_forms.h"
#include "riskfree/error.h"
#include "riskfree/sequential.h"
#include "riskfree/simultaneous.h"
#include "riskfree/uniform_additive.h"
#include "scenario.h"

namespace riskfree::cli {
namespace {

using nlohmann::ordered_json;

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot write '" + path + "'");
  }
  return f;
}

ordered_json Branches(const PiecewiseLinear& f) {
  ordered_json out = ordered_json::array();
  const auto xs = f.breakpoints();
  const auto ys = f.values();
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double slope = f.Slope(i);
    out.push_back({xs[i], xs[i + 1], slope, ys[i] - slope * xs[i]});
  }
  return out;
}

int SolveUniform(int m, const std::string& csv, const std::string& json_path,
                 std::ostream& out) {
  UniformAdditiveSolver solver;
  const ValueBounds& bounds = solver.Bounds(m);
  out << "m " << m << "\n";
  out << "mode " << (bounds.exact ? "exact" : "certified envelope") << "\n";
  out << "breakpoints " << bounds.upper.size() << "\n";
  if (!bounds.exact) out << "envelope gap " << FormatNumber(bounds.Gap()) << "\n";
  out << "x,lower,upper\n";
  for (int k = 0; k <= 10; ++k) {
    const double x = k / 10.0;
    out << FormatNumber(x) << "," << FormatNumber(bounds.lower(x)) << ","
        << FormatNumber(bounds.upper(x)) << "\n";
  }
  if (!csv.empty()) {
    std::ofstream f = OpenOutput(csv);
    bounds.upper.WriteCsv(f);
  }
  if (!json_path.empty()) {
    ordered_json j;
    j["m"] = m;
    j["exact"] = bounds.exact;
    j["gap"] = bounds.Gap();
    j["branch_fields"] = {"x_lo", "x_hi", "slope", "intercept"};
    j["branches"] = Branches(bounds.upper);
    OpenOutput(json_path) << j.dump(1) << "\n";
  }
  return kExitOk;
}

int Simulate(const std::string& path, const std::string& out_path,
             std::ostream& out) {
  const Scenario scenario = LoadScenario(path);
  const ordered_json report = RunScenario(scenario);
  const std::string target = out_path.empty() ? scenario.output : out_path;
  if (target.empty()) {
    out << report.dump(1) << "\n";
  } else {
    OpenOutput(target) << report.dump(1) << "\n";
    out << "method " << report["method"].get<std::string>() << "\n";
    out << "profit " << FormatNumber(report["profit"].get<double>()) << "\n";
    out << "pass " << (report["pass"].get<bool>() ? "true" : "false") << "\n";
  }
  return report["pass"].get<bool>() ? kExitOk : kExitViolation;
}

int Oracle(int m, double budget, double delta, const std::string& leader,
           const std::string& rule_name, std::ostream& out) {
  const PriceRule rule =
      rule_name == "first" ? PriceRule::kFirst : PriceRule::kSecond;
  const Leader who = leader == "adversary" ? Leader::kAdversary : Leader::kBidder;
  const Valuation v =
      AdditiveValuation(std::vector<double>(static_cast<std::size_t>(m), 1.0 / m));
  const double value = SolveDiscretized(v, budget, delta, rule, who);
  out << "value " << FormatNumber(value) << "\n";
  if (rule == PriceRule::kFirst) {
    UniformAdditiveSolver solver;
    const double exact = solver.Bounds(m).upper(budget);
    out << "exact " << FormatNumber(exact) << "\n";
    out << "gap " << FormatNumber(value - exact) << "\n";
  }
  return kExitOk;
}

int Qp(const std::vector<double>& gamma, double budget, std::uint64_t seed,
       std::ostream& out) {
  double total = 0.0;
  for (double g : gamma) total += g;
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                "gamma-star must sum to 1, got " + FormatNumber(total));
  }
  QpOptions options;
  options.seed = seed;
  const QpSolution qp = AdversaryQp(AdditiveValuation(gamma), budget, options);
  out << "value " << FormatNumber(qp.value) << "\n";
  out << "numeric_value " << FormatNumber(qp.numeric_value) << "\n";
  out << "dual_value " << FormatNumber(qp.dual_value) << "\n";
  out << "gap " << FormatNumber(std::abs(qp.numeric_value - qp.value)) << "\n";
  out << "ratios";
  for (double r : qp.ratios) out << " " << FormatNumber(r);
  out << "\n";
  return kExitOk;
}

int Verify(const std::string& suite, const VerifyOptions& options,
           const std::string& json_path, bool timing, std::ostream& out) {
  const Suite which = ParseSuite(suite);
  UniformAdditiveSolver solver;
  const std::vector<SweepReport> reports = VerifyAll(which, options, solver);
  WriteReportsText(reports, timing, out);
  if (!json_path.empty()) {
    std::ofstream f = OpenOutput(json_path);
    WriteReportsJson(reports, timing, f);
  }
  const bool pass = AllPass(reports);
  out << (pass ? "all checks passed" : "some checks failed") << "\n";
  return pass ? kExitOk : kExitViolation;
}

int Figures(const std::string& dir, double step, std::ostream& out) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  UniformAdditiveSolver solver;
  {
    std::ofstream f = OpenOutput((base / "figure1.csv").string());
    WriteFigure1Csv(step, solver, f);
  }
  {
    std::ofstream f = OpenOutput((base / "figure2.csv").string());
    WriteFigure2Csv(step, f);
  }
  {
    std::ofstream f = OpenOutput((base / "table1.csv").string());
    f << "budget,auction,valuation_class,lower,upper\n";
    for (double b : Grid(0.0, 0.95, 0.05)) {
      for (const ProfitabilityRow& row : ProfitabilityTable(b)) {
        f << FormatNumber(b) << "," << row.auction << ","
          << row.valuation_class << "," << FormatNumber(row.lower) << ","
          << FormatNumber(row.upper) << "\n";
      }
    }
  }
  out << "wrote figure1.csv, figure2.csv and table1.csv to " << dir << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Risk-free bidding against a budgeted adversary", "riskfree"};
  app.require_subcommand(1);

  int m = 0;
  double budget = 0.0;

  auto* solve = app.add_subcommand("solve-uniform",
                                   "value function of the uniform additive "
                                   "auction");
  std::string csv, json_path;
  solve->add_option("--m", m, "item count")->required()->check(
      CLI::Range(1, 100000));
  solve->add_option("--dump-csv", csv, "write x,value breakpoints here");
  solve->add_option("--json", json_path, "write the branch list here");

  auto* tables = app.add_subcommand("tables", "closed-form profit tables");
  tables->add_option("--m", m, "item count")->required()->check(
      CLI::IsMember({1, 2, 3}));
  tables->add_option("--b", budget, "adversary budget")->required()->check(
      CLI::NonNegativeNumber);

  auto* simulate = app.add_subcommand("simulate", "run a scenario file");
  std::string scenario_path, report_path;
  simulate->add_option("--scenario", scenario_path, "scenario JSON")
      ->required();
  simulate->add_option("--out", report_path,
                       "report path (overrides the scenario's output)");

  auto* oracle = app.add_subcommand(
      "oracle", "discretized backward induction on the uniform additive "
                "auction");
  double delta = 0.0;
  std::string leader = "adversary", rule = "first";
  oracle->add_option("--m", m, "item count")->required()->check(
      CLI::Range(1, kMaxOracleItems));
  oracle->add_option("--b", budget, "adversary budget")->required()->check(
      CLI::NonNegativeNumber);
  oracle->add_option("--delta", delta, "bid grid step")->required()->check(
      CLI::PositiveNumber);
  oracle->add_option("--leader", leader, "who commits first")
      ->check(CLI::IsMember({"adversary", "bidder"}));
  oracle->add_option("--price-rule", rule, "first or second")
      ->check(CLI::IsMember({"first", "second"}));

  auto* qp = app.add_subcommand("qp", "adversarial quadratic program");
  std::vector<double> gamma;
  std::uint64_t seed = 1;
  qp->add_option("--gamma-star", gamma, "comma-separated weights")
      ->required()
      ->delimiter(',');
  qp->add_option("--b", budget, "adversary budget")->required()->check(
      CLI::Range(0.0, 1.0));
  qp->add_option("--seed", seed, "seed for the projected-gradient starts");

  auto* verify = app.add_subcommand("verify", "bound verification sweeps");
  std::string suite = "all";
  VerifyOptions options;
  bool timing = false;
  std::string verify_json;
  verify->add_option("--suite", suite, "xos, si, simul or all")
      ->check(CLI::IsMember({"xos", "si", "simul", "all"}));
  verify->add_option("--m-max", options.m_max, "largest item count")
      ->check(CLI::Range(2, 1000));
  verify->add_option("--grid-step", options.grid_step, "budget grid step")
      ->check(CLI::Range(1e-6, 0.5));
  verify->add_option("--seed", options.seed, "seed of the random families");
  verify->add_option("--instances", options.instances,
                     "random instances per family")
      ->check(CLI::Range(1, 1000000));
  verify->add_option("--mc-samples", options.mc_samples,
                     "Monte Carlo samples per estimate");
  verify->add_option("--json", verify_json, "write the JSON report here");
  verify->add_flag("--timing", timing, "include runtimes");

  auto* figures = app.add_subcommand("figures", "figure and table CSVs");
  std::string out_dir;
  double step = 0.01;
  figures->add_option("--out", out_dir, "output directory")->required();
  figures->add_option("--step", step, "x grid step")->check(
      CLI::Range(1e-4, 0.5));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return SolveUniform(m, csv, json_path, out);
    if (*tables) {
      out << FormatNumber(TableA(m, budget)) << "\n";
      return kExitOk;
    }
    if (*simulate) return Simulate(scenario_path, report_path, out);
    if (*oracle) return Oracle(m, budget, delta, leader, rule, out);
    if (*qp) return Qp(gamma, budget, seed, out);
    if (*verify) return Verify(suite, options, verify_json, timing, out);
    if (*figures) return Figures(out_dir, step, out);
  } catch (const Error& e) {
    err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace riskfree::cli
