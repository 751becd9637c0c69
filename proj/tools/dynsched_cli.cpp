// Copyright 2026 The dynsched Authors
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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dynsched/replay.hpp"
#include "dynsched/trace.hpp"

namespace {

dynsched::Rational parse_rational_arg(const std::string& text,
                                      const std::string& name) {
  auto r = dynsched::Rational::parse(text);
  if (!r) throw CLI::ValidationError(name, "expected a rational a or a/b");
  return *r;
}

int run_replay(const std::string& path, const std::string& mode, bool oracle,
               std::size_t oracle_cap, const std::string& csv_path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open trace: " << path << "\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  dynsched::EventTrace trace = dynsched::parse_trace(buffer.str());

  dynsched::ReplayOptions opts;
  opts.mode = mode == "no-rounding" ? dynsched::ReplayMode::kNoRounding
                                    : dynsched::ReplayMode::kRounded;
  opts.oracle = oracle;
  opts.oracle_cap = oracle_cap;
  std::vector<dynsched::StepMetrics> rows = dynsched::replay(trace, opts);
  std::string csv = dynsched::metrics_csv(rows, oracle);
  if (csv_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(csv_path);
    out << csv;
  }
  bool all_ok = true;
  for (const auto& row : rows) {
    if (!row.ok) {
      all_ok = false;
      std::cerr << "step " << row.step << ": ";
      for (const auto& [name, pass] : row.verdicts) {
        if (!pass) std::cerr << name << " ";
      }
      std::cerr << "failed\n";
    }
  }
  return all_ok ? 0 : 1;
}

int run_selftest() {
  using dynsched::Objective;
  bool all_ok = true;
  struct Case {
    const char* name;
    dynsched::GenParams params;
    dynsched::ReplayMode mode;
  };
  std::vector<Case> cases;
  for (Objective obj : {Objective::kMakespan, Objective::kCovering}) {
    dynsched::GenParams large;
    large.seed = 7;
    large.machines = 3;
    large.steps = 40;
    large.pmax = 4;
    large.epsilon = dynsched::Rational(1, 2);
    large.small_prob = 0;
    large.objective = obj;
    large.max_live = 10;
    cases.push_back({obj == Objective::kMakespan ? "cmax large jobs"
                                                 : "cmin large jobs",
                     large, dynsched::ReplayMode::kNoRounding});
    dynsched::GenParams mixed = large;
    mixed.seed = 11;
    mixed.small_prob = dynsched::Rational(1, 2);
    cases.push_back({obj == Objective::kMakespan ? "cmax mixed jobs"
                                                 : "cmin mixed jobs",
                     mixed, dynsched::ReplayMode::kRounded});
  }
  for (const Case& c : cases) {
    dynsched::EventTrace trace = dynsched::generate(c.params);
    dynsched::ReplayOptions opts;
    opts.mode = c.mode;
    opts.oracle = true;
    std::vector<dynsched::StepMetrics> rows = dynsched::replay(trace, opts);
    bool ok = true;
    for (const auto& row : rows) ok = ok && row.ok;
    std::cout << (ok ? "pass" : "FAIL") << "  " << c.name << " ("
              << rows.size() << " steps)\n";
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic scheduling engine with bounded migration"};
  app.require_subcommand(1);

  auto* replay_cmd = app.add_subcommand("replay", "replay a trace file");
  std::string trace_path;
  std::string mode = "rounded";
  bool oracle = false;
  std::size_t oracle_cap = 10;
  std::string csv_path;
  replay_cmd->add_option("trace", trace_path, "trace file")->required();
  replay_cmd->add_option("--mode", mode, "rounded|no-rounding")
      ->check(CLI::IsMember({"rounded", "no-rounding"}));
  replay_cmd->add_flag("--oracle", oracle, "compare against brute force");
  replay_cmd->add_option("--oracle-cap", oracle_cap,
                         "max live jobs for the oracle");
  replay_cmd->add_option("--csv", csv_path, "write metrics CSV here");

  auto* gen_cmd = app.add_subcommand("gen", "generate a random trace");
  std::uint64_t seed = 1;
  int machines = 2;
  int steps = 50;
  std::string pmax_text = "4";
  std::string epsilon_text = "1/2";
  std::string small_prob_text = "0";
  std::string objective_text = "cmax";
  int max_live = 0;
  gen_cmd->add_option("--seed", seed, "rng seed");
  gen_cmd->add_option("--machines", machines, "machine count");
  gen_cmd->add_option("--steps", steps, "event count");
  gen_cmd->add_option("--pmax", pmax_text, "largest size");
  gen_cmd->add_option("--epsilon", epsilon_text, "accuracy parameter");
  gen_cmd->add_option("--small-prob", small_prob_text,
                      "probability of a small job");
  gen_cmd->add_option("--objective", objective_text, "cmax|cmin")
      ->check(CLI::IsMember({"cmax", "cmin"}));
  gen_cmd->add_option("--max-live", max_live, "cap on live jobs (0 = none)");

  auto* selftest_cmd =
      app.add_subcommand("selftest", "run invariant suites on built-in traces");

  CLI11_PARSE(app, argc, argv);

  try {
    if (replay_cmd->parsed()) {
      return run_replay(trace_path, mode, oracle, oracle_cap, csv_path);
    }
    if (gen_cmd->parsed()) {
      dynsched::GenParams params;
      params.seed = seed;
      params.machines = machines;
      params.steps = steps;
      params.pmax = parse_rational_arg(pmax_text, "--pmax");
      params.epsilon = parse_rational_arg(epsilon_text, "--epsilon");
      params.small_prob = parse_rational_arg(small_prob_text, "--small-prob");
      params.objective = objective_text == "cmax"
                             ? dynsched::Objective::kMakespan
                             : dynsched::Objective::kCovering;
      params.max_live = max_live;
      std::cout << dynsched::format_trace(dynsched::generate(params));
      return 0;
    }
    if (selftest_cmd->parsed()) return run_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
