// Copyright 2026 The eqbound Authors.
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

// Command-line front end: check, solve, bounds, gen, sweep.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "eqbound/pipeline.h"

namespace {

using eqbound::Error;

void AddGenFlags(CLI::App* cmd, eqbound::GenOptions& gen, std::string& family,
                 std::string& rule, std::string& partition) {
  auto& sp = gen.spectrum;
  auto& cov = gen.coverage;
  cmd->add_option("--family", family, "spectrum or coverage")
      ->check(CLI::IsMember({"spectrum", "coverage"}));
  cmd->add_option("--users", sp.n_users, "number of users");
  cmd->add_option("--channels", sp.n_channels, "spectrum: channel count");
  cmd->add_option("--side", sp.side, "spectrum: square side (m)");
  cmd->add_option("--vacancy", sp.vacancy,
                  "spectrum: probability a channel is vacant");
  cmd->add_flag("--equal-powers", sp.equal_powers,
                "spectrum: one common transmit power");
  cmd->add_option("--ties", sp.tie_probability,
                  "probability of a symmetric tie per user pair");
  cmd->add_option("--universe", cov.universe, "coverage: element count");
  cmd->add_option("--ground", cov.ground_size,
                  "coverage: elements per user");
  cmd->add_option("--actions", cov.n_actions,
                  "coverage: feasible actions per user");
  cmd->add_option("--action-size", cov.max_action_size,
                  "coverage: max elements per action");
  cmd->add_option("--rule", rule, "coverage: shared or marginal")
      ->check(CLI::IsMember({"shared", "marginal"}));
  cmd->add_flag("--identical", cov.identical_spaces,
                "coverage: identical action spaces");
  cmd->add_option("--partition", partition, "block sizes, e.g. 2,2");
}

void FinishGenFlags(eqbound::GenOptions& gen, const std::string& family,
                    const std::string& rule, const std::string& partition) {
  gen.family = family == "coverage" ? eqbound::Family::kCoverage
                                    : eqbound::Family::kSpectrum;
  gen.coverage.n_users = gen.spectrum.n_users;
  gen.coverage.tie_probability = gen.spectrum.tie_probability;
  gen.coverage.rule = *eqbound::ParseCoverageRule(rule);
  if (!partition.empty()) {
    gen.spectrum.partition = eqbound::ParseIntList(partition);
    gen.coverage.partition = gen.spectrum.partition;
  }
}

eqbound::EquilibriumKind KindOf(const std::string& name) {
  if (name == "social") return eqbound::EquilibriumKind::kSocialAware;
  if (name == "group") return eqbound::EquilibriumKind::kGroupNash;
  return eqbound::EquilibriumKind::kNash;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium performance bounds for utility systems"};
  app.require_subcommand(1);

  eqbound::CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "structural verdicts");
  check_cmd->add_option("path", check.path, "scenario file")->required();
  check_cmd->add_flag("--json", check.json, "emit JSON");

  eqbound::SolveOptions solve;
  std::string solve_kind = "nash";
  std::string start;
  bool enumerate = false;
  auto* solve_cmd = app.add_subcommand("solve", "find equilibria");
  solve_cmd->add_option("path", solve.path, "scenario file")->required();
  solve_cmd->add_option("--kind", solve_kind, "nash, social or group")
      ->check(CLI::IsMember({"nash", "social", "group"}));
  auto* dyn = solve_cmd->add_flag("--dynamics", solve.dynamics,
                                  "run best-response dynamics");
  auto* en = solve_cmd->add_flag("--enumerate", enumerate,
                                 "enumerate pure equilibria (default)");
  dyn->excludes(en);
  solve_cmd->add_option("--start", start, "start profile, e.g. 0,1,0");
  solve_cmd->add_option("--max-rounds", solve.max_rounds, "dynamics passes");
  solve_cmd->add_flag("--shuffle", solve.shuffled, "shuffled update order");
  solve_cmd->add_option("--seed", solve.seed, "shuffle seed");

  eqbound::BoundsOptions bounds;
  bool no_timing = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "full bound report");
  bounds_cmd->add_option("path", bounds.path, "scenario file")->required();
  bounds_cmd->add_flag("--no-timing", no_timing, "omit wall_time_s");

  eqbound::GenOptions gen;
  std::string gen_family = "spectrum", gen_rule = "shared", gen_partition;
  auto* gen_cmd = app.add_subcommand("gen", "generate a scenario");
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--out", gen.out_path, "output file (default stdout)");
  AddGenFlags(gen_cmd, gen, gen_family, gen_rule, gen_partition);

  eqbound::SweepOptions sweep;
  std::string seeds = "0..9", partitions;
  std::string sweep_family = "spectrum", sweep_rule = "shared",
              sweep_partition;
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV corpus sweep");
  sweep_cmd->add_option("--seeds", seeds, "inclusive range a..b");
  sweep_cmd->add_option("--partitions", partitions,
                        "block-size lists, e.g. \"1,1,2;2,2\"");
  AddGenFlags(sweep_cmd, sweep.gen, sweep_family, sweep_rule,
              sweep_partition);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check_cmd) return eqbound::RunCheck(check, std::cout, std::cerr);
    if (*solve_cmd) {
      solve.kind = KindOf(solve_kind);
      if (!start.empty()) solve.start = eqbound::ParseIntList(start);
      return eqbound::RunSolve(solve, std::cout, std::cerr);
    }
    if (*bounds_cmd) {
      bounds.timing = !no_timing;
      return eqbound::RunBounds(bounds, std::cout, std::cerr);
    }
    if (*gen_cmd) {
      FinishGenFlags(gen, gen_family, gen_rule, gen_partition);
      return eqbound::RunGen(gen, std::cout, std::cerr);
    }
    if (*sweep_cmd) {
      FinishGenFlags(sweep.gen, sweep_family, sweep_rule, sweep_partition);
      eqbound::ParseSeedRange(seeds, sweep);
      sweep.partitions = eqbound::ParsePartitions(partitions);
      return eqbound::RunSweep(sweep, std::cout, std::cerr);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return eqbound::ExitCodeFor(e.code());
  }
  return eqbound::kExitFailure;
}
