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

#include "eqbound/pipeline.h"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "eqbound/expectation.h"
#include "eqbound/structure.h"

namespace eqbound {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename F>
int Guard(std::ostream& err, F f) {
  try {
    return f();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  }
}

json Optional(const std::optional<bool>& v) {
  return v ? json(*v) : json(nullptr);
}

// NaN serializes as null.
json Number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string Fixed(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool Verified(const BoundReport& r) { return r.hypotheses_met; }

FlavorAnalysis AnalyzeFlavor(const Scenario& scenario, EquilibriumKind kind,
                             const Limits& limits) {
  const double tol = scenario.tolerance;
  const Game game = BuildGame(scenario, kind);
  const Grouping* grouping =
      kind == EquilibriumKind::kGroupNash ? &*scenario.groups : nullptr;
  const Grouping blocks =
      grouping ? *grouping : Grouping::Singletons(game.num_users());

  FlavorAnalysis fa;
  fa.kind = kind;
  fa.hypotheses = VerifyHypotheses(game, grouping, tol, limits);
  fa.optimum = BruteForceOpt(game, limits);
  if (fa.hypotheses.nondecreasing == true) {
    fa.curvature =
        ComputeCurvatures(game, grouping, fa.optimum.omega, tol, limits);
  }
  fa.equilibria = EnumerateEquilibria(game, kind, tol, limits);

  const BoundContext ctx{game, fa.optimum, fa.hypotheses, tol, limits};
  const Gate gate = Gate::kInformational;
  const double c = fa.curvature ? fa.curvature->total.value : kNaN;
  std::vector<double> per_group(blocks.num_groups(), kNaN);
  if (fa.curvature && grouping) {
    for (int g = 0; g < blocks.num_groups(); ++g) {
      per_group[g] = fa.curvature->per_group[g].value;
    }
  }
  for (const PureProfile& eq : fa.equilibria) {
    const StrategyProfile s = PureStrategies(game, eq);
    fa.equilibrium_values.push_back(game.social(game.profile(eq)));
    auto add = [&](std::vector<BoundReport> more) {
      for (auto& r : more) fa.reports.push_back(std::move(r));
    };
    switch (kind) {
      case EquilibriumKind::kNash:
        add({CheckThm1(ctx, s, gate), CheckThm2(ctx, s, c, gate)});
        break;
      case EquilibriumKind::kSocialAware:
        add(CheckThm3Thm4(ctx, s, c, gate));
        break;
      case EquilibriumKind::kGroupNash:
        add({CheckThm5(ctx, blocks, s, gate)});
        add(CheckThm6(ctx, blocks, s, per_group, gate));
        break;
    }
    add({CheckLemma1(ctx, blocks, s, gate), CheckLemma2(ctx, blocks, s, gate)});
  }
  return fa;
}

json ReportToJson(const BoundReport& r) {
  json out;
  out["statement"] = std::string(StatementName(r.statement));
  out["profile"] = r.profile;
  out["lhs"] = Number(r.lhs);
  out["rhs"] = Number(r.rhs);
  out["sense"] = r.sense == Sense::kAtLeast ? ">=" : "<=";
  out["margin"] = Number(r.margin);
  out["status"] = r.hypotheses_met ? "verified" : "informational";
  if (!r.hypotheses_met) out["unmet"] = r.unmet;
  if (!r.curvatures.empty()) {
    json cs = json::array();
    for (double c : r.curvatures) cs.push_back(Number(c));
    out["curvatures"] = cs;
  }
  return out;
}

json VerdictToJson(const Game& game, const Verdict& v) {
  json out;
  out["holds"] = v.holds;
  if (v.witness) out["witness"] = DescribeWitness(game, *v.witness);
  return out;
}

void PrintVerdict(std::ostream& out, const std::string& name,
                  const Game& game, const Verdict& v) {
  out << name << ": " << (v.holds ? "true" : "false") << "\n";
  if (v.witness) out << "  witness: " << DescribeWitness(game, *v.witness) << "\n";
}

std::string PartitionLabel(const std::vector<int>& sizes) {
  std::string out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i > 0) out += "-";
    out += std::to_string(sizes[i]);
  }
  return out;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
    case ErrorCode::kInvalidParams:
    case ErrorCode::kInvalidArgument:
      return kExitParse;
    case ErrorCode::kMissingSocialGraph:
    case ErrorCode::kMissingGrouping:
      return kExitMissingStructure;
    case ErrorCode::kResourceLimit:
      return kExitResourceLimit;
    default:
      return kExitFailure;
  }
}

int Analysis::violations(double tol) const {
  int count = 0;
  for (const auto& fa : flavors) {
    for (const auto& r : fa.reports) {
      if (Verified(r) && r.margin < -tol) ++count;
    }
  }
  return count;
}

Analysis AnalyzeScenario(const Scenario& scenario, const Limits& limits) {
  Analysis a;
  a.flavors.push_back(AnalyzeFlavor(scenario, EquilibriumKind::kNash, limits));
  if (scenario.ties) {
    a.flavors.push_back(
        AnalyzeFlavor(scenario, EquilibriumKind::kSocialAware, limits));
  }
  if (scenario.groups) {
    a.flavors.push_back(
        AnalyzeFlavor(scenario, EquilibriumKind::kGroupNash, limits));
  }
  return a;
}

json AnalysisToJson(const Scenario& scenario, const Analysis& analysis) {
  json out;
  out["digest"] = ScenarioDigest(scenario);
  out["kind"] = std::string(ScenarioKindName(scenario.kind()));
  out["tolerance"] = scenario.tolerance;
  json flavors = json::array();
  for (const auto& fa : analysis.flavors) {
    json f;
    f["kind"] = std::string(EquilibriumKindName(fa.kind));
    const Hypotheses& h = fa.hypotheses;
    f["structure"] = {{"submodular", Optional(h.submodular)},
                      {"nondecreasing", Optional(h.nondecreasing)},
                      {"valid_private", Optional(h.valid_private)},
                      {"valid_social", Optional(h.valid_social)},
                      {"valid_group", Optional(h.valid_group)}};
    f["optimum"] = {{"profile", fa.optimum.indices},
                    {"value", fa.optimum.value}};
    if (fa.curvature) {
      json groups = json::array();
      for (const auto& g : fa.curvature->per_group) groups.push_back(g.value);
      f["curvature"] = {{"total", fa.curvature->total.value},
                        {"per_group", groups}};
    } else {
      f["curvature"] = nullptr;
    }
    json eqs = json::array();
    for (std::size_t k = 0; k < fa.equilibria.size(); ++k) {
      eqs.push_back({{"profile", fa.equilibria[k]},
                     {"social", fa.equilibrium_values[k]}});
    }
    f["equilibria"] = eqs;
    json reports = json::array();
    for (const auto& r : fa.reports) reports.push_back(ReportToJson(r));
    f["bounds"] = reports;
    flavors.push_back(f);
  }
  out["flavors"] = flavors;
  out["violations"] = analysis.violations(scenario.tolerance);
  return out;
}

int RunCheck(const CheckOptions& options, std::ostream& out,
             std::ostream& err) {
  return Guard(err, [&] {
    const Scenario s = LoadScenario(options.path);
    const double tol = s.tolerance;
    const Game game = BuildGame(s, EquilibriumKind::kNash);
    const Verdict sub = CheckSubmodular(game, tol);
    const Verdict mono = CheckNondecreasing(game, tol);
    const Verdict priv = CheckValidityPrivate(game, tol);
    std::optional<Game> social_game, group_game;
    std::optional<Verdict> social, group;
    if (s.ties) {
      social_game = BuildGame(s, EquilibriumKind::kSocialAware);
      social = CheckValiditySocial(*social_game, tol);
    }
    if (s.groups) {
      group_game = BuildGame(s, EquilibriumKind::kGroupNash);
      group = CheckValidityGroup(*group_game, *s.groups, tol);
    }
    if (options.json) {
      json j;
      j["digest"] = ScenarioDigest(s);
      j["submodular"] = VerdictToJson(game, sub);
      j["nondecreasing"] = VerdictToJson(game, mono);
      j["valid_private"] = VerdictToJson(game, priv);
      if (social) j["valid_social"] = VerdictToJson(*social_game, *social);
      if (group) j["valid_group"] = VerdictToJson(*group_game, *group);
      out << j.dump(2) << "\n";
    } else {
      PrintVerdict(out, "submodular", game, sub);
      PrintVerdict(out, "nondecreasing", game, mono);
      PrintVerdict(out, "valid(private)", game, priv);
      if (social) PrintVerdict(out, "valid(social)", *social_game, *social);
      if (group) PrintVerdict(out, "valid(group)", *group_game, *group);
    }
    return static_cast<int>(kExitOk);
  });
}

int RunSolve(const SolveOptions& options, std::ostream& out,
             std::ostream& err) {
  return Guard(err, [&] {
    const Scenario s = LoadScenario(options.path);
    const double tol = s.tolerance;
    const Game game = BuildGame(s, options.kind);
    auto describe = [&](const PureProfile& p) {
      json acts = json::array();
      for (int i = 0; i < game.num_users(); ++i) {
        acts.push_back(game.describe(i, game.space(i).feasible[p[i]]));
      }
      return json{{"profile", p},
                  {"actions", acts},
                  {"social", game.social(game.profile(p))}};
    };
    json j;
    j["kind"] = std::string(EquilibriumKindName(options.kind));
    if (options.dynamics) {
      PureProfile start = options.start.value_or(PureProfile(game.num_users()));
      if (static_cast<int>(start.size()) != game.num_users()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "--start needs one action index per user");
      }
      for (int i = 0; i < game.num_users(); ++i) {
        if (start[i] < 0 || start[i] >= game.space(i).size()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "--start index out of range for user " +
                          std::to_string(i));
        }
      }
      DynamicsOptions d;
      d.max_rounds = options.max_rounds;
      d.order = options.shuffled ? UpdateOrder::kShuffled
                                 : UpdateOrder::kRoundRobin;
      d.seed = options.seed;
      d.tol = tol;
      const DynamicsResult r = BestResponseDynamics(game, options.kind, start, d);
      const EquilibriumCertificate cert = Certify(
          game, options.kind, PureStrategies(game, r.profile), tol);
      j["dynamics"] = {{"converged", r.converged},
                       {"rounds", r.rounds},
                       {"endpoint", describe(r.profile)},
                       {"certified", cert.valid},
                       {"max_regret", cert.max_regret}};
    } else {
      json eqs = json::array();
      for (const auto& p : EnumerateEquilibria(game, options.kind, tol)) {
        eqs.push_back(describe(p));
      }
      j["equilibria"] = eqs;
    }
    out << j.dump(2) << "\n";
    return static_cast<int>(kExitOk);
  });
}

int RunBounds(const BoundsOptions& options, std::ostream& out,
              std::ostream& err) {
  return Guard(err, [&] {
    const auto begin = std::chrono::steady_clock::now();
    const Scenario s = LoadScenario(options.path);
    const Analysis a = AnalyzeScenario(s);
    json j = AnalysisToJson(s, a);
    if (options.timing) {
      j["wall_time_s"] = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - begin)
                             .count();
    }
    out << j.dump(2) << "\n";
    return a.violations(s.tolerance) > 0 ? static_cast<int>(kExitViolation)
                                         : static_cast<int>(kExitOk);
  });
}

Scenario GenerateScenario(const GenOptions& options) {
  Scenario s;
  if (options.family == Family::kSpectrum) {
    SpectrumScenario sc =
        GenerateSpectrumScenario(options.seed, options.spectrum);
    s.ties = sc.ties;
    s.groups = sc.partition;
    s.payload = std::move(sc);
  } else {
    CoverageScenario sc =
        GenerateCoverageScenario(options.seed, options.coverage);
    s.ties = sc.ties;
    s.groups = sc.partition;
    s.payload = std::move(sc);
  }
  return s;
}

int RunGen(const GenOptions& options, std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    const Scenario s = GenerateScenario(options);
    const std::string text = SerializeScenario(s);
    if (options.out_path.empty()) {
      out << text;
      err << Sha256Hex(text) << "\n";
    } else {
      std::ofstream file(options.out_path, std::ios::binary);
      file << text;
      if (!file) {
        throw Error(ErrorCode::kInvalidParams,
                    "cannot write " + options.out_path);
      }
      out << Sha256Hex(text) << "\n";
    }
    return static_cast<int>(kExitOk);
  });
}

std::string SweepHeader() {
  return "seed,partition,status,opt,nash_eq,worst_nash,social_eq,"
         "worst_social,group_eq,worst_group,c,max_ck,c_kstar,thm1,thm2,thm3,"
         "thm4,thm5,thm6,thm6_star,thm6_rhs,thm6_star_rhs,lem1,lem2";
}

int RunSweep(const SweepOptions& options, std::ostream& out,
             std::ostream& err) {
  return Guard(err, [&] {
    out << SweepHeader() << "\n";
    if (options.empty_range) return static_cast<int>(kExitOk);
    std::vector<std::optional<std::vector<int>>> partitions;
    if (options.partitions.empty()) {
      partitions.push_back(std::nullopt);
    } else {
      for (const auto& p : options.partitions) partitions.push_back(p);
    }
    int violations = 0;
    for (std::uint64_t seed = options.first_seed;; ++seed) {
      for (const auto& partition : partitions) {
        GenOptions gen = options.gen;
        gen.seed = seed;
        if (partition) {
          gen.spectrum.partition = *partition;
          gen.coverage.partition = *partition;
        }
        const std::string label = partition ? PartitionLabel(*partition) : "";
        out << seed << "," << label << ",";
        const Scenario s = GenerateScenario(gen);
        Analysis a;
        try {
          a = AnalyzeScenario(s);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kResourceLimit) throw;
          out << "skipped" << std::string(21, ',') << "\n";
          continue;
        }
        violations += a.violations(s.tolerance);

        // Column values; empty when not applicable.
        std::map<std::string, double> col;
        auto lower = [&](const std::string& key, double v) {
          auto it = col.find(key);
          if (it == col.end() || v < it->second) col[key] = v;
        };
        std::map<std::string, int> counts;
        for (const auto& fa : a.flavors) {
          const std::string kind(EquilibriumKindName(fa.kind));
          counts[kind] = static_cast<int>(fa.equilibria.size());
          for (double v : fa.equilibrium_values) lower("worst_" + kind, v);
          if (fa.kind == EquilibriumKind::kNash) {
            col["opt"] = fa.optimum.value;
            if (fa.curvature) col["c"] = fa.curvature->total.value;
          }
          if (fa.kind == EquilibriumKind::kGroupNash && fa.curvature) {
            col["max_ck"] = fa.curvature->max_group();
            std::vector<double> cs;
            for (const auto& g : fa.curvature->per_group) cs.push_back(g.value);
            col["c_kstar"] = MinBlockCurvature(*s.groups, cs);
          }
          for (const auto& r : fa.reports) {
            std::string name(StatementName(r.statement));
            for (auto& ch : name) ch = static_cast<char>(std::tolower(ch));
            if (name == "thm6star") name = "thm6_star";
            if (r.statement == Statement::kThm6 ||
                r.statement == Statement::kThm6Star) {
              if (std::isfinite(r.rhs)) col[name + "_rhs"] = r.rhs;
            }
            if (Verified(r)) lower(name, r.margin);
          }
        }
        auto cell = [&](const std::string& key) {
          auto it = col.find(key);
          return it == col.end() ? std::string() : Fixed(it->second);
        };
        auto count = [&](const std::string& key) {
          auto it = counts.find(key);
          return it == counts.end() ? std::string()
                                    : std::to_string(it->second);
        };
        out << "ok," << cell("opt") << "," << count("nash") << ","
            << cell("worst_nash") << "," << count("social") << ","
            << cell("worst_social") << "," << count("group") << ","
            << cell("worst_group") << "," << cell("c") << ","
            << cell("max_ck") << "," << cell("c_kstar");
        for (const char* key :
             {"thm1", "thm2", "thm3", "thm4", "thm5", "thm6", "thm6_star",
              "thm6_rhs", "thm6_star_rhs", "lem1", "lem2"}) {
          out << "," << cell(key);
        }
        out << "\n";
      }
      if (seed == options.last_seed) break;
    }
    return violations > 0 ? static_cast<int>(kExitViolation)
                          : static_cast<int>(kExitOk);
  });
}

namespace {

std::uint64_t ParseUnsigned(const std::string& text) {
  if (text.empty() ||
      text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::kParseError, "expected a nonnegative integer: \"" +
                                            text + "\"");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "integer out of range: " + text);
  }
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  if (!text.empty() && text.back() == sep) out.push_back("");
  return out;
}

}  // namespace

void ParseSeedRange(const std::string& text, SweepOptions& options) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    options.first_seed = options.last_seed = ParseUnsigned(text);
    options.empty_range = false;
    return;
  }
  options.first_seed = ParseUnsigned(text.substr(0, dots));
  options.last_seed = ParseUnsigned(text.substr(dots + 2));
  options.empty_range = options.first_seed > options.last_seed;
}

std::vector<int> ParseIntList(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : Split(text, ',')) {
    const std::uint64_t v = ParseUnsigned(part);
    if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
      throw Error(ErrorCode::kParseError, "integer out of range: " + part);
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<std::vector<int>> ParsePartitions(const std::string& text) {
  std::vector<std::vector<int>> out;
  if (text.empty()) return out;
  for (const auto& part : Split(text, ';')) out.push_back(ParseIntList(part));
  return out;
}

}  // namespace eqbound
