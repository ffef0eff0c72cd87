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

#include "eqbound/scenario.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace eqbound {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParseError, where + ": " + what);
}

// Strict view of a JSON object: every key must be consumed.
class Fields {
 public:
  Fields(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j.is_object()) Fail(where_, "expected an object");
  }

  const json& required(const std::string& key) {
    const json* v = optional(key);
    if (v == nullptr) Fail(where_, "missing field \"" + key + "\"");
    return *v;
  }
  const json* optional(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }
  std::string path(const std::string& key) const { return where_ + "." + key; }

  void Finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) Fail(where_, "unknown field \"" + key + "\"");
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

double AsDouble(const json& j, const std::string& where) {
  if (!j.is_number()) Fail(where, "expected a number");
  return j.get<double>();
}

int AsInt(const json& j, const std::string& where) {
  if (!j.is_number_integer()) Fail(where, "expected an integer");
  return j.get<int>();
}

std::string AsString(const json& j, const std::string& where) {
  if (!j.is_string()) Fail(where, "expected a string");
  return j.get<std::string>();
}

const json& AsArray(const json& j, const std::string& where) {
  if (!j.is_array()) Fail(where, "expected an array");
  return j;
}

std::string At(const std::string& where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

std::vector<double> Doubles(const json& j, const std::string& where) {
  std::vector<double> out;
  for (std::size_t i = 0; i < AsArray(j, where).size(); ++i) {
    out.push_back(AsDouble(j[i], At(where, i)));
  }
  return out;
}

std::vector<int> Ints(const json& j, const std::string& where) {
  std::vector<int> out;
  for (std::size_t i = 0; i < AsArray(j, where).size(); ++i) {
    out.push_back(AsInt(j[i], At(where, i)));
  }
  return out;
}

std::vector<std::string> Strings(const json& j, const std::string& where) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < AsArray(j, where).size(); ++i) {
    out.push_back(AsString(j[i], At(where, i)));
  }
  return out;
}

template <typename T, typename F>
std::vector<T> Each(const json& j, const std::string& where, F f) {
  std::vector<T> out;
  for (std::size_t i = 0; i < AsArray(j, where).size(); ++i) {
    out.push_back(f(j[i], At(where, i)));
  }
  return out;
}

// Structural constructors report kInvalidArgument; for file input these are
// parameter errors.
template <typename F>
auto Semantic(F f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument ||
        e.code() == ErrorCode::kOverlappingUsers) {
      throw Error(ErrorCode::kInvalidParams, e.what());
    }
    throw;
  }
}

SocialGraph ParseTies(const json& j, int n) {
  std::vector<std::vector<SocialGraph::Tie>> ties(n);
  const std::string where = "$.ties";
  for (std::size_t k = 0; k < AsArray(j, where).size(); ++k) {
    Fields f(j[k], At(where, k));
    const int from = AsInt(f.required("from"), f.path("from"));
    const int to = AsInt(f.required("to"), f.path("to"));
    const double w = AsDouble(f.required("weight"), f.path("weight"));
    f.Finish();
    if (from < 0 || from >= n || to < 0 || to >= n) {
      throw Error(ErrorCode::kInvalidParams, "tie endpoint out of range");
    }
    ties[from].push_back({to, w});
  }
  return Semantic([&] { return SocialGraph(std::move(ties)); });
}

json TiesToJson(const SocialGraph& graph) {
  json out = json::array();
  for (UserIndex i = 0; i < graph.num_users(); ++i) {
    for (const auto& tie : graph.neighbors(i)) {
      out.push_back({{"from", i}, {"to", tie.to}, {"weight", tie.weight}});
    }
  }
  return out;
}

json GroupsToJson(const Grouping& grouping) {
  json out = json::array();
  for (int g = 0; g < grouping.num_groups(); ++g) {
    out.push_back(grouping.users(g));
  }
  return out;
}

SpectrumScenario ParseSpectrum(const json& j) {
  Fields f(j, "$.payload");
  SpectrumScenario sc;
  sc.n_channels = AsInt(f.required("n_channels"), f.path("n_channels"));
  if (const json* d = f.optional("distances")) {
    sc.distances = Each<std::vector<double>>(*d, f.path("distances"), Doubles);
  }
  if (const json* p = f.optional("positions")) {
    sc.positions = Each<Point>(*p, f.path("positions"),
                               [](const json& e, const std::string& w) {
                                 const auto xy = Doubles(e, w);
                                 if (xy.size() != 2) Fail(w, "expected [x, y]");
                                 return Point{xy[0], xy[1]};
                               });
  } else if (!sc.distances) {
    Fail("$.payload", "positions or distances required");
  }
  sc.delta = AsDouble(f.required("delta"), f.path("delta"));
  sc.lambda = AsDouble(f.required("lambda"), f.path("lambda"));
  sc.powers = Doubles(f.required("powers"), f.path("powers"));
  sc.vacant = Each<std::vector<int>>(f.required("vacant"), f.path("vacant"),
                                     Ints);
  sc.noise = Each<std::vector<double>>(f.required("noise"), f.path("noise"),
                                       Doubles);
  f.Finish();
  return sc;
}

json SpectrumToJson(const SpectrumScenario& sc) {
  json out;
  out["n_channels"] = sc.n_channels;
  if (!sc.positions.empty()) {
    json positions = json::array();
    for (const Point& p : sc.positions) positions.push_back({p.x, p.y});
    out["positions"] = positions;
  }
  if (sc.distances) out["distances"] = *sc.distances;
  out["delta"] = sc.delta;
  out["lambda"] = sc.lambda;
  out["powers"] = sc.powers;
  out["vacant"] = sc.vacant;
  out["noise"] = sc.noise;
  return out;
}

CoverageScenario ParseCoverage(const json& j) {
  Fields f(j, "$.payload");
  CoverageScenario sc;
  sc.weights = Doubles(f.required("weights"), f.path("weights"));
  sc.ground = Each<std::vector<int>>(f.required("ground"), f.path("ground"),
                                     Ints);
  sc.actions = Each<std::vector<std::vector<int>>>(
      f.required("actions"), f.path("actions"),
      [](const json& e, const std::string& w) {
        return Each<std::vector<int>>(e, w, Ints);
      });
  if (const json* d = f.optional("detect")) {
    sc.detect = Doubles(*d, f.path("detect"));
  }
  if (const json* r = f.optional("rule")) {
    const std::string name = AsString(*r, f.path("rule"));
    const auto rule = ParseCoverageRule(name);
    if (!rule) Fail(f.path("rule"), "unknown rule \"" + name + "\"");
    sc.rule = *rule;
  }
  f.Finish();
  return sc;
}

json CoverageToJson(const CoverageScenario& sc) {
  json out;
  out["weights"] = sc.weights;
  out["ground"] = sc.ground;
  out["actions"] = sc.actions;
  if (!sc.detect.empty()) out["detect"] = sc.detect;
  out["rule"] = std::string(CoverageRuleName(sc.rule));
  return out;
}

ActSet ActsByName(const std::vector<std::string>& ground,
                  const std::vector<std::string>& names,
                  const std::string& where) {
  std::uint64_t bits = 0;
  for (const auto& name : names) {
    auto it = std::find(ground.begin(), ground.end(), name);
    if (it == ground.end()) Fail(where, "unknown act \"" + name + "\"");
    bits |= std::uint64_t{1} << (it - ground.begin());
  }
  return ActSet(bits);
}

json ActsToJson(const std::vector<std::string>& ground, ActSet acts) {
  json out = json::array();
  for (int k : acts.acts()) out.push_back(ground[k]);
  return out;
}

TableScenario ParseTable(const json& j) {
  Fields f(j, "$.payload");
  TableScenario sc;
  sc.ground = Each<std::vector<std::string>>(f.required("ground"),
                                             f.path("ground"), Strings);
  const int n = static_cast<int>(sc.ground.size());
  for (const auto& g : sc.ground) {
    if (g.size() > static_cast<std::size_t>(kMaxGroundSetSize)) {
      throw Error(ErrorCode::kInvalidParams, "ground sets hold at most 64");
    }
  }
  const json& actions = AsArray(f.required("actions"), f.path("actions"));
  if (static_cast<int>(actions.size()) != n) {
    Fail(f.path("actions"), "one action list per user");
  }
  for (int i = 0; i < n; ++i) {
    const std::string w = At(f.path("actions"), i);
    ActionSpace space;
    for (std::size_t a = 0; a < AsArray(actions[i], w).size(); ++a) {
      const std::string wa = At(w, a);
      const ActSet acts = ActsByName(sc.ground[i], Strings(actions[i][a], wa),
                                     wa);
      if (space.index_of(acts)) {
        throw Error(ErrorCode::kInvalidParams, wa + ": duplicate action");
      }
      space.feasible.push_back(acts);
    }
    if (space.feasible.empty()) {
      throw Error(ErrorCode::kInvalidParams, w + ": no feasible action");
    }
    sc.spaces.push_back(std::move(space));
  }
  const json& rows = AsArray(f.required("rows"), f.path("rows"));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Fields row(rows[r], At(f.path("rows"), r));
    const json& profile = AsArray(row.required("profile"), row.path("profile"));
    if (static_cast<int>(profile.size()) != n) {
      Fail(row.path("profile"), "one entry per user");
    }
    TableKey key(n, kAbsent);
    for (int i = 0; i < n; ++i) {
      if (profile[i].is_null()) continue;
      const std::string w = At(row.path("profile"), i);
      key[i] = static_cast<std::int64_t>(
          ActsByName(sc.ground[i], Strings(profile[i], w), w).bits());
    }
    TableScenario::Row value;
    value.gamma = AsDouble(row.required("gamma"), row.path("gamma"));
    value.alpha = Doubles(row.required("alpha"), row.path("alpha"));
    row.Finish();
    if (!sc.rows.emplace(std::move(key), std::move(value)).second) {
      throw Error(ErrorCode::kInvalidParams,
                  At(f.path("rows"), r) + ": duplicate profile");
    }
  }
  f.Finish();
  return sc;
}

json TableToJson(const TableScenario& sc) {
  json out;
  out["ground"] = sc.ground;
  json actions = json::array();
  for (int i = 0; i < sc.num_users(); ++i) {
    json list = json::array();
    for (ActSet acts : sc.spaces[i].feasible) {
      list.push_back(ActsToJson(sc.ground[i], acts));
    }
    actions.push_back(list);
  }
  out["actions"] = actions;
  json rows = json::array();
  for (const auto& [key, row] : sc.rows) {
    json profile = json::array();
    for (int i = 0; i < sc.num_users(); ++i) {
      profile.push_back(key[i] == kAbsent
                            ? json(nullptr)
                            : ActsToJson(sc.ground[i],
                                         ActSet(static_cast<std::uint64_t>(
                                             key[i]))));
    }
    rows.push_back(
        {{"profile", profile}, {"gamma", row.gamma}, {"alpha", row.alpha}});
  }
  out["rows"] = rows;
  return out;
}

int NumUsers(const Scenario& s) {
  return std::visit([](const auto& p) { return p.num_users(); }, s.payload);
}

}  // namespace

std::string_view ScenarioKindName(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kSpectrum: return "spectrum";
    case ScenarioKind::kTable: return "table";
    case ScenarioKind::kCoverage: return "coverage";
  }
  return "unknown";
}

ScenarioKind Scenario::kind() const {
  return static_cast<ScenarioKind>(payload.index());
}

Scenario ParseScenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  Fields f(j, "$");
  const int version = AsInt(f.required("version"), "$.version");
  if (version != 1) Fail("$.version", "unsupported version");
  const std::string kind = AsString(f.required("kind"), "$.kind");
  const json& payload = f.required("payload");

  Scenario s;
  if (kind == "spectrum") {
    s.payload = ParseSpectrum(payload);
  } else if (kind == "coverage") {
    s.payload = ParseCoverage(payload);
  } else if (kind == "table") {
    s.payload = ParseTable(payload);
  } else {
    Fail("$.kind", "unknown kind \"" + kind + "\"");
  }
  const int n = NumUsers(s);
  if (n < 1) throw Error(ErrorCode::kInvalidParams, "no users");
  if (const json* t = f.optional("ties")) s.ties = ParseTies(*t, n);
  if (const json* g = f.optional("groups")) {
    const auto blocks = Each<std::vector<int>>(*g, "$.groups", Ints);
    s.groups = Semantic([&] { return Grouping::FromBlocks(blocks); });
    if (s.groups->num_users() != n) {
      throw Error(ErrorCode::kInvalidParams, "groups must cover every user");
    }
  }
  if (const json* t = f.optional("tolerance")) {
    s.tolerance = AsDouble(*t, "$.tolerance");
    if (!(s.tolerance >= 0) || !std::isfinite(s.tolerance)) {
      throw Error(ErrorCode::kInvalidParams, "tolerance must be >= 0");
    }
  }
  f.Finish();
  std::visit(
      [&](auto& p) {
        p.ties = s.ties;
        p.partition = s.groups;
        Semantic([&] {
          p.Validate();
          return 0;
        });
      },
      s.payload);
  return s;
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseScenario(buf.str());
}

nlohmann::json ScenarioToJson(const Scenario& scenario) {
  json out;
  out["version"] = 1;
  out["kind"] = std::string(ScenarioKindName(scenario.kind()));
  switch (scenario.kind()) {
    case ScenarioKind::kSpectrum:
      out["payload"] = SpectrumToJson(std::get<SpectrumScenario>(scenario.payload));
      break;
    case ScenarioKind::kTable:
      out["payload"] = TableToJson(std::get<TableScenario>(scenario.payload));
      break;
    case ScenarioKind::kCoverage:
      out["payload"] = CoverageToJson(std::get<CoverageScenario>(scenario.payload));
      break;
  }
  if (scenario.ties) out["ties"] = TiesToJson(*scenario.ties);
  if (scenario.groups) out["groups"] = GroupsToJson(*scenario.groups);
  out["tolerance"] = scenario.tolerance;
  return out;
}

std::string SerializeScenario(const Scenario& scenario) {
  return ScenarioToJson(scenario).dump(2) + "\n";
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string ScenarioDigest(const Scenario& scenario) {
  return Sha256Hex(SerializeScenario(scenario));
}

Game BuildGame(const Scenario& scenario, EquilibriumKind kind) {
  if (kind == EquilibriumKind::kSocialAware && !scenario.ties) {
    throw Error(ErrorCode::kMissingSocialGraph, "scenario has no ties");
  }
  if (kind == EquilibriumKind::kGroupNash && !scenario.groups) {
    throw Error(ErrorCode::kMissingGrouping, "scenario has no groups");
  }
  switch (scenario.kind()) {
    case ScenarioKind::kSpectrum: {
      const auto flavor = kind == EquilibriumKind::kNash
                              ? SpectrumFlavor::kPrivate
                          : kind == EquilibriumKind::kSocialAware
                              ? SpectrumFlavor::kSocialAware
                              : SpectrumFlavor::kGrouped;
      return SpectrumGame(std::get<SpectrumScenario>(scenario.payload),
                          flavor);
    }
    case ScenarioKind::kTable:
      return TableGame(std::get<TableScenario>(scenario.payload));
    case ScenarioKind::kCoverage:
      return CoverageGame(std::get<CoverageScenario>(scenario.payload));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown scenario kind");
}

}  // namespace eqbound
