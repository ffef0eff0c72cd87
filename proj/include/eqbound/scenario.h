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

#ifndef EQBOUND_SCENARIO_H_
#define EQBOUND_SCENARIO_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

#include "eqbound/coverage.h"
#include "eqbound/equilibria.h"
#include "eqbound/game.h"
#include "eqbound/spectrum.h"
#include "eqbound/table.h"

namespace eqbound {

enum class ScenarioKind { kSpectrum, kTable, kCoverage };

std::string_view ScenarioKindName(ScenarioKind kind);

// A scenario file: one instance family payload plus optional ties and
// groups shared by every family. The ties and groups are also copied into
// the payload struct.
struct Scenario {
  std::variant<SpectrumScenario, TableScenario, CoverageScenario> payload;
  std::optional<SocialGraph> ties;
  std::optional<Grouping> groups;
  double tolerance = kDefaultTolerance;

  ScenarioKind kind() const;
};

// Throws kParseError on malformed JSON, schema violations and unknown
// fields, and kInvalidParams on semantic violations.
Scenario ParseScenario(std::string_view text);
Scenario LoadScenario(const std::string& path);

nlohmann::json ScenarioToJson(const Scenario& scenario);
// Canonical file contents: sorted keys, two-space indent, trailing newline.
std::string SerializeScenario(const Scenario& scenario);

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view bytes);
// Digest of SerializeScenario(scenario).
std::string ScenarioDigest(const Scenario& scenario);

// The game whose deciders are of `kind`: private utilities for kNash, the
// social-aware utilities (ties required) for kSocialAware, block sums
// (groups required) for kGroupNash.
Game BuildGame(const Scenario& scenario, EquilibriumKind kind);

}  // namespace eqbound

#endif  // EQBOUND_SCENARIO_H_
