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

#ifndef EQBOUND_TABLE_H_
#define EQBOUND_TABLE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "eqbound/error.h"
#include "eqbound/game.h"

namespace eqbound {

// Per-user entry of a table key: the act-set bits, or kAbsent.
inline constexpr std::int64_t kAbsent = -1;
using TableKey = std::vector<std::int64_t>;

TableKey KeyOf(int num_users, const ActionProfile& profile);
ActionProfile ProfileOf(const TableKey& key);

// An explicitly tabulated utility system. Oracles throw kOracleDomain on a
// profile without an entry.
struct TableScenario {
  struct Row {
    double gamma = 0.0;
    std::vector<double> alpha;  // one per user
  };

  std::vector<std::vector<std::string>> ground;
  std::vector<ActionSpace> spaces;
  std::map<TableKey, Row> rows;
  std::optional<SocialGraph> ties;
  std::optional<Grouping> partition;

  int num_users() const { return static_cast<int>(ground.size()); }
  // Throws kInvalidParams.
  void Validate() const;
};

Game TableGame(const TableScenario& sc);

// Tabulates `game` over the domain the analyses touch: every user absent or
// playing a feasible action or the union of two feasible actions. Carries
// over the game's ties and grouping.
TableScenario Tabulate(const Game& game, const Limits& limits = {});

}  // namespace eqbound

#endif  // EQBOUND_TABLE_H_
