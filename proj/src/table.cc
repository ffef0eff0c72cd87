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

#include "eqbound/table.h"

#include <algorithm>
#include <memory>
#include <string>

namespace eqbound {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidParams, what);
}

std::string KeyText(const TableKey& key) {
  std::string out = "[";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i > 0) out += ",";
    out += key[i] == kAbsent ? "-" : std::to_string(key[i]);
  }
  return out + "]";
}

}  // namespace

TableKey KeyOf(int num_users, const ActionProfile& profile) {
  TableKey key(num_users, kAbsent);
  for (const auto& entry : profile.entries()) {
    key[entry.user] = static_cast<std::int64_t>(entry.acts.bits());
  }
  return key;
}

ActionProfile ProfileOf(const TableKey& key) {
  std::vector<ActionProfile::Entry> entries;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (key[i] == kAbsent) continue;
    entries.push_back({static_cast<UserIndex>(i),
                       ActSet(static_cast<std::uint64_t>(key[i]))});
  }
  return ActionProfile(std::move(entries));
}

void TableScenario::Validate() const {
  const int n = num_users();
  Require(n >= 1, "at least one user is required");
  Require(static_cast<int>(spaces.size()) == n, "one action space per user");
  for (const auto& [key, row] : rows) {
    Require(static_cast<int>(key.size()) == n, "table keys need N entries");
    Require(static_cast<int>(row.alpha.size()) == n,
            "table rows need N private values");
    for (int i = 0; i < n; ++i) {
      const std::uint64_t ground_bits =
          ground[i].size() == 64 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << ground[i].size()) - 1;
      Require(key[i] == kAbsent ||
                  (key[i] >= 0 &&
                   (static_cast<std::uint64_t>(key[i]) & ~ground_bits) == 0),
              "table key outside the ground set");
    }
  }
  if (ties) Require(ties->num_users() == n, "ties must cover every user");
  if (partition) {
    Require(partition->num_users() == n, "partition must cover every user");
  }
}

Game TableGame(const TableScenario& sc) {
  sc.Validate();
  const int n = sc.num_users();
  auto rows = std::make_shared<const std::map<TableKey, TableScenario::Row>>(
      sc.rows);
  auto lookup = [rows, n](const ActionProfile& profile)
      -> const TableScenario::Row& {
    const TableKey key = KeyOf(n, profile);
    auto it = rows->find(key);
    if (it == rows->end()) {
      throw Error(ErrorCode::kOracleDomain,
                  "no table entry for profile " + KeyText(key));
    }
    return it->second;
  };
  SocialUtility gamma = [lookup](const ActionProfile& profile) {
    return lookup(profile).gamma;
  };
  PrivateUtility alpha = [lookup](UserIndex i, const ActionProfile& profile) {
    return lookup(profile).alpha[i];
  };
  Game game(sc.ground, sc.spaces, gamma, alpha);
  if (sc.ties) game = game.with_social_graph(*sc.ties);
  if (sc.partition) game = game.with_grouping(*sc.partition);
  return game;
}

TableScenario Tabulate(const Game& game, const Limits& limits) {
  const int n = game.num_users();
  std::vector<std::vector<std::int64_t>> options(n);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    std::vector<ActSet> acts;
    const auto& feasible = game.space(i).feasible;
    for (std::size_t a = 0; a < feasible.size(); ++a) {
      for (std::size_t b = a; b < feasible.size(); ++b) {
        const ActSet u = feasible[a] | feasible[b];
        if (std::find(acts.begin(), acts.end(), u) == acts.end()) {
          acts.push_back(u);
        }
      }
    }
    options[i].push_back(kAbsent);
    for (ActSet s : acts) {
      options[i].push_back(static_cast<std::int64_t>(s.bits()));
    }
    total = SaturatingMul(total, options[i].size());
  }
  CheckBudget(total, limits, "table domain");

  TableScenario sc;
  for (int i = 0; i < n; ++i) {
    sc.ground.push_back(game.ground_set(i));
    sc.spaces.push_back(game.space(i));
  }
  sc.ties = game.social_graph();
  sc.partition = game.grouping();
  std::vector<std::size_t> pos(n, 0);
  while (true) {
    TableKey key(n);
    for (int i = 0; i < n; ++i) key[i] = options[i][pos[i]];
    const ActionProfile profile = ProfileOf(key);
    TableScenario::Row row;
    row.gamma = game.social(profile);
    for (int i = 0; i < n; ++i) {
      row.alpha.push_back(game.private_utility(i, profile));
    }
    sc.rows.emplace(std::move(key), std::move(row));
    int k = n - 1;
    while (k >= 0 && ++pos[k] == options[k].size()) {
      pos[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return sc;
}

}  // namespace eqbound
