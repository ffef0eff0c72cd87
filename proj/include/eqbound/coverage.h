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

#ifndef EQBOUND_COVERAGE_H_
#define EQBOUND_COVERAGE_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "eqbound/game.h"

namespace eqbound {

enum class CoverageRule {
  // α_i(X) = γ(X) - γ(X_{-i}).
  kMarginal,
  // Each covered element's value is split evenly among the users holding it.
  kShared,
};

std::string_view CoverageRuleName(CoverageRule rule);
std::optional<CoverageRule> ParseCoverageRule(std::string_view name);

// Probabilistic weighted coverage over a shared universe of elements. A user
// holding element e detects it with probability detect[i]; γ sums w_e times
// the probability that some holder detects e. detect = 1 everywhere gives
// plain weighted set coverage.
struct CoverageScenario {
  std::vector<double> weights;
  // Element ids user i may hold; act k of user i is ground[i][k].
  std::vector<std::vector<int>> ground;
  // Feasible actions as element-id lists (each a subset of ground[i]).
  std::vector<std::vector<std::vector<int>>> actions;
  // Per-user detection probabilities in (0, 1]; empty means all ones.
  std::vector<double> detect;
  CoverageRule rule = CoverageRule::kShared;
  std::optional<SocialGraph> ties;
  std::optional<Grouping> partition;

  int num_users() const { return static_cast<int>(ground.size()); }
  // Throws kInvalidParams.
  void Validate() const;
};

// Attaches ties and partition when present. γ is nondecreasing and
// submodular for every scenario.
Game CoverageGame(const CoverageScenario& sc);

struct CoverageGenParams {
  int n_users = 3;
  int universe = 6;
  int ground_size = 4;
  int n_actions = 3;
  int max_action_size = 2;
  double weight_min = 0.5, weight_max = 2.0;
  double detect_min = 1.0, detect_max = 1.0;
  CoverageRule rule = CoverageRule::kShared;
  // Every user gets the same ground set and action list.
  bool identical_spaces = false;
  double tie_probability = 0.0;
  std::vector<int> partition;
};

// Deterministic in (seed, params). Throws kInvalidParams.
CoverageScenario GenerateCoverageScenario(std::uint64_t seed,
                                          const CoverageGenParams& params);

}  // namespace eqbound

#endif  // EQBOUND_COVERAGE_H_
