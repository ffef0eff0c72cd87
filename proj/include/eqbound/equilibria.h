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

#ifndef EQBOUND_EQUILIBRIA_H_
#define EQBOUND_EQUILIBRIA_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "eqbound/error.h"
#include "eqbound/game.h"

namespace eqbound {

enum class EquilibriumKind { kNash, kSocialAware, kGroupNash };

std::string_view EquilibriumKindName(EquilibriumKind kind);

struct EquilibriumCertificate {
  EquilibriumKind kind;
  StrategyProfile profile;
  // Largest gain any admissible pure deviation achieves (<= 0 at a strict
  // equilibrium).
  double max_regret = 0.0;
  // User (or group) attaining max_regret; -1 if there are no deciders.
  int worst_decider = -1;
  bool valid = false;
};

// Deviations are checked against pure alternatives only: each expected
// utility is affine in the deviator's own mixing weights, so the best
// mixed deviation is attained at a vertex.
EquilibriumCertificate IsNash(const Game& game, const StrategyProfile& profile,
                              double tol = kDefaultTolerance,
                              const Limits& limits = {});
EquilibriumCertificate IsSocialAwareNash(const Game& game,
                                         const StrategyProfile& profile,
                                         double tol = kDefaultTolerance,
                                         const Limits& limits = {});
// Joint deviations range over Π_{j in block g} X_j.
EquilibriumCertificate IsGroupNash(const Game& game, const Grouping& grouping,
                                   const StrategyProfile& profile,
                                   double tol = kDefaultTolerance,
                                   const Limits& limits = {});

// Dispatches on `kind`; kGroupNash uses the game's grouping.
EquilibriumCertificate Certify(const Game& game, EquilibriumKind kind,
                               const StrategyProfile& profile,
                               double tol = kDefaultTolerance,
                               const Limits& limits = {});

enum class UpdateOrder { kRoundRobin, kShuffled };

struct DynamicsOptions {
  int max_rounds = 100;
  UpdateOrder order = UpdateOrder::kRoundRobin;
  // Seeds the per-round permutation when order == kShuffled.
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
};

struct DynamicsResult {
  bool converged = false;
  PureProfile profile;
  // Passes performed, including the final pass without changes.
  int rounds = 0;
  // Profile after every pass, starting with `start`.
  std::vector<PureProfile> history;
};

// Each decider (user, or block for kGroupNash) in turn moves to a best pure
// (joint) response. A decider keeps its current action unless some
// alternative beats it by more than tol; otherwise it takes the
// lexicographically first action within tol of the best value.
DynamicsResult BestResponseDynamics(const Game& game, EquilibriumKind kind,
                                    const PureProfile& start,
                                    const DynamicsOptions& options = {});

// All complete pure profiles certified for `kind`, in lexicographic order.
std::vector<PureProfile> EnumerateEquilibria(const Game& game,
                                             EquilibriumKind kind,
                                             double tol = kDefaultTolerance,
                                             const Limits& limits = {});

}  // namespace eqbound

#endif  // EQBOUND_EQUILIBRIA_H_
