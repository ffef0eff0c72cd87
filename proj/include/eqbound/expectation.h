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

#ifndef EQBOUND_EXPECTATION_H_
#define EQBOUND_EXPECTATION_H_

#include <functional>

#include "eqbound/error.h"
#include "eqbound/game.h"

namespace eqbound {

// Ω ∪ S_part: user j in the overlay plays σ_j ∪ x_j^t with probability
// s_j^t; every other user plays σ_j.
struct ComposedProfile {
  ActionProfile base;
  StrategyProfile overlay;
};

// Throws kIncompleteOmega unless `omega` assigns every user of `game`.
ComposedProfile ComposeUnion(const Game& game, const ActionProfile& omega,
                             const StrategyProfile& part);

using ProfileFunction = std::function<double(const ActionProfile&)>;

// Exact expectation of f over the support product of S. Terms are summed
// in descending |weight| order with compensated summation. Throws
// kDegenerateDistribution when a strategy does not match its user's action
// space and kResourceLimit when the support product exceeds the budget.
double ExpectedValue(const Game& game, const StrategyProfile& profile,
                     const ProfileFunction& f, const Limits& limits = {});
double ExpectedValue(const Game& game, const ComposedProfile& profile,
                     const ProfileFunction& f, const Limits& limits = {});

// γ̄(S).
double ExpectedSocial(const Game& game, const StrategyProfile& profile,
                      const Limits& limits = {});
// γ̄(Ω ∪ S_part).
double ExpectedSocialComposed(const Game& game, const ComposedProfile& profile,
                              const Limits& limits = {});

// ᾱ_i(S), η̄_i(S) and the block-sum η̄_g(S).
double ExpectedPrivate(const Game& game, UserIndex user,
                       const StrategyProfile& profile,
                       const Limits& limits = {});
double ExpectedSocialGroup(const Game& game, UserIndex user,
                           const StrategyProfile& profile,
                           const Limits& limits = {});
double ExpectedBlock(const Game& game, const Grouping& grouping, int group,
                     const StrategyProfile& profile,
                     const Limits& limits = {});

// γ̄_W(T) = γ̄(T ⊕ W) − γ̄(T).
double ExpectedMarginal(const Game& game, const StrategyProfile& w,
                        const StrategyProfile& t, const Limits& limits = {});

// γ̄_W(Ω ∪ S_part): W's users must not be in the overlay. They are dropped
// from the base before W is appended, so each plays w_j on the left and is
// absent on the right.
double ExpectedMarginal(const Game& game, const StrategyProfile& w,
                        const ComposedProfile& t, const Limits& limits = {});

// Point-mass strategy profile for a complete pure profile.
StrategyProfile PureStrategies(const Game& game, const PureProfile& indices);
// Point masses for a subset of users, read from a complete pure profile.
StrategyProfile PureStrategies(const Game& game, const PureProfile& indices,
                               const std::function<bool(UserIndex)>& keep);

}  // namespace eqbound

#endif  // EQBOUND_EXPECTATION_H_
