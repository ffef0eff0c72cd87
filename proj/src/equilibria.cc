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

#include "eqbound/equilibria.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include "eqbound/expectation.h"

namespace eqbound {
namespace {

// Deciders are users, or blocks of the grouping for kGroupNash.
struct Deciders {
  EquilibriumKind kind;
  const Grouping* grouping = nullptr;

  int count(const Game& game) const {
    return grouping ? grouping->num_groups() : game.num_users();
  }
  std::vector<UserIndex> members(int decider) const {
    return grouping ? grouping->users(decider)
                    : std::vector<UserIndex>{decider};
  }
  double utility(const Game& game, int decider, const ActionProfile& x) const {
    switch (kind) {
      case EquilibriumKind::kNash:
        return game.private_utility(decider, x);
      case EquilibriumKind::kSocialAware:
        return SocialGroupUtility(game, decider, x);
      case EquilibriumKind::kGroupNash:
        return BlockUtility(game, *grouping, decider, x);
    }
    return 0.0;
  }
};

Deciders MakeDeciders(const Game& game, EquilibriumKind kind,
                      const Grouping* grouping) {
  if (kind == EquilibriumKind::kSocialAware && !game.social_graph()) {
    throw Error(ErrorCode::kMissingSocialGraph,
                "social-aware equilibria need social ties");
  }
  if (kind == EquilibriumKind::kGroupNash) {
    if (grouping == nullptr) {
      if (!game.grouping()) {
        throw Error(ErrorCode::kMissingGrouping,
                    "group equilibria need a grouping");
      }
      grouping = &*game.grouping();
    }
    if (grouping->num_users() != game.num_users()) {
      throw Error(ErrorCode::kInvalidArgument, "grouping size mismatch");
    }
  } else {
    grouping = nullptr;
  }
  return Deciders{kind, grouping};
}

// Odometer over the joint actions of `members`; calls visit(choice) where
// choice[k] is the action of members[k].
template <typename Visit>
void ForEachJointAction(const Game& game, const std::vector<UserIndex>& members,
                        const Limits& limits, Visit&& visit) {
  std::uint64_t count = 1;
  for (UserIndex u : members) count = SaturatingMul(count, game.space(u).size());
  CheckBudget(count, limits, "joint deviation enumeration");
  std::vector<int> choice(members.size(), 0);
  while (true) {
    visit(choice);
    int k = static_cast<int>(members.size()) - 1;
    while (k >= 0 && ++choice[k] == game.space(members[k]).size()) {
      choice[k] = 0;
      --k;
    }
    if (k < 0) return;
  }
}

std::optional<PureProfile> AsPure(const StrategyProfile& profile) {
  PureProfile out;
  for (const auto& s : profile.entries()) {
    auto j = s.pure_action();
    if (!j) return std::nullopt;
    out.push_back(*j);
  }
  return out;
}

EquilibriumCertificate CertifyWith(const Game& game, const Deciders& deciders,
                                   const StrategyProfile& profile, double tol,
                                   const Limits& limits) {
  if (static_cast<int>(profile.size()) != game.num_users()) {
    throw Error(ErrorCode::kIncompleteProfile,
                "certification needs a strategy for every user");
  }
  for (const auto& s : profile.entries()) {
    if (s.num_actions() != game.space(s.user()).size()) {
      throw Error(ErrorCode::kDegenerateDistribution,
                  "strategy does not match the action space");
    }
  }
  EquilibriumCertificate cert{deciders.kind, profile,
                              -std::numeric_limits<double>::infinity(), -1,
                              false};
  const std::optional<PureProfile> pure = AsPure(profile);

  for (int d = 0; d < deciders.count(game); ++d) {
    const std::vector<UserIndex> members = deciders.members(d);
    double current;
    if (pure) {
      current = deciders.utility(game, d, game.profile(*pure));
    } else {
      current = ExpectedValue(
          game, profile,
          [&](const ActionProfile& x) { return deciders.utility(game, d, x); },
          limits);
    }
    ForEachJointAction(game, members, limits, [&](const std::vector<int>& c) {
      double deviated;
      if (pure) {
        PureProfile alt = *pure;
        for (std::size_t k = 0; k < members.size(); ++k) alt[members[k]] = c[k];
        deviated = deciders.utility(game, d, game.profile(alt));
      } else {
        StrategyProfile alt = profile;
        for (std::size_t k = 0; k < members.size(); ++k) {
          alt = alt.with(MixedStrategy::Pure(
              members[k], game.space(members[k]).size(), c[k]));
        }
        deviated = ExpectedValue(
            game, alt,
            [&](const ActionProfile& x) {
              return deciders.utility(game, d, x);
            },
            limits);
      }
      const double regret = deviated - current;
      if (regret > cert.max_regret) {
        cert.max_regret = regret;
        cert.worst_decider = d;
      }
    });
  }
  if (cert.worst_decider < 0) cert.max_regret = 0.0;
  cert.valid = cert.max_regret <= tol;
  return cert;
}

}  // namespace

std::string_view EquilibriumKindName(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::kNash: return "nash";
    case EquilibriumKind::kSocialAware: return "social";
    case EquilibriumKind::kGroupNash: return "group";
  }
  return "unknown";
}

EquilibriumCertificate IsNash(const Game& game, const StrategyProfile& profile,
                              double tol, const Limits& limits) {
  return CertifyWith(game, MakeDeciders(game, EquilibriumKind::kNash, nullptr),
                     profile, tol, limits);
}

EquilibriumCertificate IsSocialAwareNash(const Game& game,
                                         const StrategyProfile& profile,
                                         double tol, const Limits& limits) {
  return CertifyWith(game,
                     MakeDeciders(game, EquilibriumKind::kSocialAware, nullptr),
                     profile, tol, limits);
}

EquilibriumCertificate IsGroupNash(const Game& game, const Grouping& grouping,
                                   const StrategyProfile& profile, double tol,
                                   const Limits& limits) {
  return CertifyWith(
      game, MakeDeciders(game, EquilibriumKind::kGroupNash, &grouping),
      profile, tol, limits);
}

EquilibriumCertificate Certify(const Game& game, EquilibriumKind kind,
                               const StrategyProfile& profile, double tol,
                               const Limits& limits) {
  return CertifyWith(game, MakeDeciders(game, kind, nullptr), profile, tol,
                     limits);
}

DynamicsResult BestResponseDynamics(const Game& game, EquilibriumKind kind,
                                    const PureProfile& start,
                                    const DynamicsOptions& options) {
  const Deciders deciders = MakeDeciders(game, kind, nullptr);
  game.profile(start);  // validates indices
  const Limits limits;

  DynamicsResult result;
  result.profile = start;
  result.history.push_back(start);
  std::vector<int> order(deciders.count(game));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.seed);

  while (result.rounds < options.max_rounds) {
    ++result.rounds;
    if (options.order == UpdateOrder::kShuffled) {
      std::shuffle(order.begin(), order.end(), rng);
    }
    bool changed = false;
    for (int d : order) {
      const std::vector<UserIndex> members = deciders.members(d);
      const double current =
          deciders.utility(game, d, game.profile(result.profile));
      std::vector<std::pair<std::vector<int>, double>> values;
      double best = -std::numeric_limits<double>::infinity();
      ForEachJointAction(game, members, limits,
                         [&](const std::vector<int>& c) {
                           PureProfile alt = result.profile;
                           for (std::size_t k = 0; k < members.size(); ++k) {
                             alt[members[k]] = c[k];
                           }
                           const double v =
                               deciders.utility(game, d, game.profile(alt));
                           values.emplace_back(c, v);
                           best = std::max(best, v);
                         });
      if (best <= current + options.tol) continue;
      for (const auto& [c, v] : values) {
        if (v >= best - options.tol) {
          for (std::size_t k = 0; k < members.size(); ++k) {
            result.profile[members[k]] = c[k];
          }
          changed = true;
          break;
        }
      }
    }
    result.history.push_back(result.profile);
    if (!changed) {
      result.converged = true;
      return result;
    }
  }
  return result;
}

std::vector<PureProfile> EnumerateEquilibria(const Game& game,
                                             EquilibriumKind kind, double tol,
                                             const Limits& limits) {
  const Deciders deciders = MakeDeciders(game, kind, nullptr);
  std::vector<PureProfile> out;
  ForEachPureProfile(game, limits, [&](const PureProfile& indices) {
    if (CertifyWith(game, deciders, PureStrategies(game, indices), tol, limits)
            .valid) {
      out.push_back(indices);
    }
  });
  return out;
}

}  // namespace eqbound
