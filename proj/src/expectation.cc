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

#include "eqbound/expectation.h"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace eqbound {
namespace {

struct Term {
  double weight;
  double value;
};

// Neumaier-compensated sum of weight * value after a stable sort by
// descending |weight|.
double Reduce(std::vector<Term>& terms) {
  std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return std::abs(a.weight) > std::abs(b.weight);
  });
  double sum = 0.0;
  double compensation = 0.0;
  for (const Term& term : terms) {
    const double x = term.weight * term.value;
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

struct Support {
  UserIndex user;
  std::vector<std::pair<ActSet, double>> outcomes;
};

std::vector<Support> SupportOf(const Game& game, const StrategyProfile& profile,
                               const Limits& limits) {
  std::vector<Support> supports;
  std::uint64_t count = 1;
  for (const MixedStrategy& s : profile.entries()) {
    if (s.user() < 0 || s.user() >= game.num_users() ||
        s.num_actions() != game.space(s.user()).size()) {
      throw Error(ErrorCode::kDegenerateDistribution,
                  "strategy of user " + std::to_string(s.user()) +
                      " does not match its action space");
    }
    Support support{s.user(), {}};
    for (int j = 0; j < s.num_actions(); ++j) {
      if (s.probs()[j] > 0.0) {
        support.outcomes.emplace_back(game.space(s.user()).feasible[j],
                                      s.probs()[j]);
      }
    }
    count = SaturatingMul(count, support.outcomes.size());
    supports.push_back(std::move(support));
  }
  CheckBudget(count, limits, "support product");
  return supports;
}

// Calls visit(weight, realization) for every point of the support product.
// `base` supplies act-sets that are unioned with (or, for users absent from
// it, replaced by) the drawn action.
template <typename Visit>
void ForEachRealization(const std::vector<Support>& supports,
                        const ActionProfile& base, Visit&& visit) {
  const std::size_t k = supports.size();
  std::vector<std::size_t> pos(k, 0);
  while (true) {
    double weight = 1.0;
    ActionProfile realization = base;
    for (std::size_t u = 0; u < k; ++u) {
      const auto& [acts, p] = supports[u].outcomes[pos[u]];
      weight *= p;
      const ActSet* under = base.find(supports[u].user);
      realization = realization.with(supports[u].user,
                                     under ? (*under | acts) : acts);
    }
    visit(weight, realization);
    std::size_t u = k;
    while (u > 0) {
      --u;
      if (++pos[u] < supports[u].outcomes.size()) break;
      pos[u] = 0;
      if (u == 0) return;
    }
    if (k == 0) return;
  }
}

double Expect(const std::vector<Support>& supports, const ActionProfile& base,
              const ProfileFunction& f) {
  std::vector<Term> terms;
  ForEachRealization(supports, base,
                     [&](double weight, const ActionProfile& realization) {
                       terms.push_back({weight, f(realization)});
                     });
  return Reduce(terms);
}

void CheckDisjoint(const StrategyProfile& a, const StrategyProfile& b) {
  for (const auto& s : a.entries()) {
    if (b.contains(s.user())) {
      throw Error(ErrorCode::kOverlappingUsers,
                  "user " + std::to_string(s.user()) + " appears twice");
    }
  }
}

}  // namespace

ComposedProfile ComposeUnion(const Game& game, const ActionProfile& omega,
                             const StrategyProfile& part) {
  if (!game.is_complete(omega)) {
    throw Error(ErrorCode::kIncompleteOmega,
                "the optimum must assign every user");
  }
  return ComposedProfile{omega, part};
}

double ExpectedValue(const Game& game, const StrategyProfile& profile,
                     const ProfileFunction& f, const Limits& limits) {
  return Expect(SupportOf(game, profile, limits), ActionProfile(), f);
}

double ExpectedValue(const Game& game, const ComposedProfile& profile,
                     const ProfileFunction& f, const Limits& limits) {
  return Expect(SupportOf(game, profile.overlay, limits), profile.base, f);
}

double ExpectedSocial(const Game& game, const StrategyProfile& profile,
                      const Limits& limits) {
  return ExpectedValue(
      game, profile, [&](const ActionProfile& x) { return game.social(x); },
      limits);
}

double ExpectedSocialComposed(const Game& game, const ComposedProfile& profile,
                              const Limits& limits) {
  return ExpectedValue(
      game, profile, [&](const ActionProfile& x) { return game.social(x); },
      limits);
}

double ExpectedPrivate(const Game& game, UserIndex user,
                       const StrategyProfile& profile, const Limits& limits) {
  return ExpectedValue(
      game, profile,
      [&](const ActionProfile& x) { return game.private_utility(user, x); },
      limits);
}

double ExpectedSocialGroup(const Game& game, UserIndex user,
                           const StrategyProfile& profile,
                           const Limits& limits) {
  return ExpectedValue(
      game, profile,
      [&](const ActionProfile& x) { return SocialGroupUtility(game, user, x); },
      limits);
}

double ExpectedBlock(const Game& game, const Grouping& grouping, int group,
                     const StrategyProfile& profile, const Limits& limits) {
  return ExpectedValue(
      game, profile,
      [&](const ActionProfile& x) {
        return BlockUtility(game, grouping, group, x);
      },
      limits);
}

double ExpectedMarginal(const Game& game, const StrategyProfile& w,
                        const StrategyProfile& t, const Limits& limits) {
  CheckDisjoint(w, t);
  if (w.empty()) return 0.0;
  return ExpectedSocial(game, Concat(t, w), limits) -
         ExpectedSocial(game, t, limits);
}

double ExpectedMarginal(const Game& game, const StrategyProfile& w,
                        const ComposedProfile& t, const Limits& limits) {
  CheckDisjoint(w, t.overlay);
  if (w.empty()) return 0.0;
  // T ⊕ W needs disjoint users, so W's users leave the base first.
  const ActionProfile base =
      t.base.filter([&](UserIndex u) { return !w.contains(u); });
  const ComposedProfile context{base, t.overlay};
  const ComposedProfile extended{base, Concat(t.overlay, w)};
  return ExpectedSocialComposed(game, extended, limits) -
         ExpectedSocialComposed(game, context, limits);
}

StrategyProfile PureStrategies(const Game& game, const PureProfile& indices) {
  return PureStrategies(game, indices, [](UserIndex) { return true; });
}

StrategyProfile PureStrategies(const Game& game, const PureProfile& indices,
                               const std::function<bool(UserIndex)>& keep) {
  if (static_cast<int>(indices.size()) != game.num_users()) {
    throw Error(ErrorCode::kIncompleteProfile,
                "expected one action index per user");
  }
  std::vector<MixedStrategy> entries;
  for (int i = 0; i < game.num_users(); ++i) {
    if (keep(i)) {
      entries.push_back(
          MixedStrategy::Pure(i, game.space(i).size(), indices[i]));
    }
  }
  return StrategyProfile(std::move(entries));
}

}  // namespace eqbound
