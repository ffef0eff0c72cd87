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

#include "eqbound/coverage.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "eqbound/random.h"

namespace eqbound {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidParams, what);
}

struct Model {
  std::vector<double> weights;
  std::vector<std::vector<int>> ground;
  std::vector<double> detect;

  // Per element: miss probability and number of holders.
  void Tally(const ActionProfile& profile, std::vector<double>& miss,
             std::vector<int>& holders) const {
    miss.assign(weights.size(), 1.0);
    holders.assign(weights.size(), 0);
    for (const auto& entry : profile.entries()) {
      for (int k : entry.acts.acts()) {
        const int e = ground[entry.user][k];
        miss[e] *= 1.0 - detect[entry.user];
        ++holders[e];
      }
    }
  }

  double Social(const ActionProfile& profile) const {
    std::vector<double> miss;
    std::vector<int> holders;
    Tally(profile, miss, holders);
    double sum = 0.0;
    for (std::size_t e = 0; e < weights.size(); ++e) {
      if (holders[e] > 0) sum += weights[e] * (1.0 - miss[e]);
    }
    return sum;
  }

  double Shared(UserIndex i, const ActionProfile& profile) const {
    const ActSet* own = profile.find(i);
    if (own == nullptr) return 0.0;
    std::vector<double> miss;
    std::vector<int> holders;
    Tally(profile, miss, holders);
    double sum = 0.0;
    for (int k : own->acts()) {
      const int e = ground[i][k];
      sum += weights[e] * (1.0 - miss[e]) / holders[e];
    }
    return sum;
  }
};

}  // namespace

std::string_view CoverageRuleName(CoverageRule rule) {
  return rule == CoverageRule::kMarginal ? "marginal" : "shared";
}

std::optional<CoverageRule> ParseCoverageRule(std::string_view name) {
  if (name == "marginal") return CoverageRule::kMarginal;
  if (name == "shared") return CoverageRule::kShared;
  return std::nullopt;
}

void CoverageScenario::Validate() const {
  const int n = num_users();
  const int universe = static_cast<int>(weights.size());
  Require(n >= 1, "at least one user is required");
  for (double w : weights) {
    Require(std::isfinite(w) && w >= 0, "weights must be nonnegative");
  }
  Require(static_cast<int>(actions.size()) == n, "one action list per user");
  Require(detect.empty() || static_cast<int>(detect.size()) == n,
          "one detection probability per user");
  for (double q : detect) {
    Require(std::isfinite(q) && q > 0 && q <= 1,
            "detection probabilities must lie in (0, 1]");
  }
  for (int i = 0; i < n; ++i) {
    Require(!ground[i].empty() &&
                static_cast<int>(ground[i].size()) <= kMaxGroundSetSize,
            "ground sets must hold 1..64 elements");
    std::vector<int> sorted = ground[i];
    std::sort(sorted.begin(), sorted.end());
    Require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            "ground set elements must be distinct");
    for (int e : ground[i]) {
      Require(e >= 0 && e < universe, "element id out of range");
    }
    Require(!actions[i].empty(), "every user needs a feasible action");
    for (const auto& action : actions[i]) {
      for (int e : action) {
        Require(std::find(ground[i].begin(), ground[i].end(), e) !=
                    ground[i].end(),
                "actions must draw from the user's ground set");
      }
    }
  }
  if (ties) Require(ties->num_users() == n, "ties must cover every user");
  if (partition) {
    Require(partition->num_users() == n, "partition must cover every user");
  }
}

Game CoverageGame(const CoverageScenario& sc) {
  sc.Validate();
  const int n = sc.num_users();
  auto model = std::make_shared<Model>();
  model->weights = sc.weights;
  model->ground = sc.ground;
  model->detect = sc.detect.empty() ? std::vector<double>(n, 1.0) : sc.detect;

  std::vector<std::vector<std::string>> names(n);
  std::vector<ActionSpace> spaces(n);
  for (int i = 0; i < n; ++i) {
    for (int e : sc.ground[i]) names[i].push_back("e" + std::to_string(e));
    for (const auto& action : sc.actions[i]) {
      std::uint64_t bits = 0;
      for (int e : action) {
        const auto k = std::find(sc.ground[i].begin(), sc.ground[i].end(), e) -
                       sc.ground[i].begin();
        bits |= std::uint64_t{1} << k;
      }
      ActSet acts(bits);
      Require(!spaces[i].index_of(acts).has_value(),
              "duplicate feasible action");
      spaces[i].feasible.push_back(acts);
    }
  }
  SocialUtility gamma = [model](const ActionProfile& profile) {
    return model->Social(profile);
  };
  PrivateUtility alpha;
  if (sc.rule == CoverageRule::kShared) {
    alpha = [model](UserIndex i, const ActionProfile& profile) {
      return model->Shared(i, profile);
    };
  } else {
    alpha = [model](UserIndex i, const ActionProfile& profile) {
      if (!profile.contains(i)) return 0.0;
      return model->Social(profile) - model->Social(profile.without(i));
    };
  }
  Game game(std::move(names), std::move(spaces), gamma, alpha);
  if (sc.ties) game = game.with_social_graph(*sc.ties);
  if (sc.partition) game = game.with_grouping(*sc.partition);
  return game;
}

namespace {

// Up to `count` distinct nonempty subsets of `ground`.
std::vector<std::vector<int>> DrawActions(UniformSource& rng,
                                          const std::vector<int>& ground,
                                          int count, int max_size) {
  std::vector<std::vector<int>> out;
  const int limit = std::min<int>(max_size, ground.size());
  for (int attempt = 0; attempt < 20 * count && static_cast<int>(out.size()) < count;
       ++attempt) {
    const int size = 1 + rng.Index(limit);
    std::vector<int> pool = ground;
    std::vector<int> action;
    for (int t = 0; t < size; ++t) {
      const int k = rng.Index(static_cast<int>(pool.size()));
      action.push_back(pool[k]);
      pool.erase(pool.begin() + k);
    }
    std::sort(action.begin(), action.end());
    if (std::find(out.begin(), out.end(), action) == out.end()) {
      out.push_back(std::move(action));
    }
  }
  return out;
}

std::vector<int> DrawGround(UniformSource& rng, int universe, int size) {
  std::vector<int> pool(universe);
  for (int e = 0; e < universe; ++e) pool[e] = e;
  std::vector<int> out;
  for (int t = 0; t < size; ++t) {
    const int k = rng.Index(static_cast<int>(pool.size()));
    out.push_back(pool[k]);
    pool.erase(pool.begin() + k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CoverageScenario GenerateCoverageScenario(std::uint64_t seed,
                                          const CoverageGenParams& params) {
  Require(params.n_users >= 1, "n_users must be at least 1");
  Require(params.universe >= 1, "universe must be nonempty");
  Require(params.ground_size >= 1 && params.ground_size <= params.universe &&
              params.ground_size <= kMaxGroundSetSize,
          "ground_size must be in 1..min(universe, 64)");
  Require(params.n_actions >= 1, "n_actions must be at least 1");
  Require(params.max_action_size >= 1, "max_action_size must be at least 1");
  Require(params.weight_min >= 0 && params.weight_min <= params.weight_max,
          "bad weight range");
  Require(params.detect_min > 0 && params.detect_min <= params.detect_max &&
              params.detect_max <= 1,
          "bad detection range");
  Require(params.tie_probability >= 0 && params.tie_probability <= 1,
          "bad tie probability");

  const int n = params.n_users;
  UniformSource rng(seed);
  CoverageScenario sc;
  sc.rule = params.rule;
  for (int e = 0; e < params.universe; ++e) {
    sc.weights.push_back(rng.Range(params.weight_min, params.weight_max));
  }
  if (params.identical_spaces) {
    const auto ground = DrawGround(rng, params.universe, params.ground_size);
    const auto actions =
        DrawActions(rng, ground, params.n_actions, params.max_action_size);
    sc.ground.assign(n, ground);
    sc.actions.assign(n, actions);
  } else {
    for (int i = 0; i < n; ++i) {
      sc.ground.push_back(DrawGround(rng, params.universe, params.ground_size));
      sc.actions.push_back(DrawActions(rng, sc.ground.back(), params.n_actions,
                                       params.max_action_size));
    }
  }
  if (params.detect_min < 1.0 || params.detect_max < 1.0) {
    for (int i = 0; i < n; ++i) {
      sc.detect.push_back(rng.Range(params.detect_min, params.detect_max));
    }
  }
  if (params.tie_probability > 0) {
    std::vector<std::vector<SocialGraph::Tie>> ties(n);
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (!rng.Bernoulli(params.tie_probability)) continue;
        const double w = rng.Next();
        ties[a].push_back({b, w});
        ties[b].push_back({a, w});
      }
    }
    sc.ties = SocialGraph(std::move(ties));
  }
  if (!params.partition.empty()) {
    sc.partition = Grouping::FromSizes(params.partition);
  }
  sc.Validate();
  return sc;
}

}  // namespace eqbound
