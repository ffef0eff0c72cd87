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

#include "eqbound/spectrum.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <string>

#include "eqbound/random.h"

namespace eqbound {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidParams, what);
}

// Precomputed couplings shared by the game oracles.
struct Model {
  // gain[i] lists (m, P_m d_mi^-λ) for m in N_i^p, m ascending.
  std::vector<std::vector<std::pair<UserIndex, double>>> gain;
  // Bit k of a user's act-set is channel vacant[i][k]; channel_bit[i][k] is
  // the corresponding bit in a shared 1..M channel mask.
  std::vector<std::vector<std::uint64_t>> channel_bit;
  std::vector<std::vector<double>> noise;

  std::uint64_t ChannelMask(UserIndex user, ActSet acts) const {
    std::uint64_t mask = 0;
    for (int k : acts.acts()) mask |= channel_bit[user][k];
    return mask;
  }

  // I_i with the per-channel extension; 0 when user i plays nothing.
  double Interference(UserIndex i, const ActionProfile& profile) const {
    const ActSet* own = profile.find(i);
    if (own == nullptr || own->empty()) return 0.0;
    const std::uint64_t mine = ChannelMask(i, *own);
    double coupled = 0.0;
    for (const auto& [m, g] : gain[i]) {
      const ActSet* other = profile.find(m);
      if (other == nullptr) continue;
      const int shared = std::popcount(mine & ChannelMask(m, *other));
      if (shared > 0) coupled += g * shared;
    }
    double noise_sum = 0.0;
    for (int k : own->acts()) noise_sum += noise[i][k];
    return coupled + noise_sum;
  }

  // Σ_{m in N_i^p} P_m d_mi^-λ 1{a_i = a_m}, per shared channel.
  double CoupledOnly(UserIndex i, const ActionProfile& profile) const {
    const ActSet* own = profile.find(i);
    if (own == nullptr) return 0.0;
    const std::uint64_t mine = ChannelMask(i, *own);
    double coupled = 0.0;
    for (const auto& [m, g] : gain[i]) {
      const ActSet* other = profile.find(m);
      if (other == nullptr) continue;
      const int shared = std::popcount(mine & ChannelMask(m, *other));
      if (shared > 0) coupled += g * shared;
    }
    return coupled;
  }
};

std::shared_ptr<const Model> BuildModel(const SpectrumScenario& sc) {
  sc.Validate();
  auto model = std::make_shared<Model>();
  const int n = sc.num_users();
  model->gain.resize(n);
  model->channel_bit.resize(n);
  model->noise = sc.noise;
  for (UserIndex i = 0; i < n; ++i) {
    for (UserIndex m : InterferenceNeighbors(sc, i)) {
      model->gain[i].emplace_back(
          m, sc.powers[m] * std::pow(sc.distance(m, i), -sc.lambda));
    }
    for (int c : sc.vacant[i]) {
      model->channel_bit[i].push_back(std::uint64_t{1} << (c - 1));
    }
  }
  return model;
}

}  // namespace

double SpectrumScenario::distance(UserIndex m, UserIndex i) const {
  if (distances) return (*distances)[m][i];
  return std::hypot(positions[m].x - positions[i].x,
                    positions[m].y - positions[i].y);
}

bool SpectrumScenario::equal_powers() const {
  return std::all_of(powers.begin(), powers.end(),
                     [&](double p) { return p == powers.front(); });
}

void SpectrumScenario::Validate() const {
  const int n = num_users();
  Require(n >= 1, "at least one user is required");
  Require(n_channels >= 1 && n_channels <= kMaxGroundSetSize,
          "channel count must be in 1..64");
  Require(std::isfinite(delta) && delta > 0, "delta must be positive");
  Require(std::isfinite(lambda) && lambda > 0, "lambda must be positive");
  for (double p : powers) {
    Require(std::isfinite(p) && p > 0, "powers must be positive");
  }
  Require(static_cast<int>(vacant.size()) == n, "one vacant set per user");
  Require(static_cast<int>(noise.size()) == n, "one noise list per user");
  for (int i = 0; i < n; ++i) {
    Require(!vacant[i].empty(), "vacant channel sets must be nonempty");
    for (std::size_t k = 0; k < vacant[i].size(); ++k) {
      Require(vacant[i][k] >= 1 && vacant[i][k] <= n_channels,
              "vacant channel out of range");
      Require(k == 0 || vacant[i][k - 1] < vacant[i][k],
              "vacant channels must be sorted and distinct");
    }
    Require(noise[i].size() == vacant[i].size(),
            "noise must align with vacant channels");
    for (double w : noise[i]) {
      Require(std::isfinite(w) && w >= 0, "noise must be nonnegative");
    }
  }
  if (distances) {
    Require(static_cast<int>(distances->size()) == n,
            "distance matrix must be N x N");
    for (int m = 0; m < n; ++m) {
      Require(static_cast<int>((*distances)[m].size()) == n,
              "distance matrix must be N x N");
      for (int i = 0; i < n; ++i) {
        if (m == i) continue;
        Require(std::isfinite((*distances)[m][i]) && (*distances)[m][i] > 0,
                "distances between users must be positive");
      }
    }
  } else {
    Require(static_cast<int>(positions.size()) == n, "one position per user");
    for (int m = 0; m < n; ++m) {
      for (int i = m + 1; i < n; ++i) {
        Require(distance(m, i) > 0, "users must not share a position");
      }
    }
  }
  if (ties) Require(ties->num_users() == n, "ties must cover every user");
  if (partition) {
    Require(partition->num_users() == n, "partition must cover every user");
  }
}

std::vector<UserIndex> InterferenceNeighbors(const SpectrumScenario& sc,
                                             UserIndex i) {
  std::vector<UserIndex> out;
  for (UserIndex m = 0; m < sc.num_users(); ++m) {
    if (m != i && sc.distance(m, i) <= sc.delta) out.push_back(m);
  }
  return out;
}

double Interference(const SpectrumScenario& sc, UserIndex i,
                    const ActionProfile& profile) {
  const ActSet* own = profile.find(i);
  if (own == nullptr || own->empty()) {
    throw Error(ErrorCode::kEmptyChannelSet,
                "user " + std::to_string(i) + " plays no channel");
  }
  return BuildModel(sc)->Interference(i, profile);
}

double SocialScaling(const SocialGraph& graph) {
  const int n = graph.num_users();
  std::vector<double> incoming(n, 0.0);
  for (UserIndex i = 0; i < n; ++i) {
    for (const auto& tie : graph.neighbors(i)) incoming[tie.to] += tie.weight;
  }
  double p = 1.0 + incoming.front();
  for (double w : incoming) p = std::min(p, 1.0 + w);
  return p;
}

Game SpectrumGame(const SpectrumScenario& sc, SpectrumFlavor flavor) {
  if (flavor == SpectrumFlavor::kSocialAware && !sc.ties) {
    throw Error(ErrorCode::kMissingSocialGraph,
                "the social-aware flavor needs ties");
  }
  if (flavor == SpectrumFlavor::kGrouped && !sc.partition) {
    throw Error(ErrorCode::kMissingGrouping,
                "the grouped flavor needs a partition");
  }
  std::shared_ptr<const Model> model = BuildModel(sc);
  const int n = sc.num_users();

  std::vector<std::vector<std::string>> ground(n);
  std::vector<ActionSpace> spaces(n);
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < sc.vacant[i].size(); ++k) {
      ground[i].push_back(std::to_string(sc.vacant[i][k]));
      spaces[i].feasible.push_back(ActSet(std::uint64_t{1} << k));
    }
  }
  const double p = flavor == SpectrumFlavor::kSocialAware
                       ? SocialScaling(*sc.ties)
                       : 1.0;
  auto alpha = [model](UserIndex i, const ActionProfile& profile) {
    return -model->Interference(i, profile);
  };
  auto gamma = [model, n, p](const ActionProfile& profile) {
    double sum = 0.0;
    for (UserIndex i = 0; i < n; ++i) sum -= model->Interference(i, profile);
    return p * sum;
  };
  Game game(std::move(ground), std::move(spaces), gamma, alpha);
  switch (flavor) {
    case SpectrumFlavor::kPrivate:
      return game;
    case SpectrumFlavor::kSocialAware:
      return game.with_social_graph(*sc.ties);
    case SpectrumFlavor::kGrouped:
      return game.with_grouping(*sc.partition);
  }
  return game;
}

ConditionResult SocialAwareCondition(const SpectrumScenario& sc,
                                     const ActionProfile& profile,
                                     UserIndex i, double tol) {
  if (!sc.ties) {
    throw Error(ErrorCode::kMissingSocialGraph, "condition needs ties");
  }
  if (!sc.ties->is_symmetric()) {
    throw Error(ErrorCode::kAsymmetricTies, "condition needs w_nm = w_mn");
  }
  if (!sc.equal_powers()) {
    throw Error(ErrorCode::kUnequalPowers,
                "condition assumes one common power level");
  }
  std::shared_ptr<const Model> model = BuildModel(sc);
  const SocialGraph& ties = *sc.ties;
  const double p = SocialScaling(ties);

  ConditionResult r;
  for (const auto& tie : ties.neighbors(i)) {
    r.lhs += tie.weight * -model->Interference(tie.to, profile);
  }
  // With symmetric weights, min_j Σ_m w_jm = p - 1.
  double min_out = 0.0;
  for (UserIndex j = 0; j < ties.num_users(); ++j) {
    double out = 0.0;
    for (const auto& tie : ties.neighbors(j)) out += tie.weight;
    min_out = j == 0 ? out : std::min(min_out, out);
  }
  r.rhs = min_out * -model->Interference(i, profile) -
          p * model->CoupledOnly(i, profile);
  r.slack = r.lhs - r.rhs;
  r.holds = r.slack >= -tol;
  return r;
}

SpectrumScenario GenerateSpectrumScenario(std::uint64_t seed,
                                          const SpectrumGenParams& params) {
  Require(params.n_users >= 1, "n_users must be at least 1");
  Require(params.n_channels >= 1 && params.n_channels <= kMaxGroundSetSize,
          "n_channels must be in 1..64");
  Require(params.side > 0, "side must be positive");
  Require(params.delta_min > 0 && params.delta_min <= params.delta_max,
          "bad delta range");
  Require(params.lambda_min > 0 && params.lambda_min <= params.lambda_max,
          "bad lambda range");
  Require(params.power_min > 0 && params.power_min <= params.power_max,
          "bad power range");
  Require(params.noise_min >= 0 && params.noise_min <= params.noise_max,
          "bad noise range");
  Require(params.vacancy >= 0 && params.vacancy <= 1, "bad vacancy");
  Require(params.tie_probability >= 0 && params.tie_probability <= 1,
          "bad tie probability");

  const int n = params.n_users;
  const int m = params.n_channels;
  UniformSource rng(seed);
  SpectrumScenario sc;
  sc.n_channels = m;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Range(0, params.side);
    const double y = rng.Range(0, params.side);
    sc.positions.push_back({x, y});
  }
  sc.delta = rng.Range(params.delta_min, params.delta_max);
  sc.lambda = rng.Range(params.lambda_min, params.lambda_max);
  if (params.equal_powers) {
    sc.powers.assign(n, rng.Range(params.power_min, params.power_max));
  } else {
    for (int i = 0; i < n; ++i) {
      sc.powers.push_back(rng.Range(params.power_min, params.power_max));
    }
  }
  sc.vacant.resize(n);
  sc.noise.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int c = 1; c <= m; ++c) {
      if (rng.Bernoulli(params.vacancy)) sc.vacant[i].push_back(c);
    }
    if (sc.vacant[i].empty()) sc.vacant[i].push_back(1 + rng.Index(m));
    for (std::size_t k = 0; k < sc.vacant[i].size(); ++k) {
      sc.noise[i].push_back(rng.Range(params.noise_min, params.noise_max));
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
