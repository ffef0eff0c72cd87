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

#ifndef EQBOUND_SPECTRUM_H_
#define EQBOUND_SPECTRUM_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "eqbound/error.h"
#include "eqbound/game.h"

namespace eqbound {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

// Database-assisted channel selection. Users pick one vacant channel each;
// users within distance delta of each other interfere when they share a
// channel. Channels are numbered 1..n_channels.
struct SpectrumScenario {
  int n_channels = 1;
  std::vector<Point> positions;
  // Overrides positions when present: distances[m][i] = d_mi.
  std::optional<std::vector<std::vector<double>>> distances;
  double delta = 1.0;
  double lambda = 2.0;
  std::vector<double> powers;
  // Sorted channel ids per user.
  std::vector<std::vector<int>> vacant;
  // noise[i][k] is the noise user i sees on channel vacant[i][k].
  std::vector<std::vector<double>> noise;
  std::optional<SocialGraph> ties;
  std::optional<Grouping> partition;

  int num_users() const { return static_cast<int>(powers.size()); }
  double distance(UserIndex m, UserIndex i) const;
  bool equal_powers() const;

  // Throws kInvalidParams on any broken invariant.
  void Validate() const;
};

// N_i^p = {m != i : d_mi <= delta}.
std::vector<UserIndex> InterferenceNeighbors(const SpectrumScenario& sc,
                                             UserIndex i);

// I_i(A). Act-sets index into vacant[i]. A channel set with several
// channels accumulates interference and noise per channel. Absent users
// neither interfere nor are interfered with. Throws kEmptyChannelSet when
// user i is absent from A or plays no channel.
double Interference(const SpectrumScenario& sc, UserIndex i,
                    const ActionProfile& profile);

enum class SpectrumFlavor { kPrivate, kSocialAware, kGrouped };

// α_i = -I_i (0 for absent users). γ = Σ α_i, scaled by p for kSocialAware.
// kSocialAware attaches the ties (kMissingSocialGraph without them),
// kGrouped the partition (kMissingGrouping).
Game SpectrumGame(const SpectrumScenario& sc, SpectrumFlavor flavor);

// p = min_j (1 + Σ_{i : j in N_i^s} w_ij).
double SocialScaling(const SocialGraph& graph);

struct ConditionResult {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
};

// Σ_{n in N_i^s} w_in α_n(A) >= (p - 1) α_i(A) - p Σ_{m in N_i^p} P d_mi^-λ
// 1{a_i = a_m}. Needs ties (kMissingSocialGraph), symmetric weights
// (kAsymmetricTies) and equal powers (kUnequalPowers).
ConditionResult SocialAwareCondition(const SpectrumScenario& sc,
                                     const ActionProfile& profile,
                                     UserIndex i,
                                     double tol = kDefaultTolerance);

struct SpectrumGenParams {
  int n_users = 4;
  int n_channels = 3;
  double side = 10.0;
  double delta_min = 3.0, delta_max = 6.0;
  double lambda_min = 2.0, lambda_max = 3.0;
  double power_min = 0.5, power_max = 2.0;
  bool equal_powers = false;
  double noise_min = 0.0, noise_max = 0.05;
  double vacancy = 0.7;
  // Each unordered pair gets a symmetric tie with this probability.
  double tie_probability = 0.0;
  // Block sizes; empty means no partition.
  std::vector<int> partition;
};

// Deterministic in (seed, params). Throws kInvalidParams.
SpectrumScenario GenerateSpectrumScenario(std::uint64_t seed,
                                          const SpectrumGenParams& params);

}  // namespace eqbound

#endif  // EQBOUND_SPECTRUM_H_
