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

#ifndef EQBOUND_CURVATURE_H_
#define EQBOUND_CURVATURE_H_

#include <optional>
#include <string>
#include <vector>

#include "eqbound/error.h"
#include "eqbound/game.h"

namespace eqbound {

// Marginals whose |γ_{s}(∅)| is at or below this are treated as zero and
// excluded from the curvature maximum.
inline constexpr double kZeroDenominator = 1e-12;

// The maximizing (decider, S) pair for a curvature value. `index` is a user
// for total curvature and a group for group curvature.
struct CurvatureArgmax {
  int index = -1;
  PureProfile profile;
};

struct CurvatureResult {
  // 0 when no admissible (decider, S) pair exists.
  double value = 0.0;
  std::optional<CurvatureArgmax> argmax;
};

// c = max over users i and complete pure S with γ_{s_i}(∅) ≠ 0 of
//   1 − γ_{s_i}(Ω ∪ S_{-i}) / γ_{s_i}(∅).
// Throws kNondecreasingViolated when some γ_{s_i}(∅) < −tol.
CurvatureResult TotalCurvature(const Game& game, const ActionProfile& omega,
                               double tol = kDefaultTolerance,
                               const Limits& limits = {});

// c_{k_g}: the same maximum with block g's joint strategy s^g in place of
// s_i and S^{-g} in place of S_{-i}.
CurvatureResult GroupCurvature(const Game& game, const Grouping& grouping,
                               int group, const ActionProfile& omega,
                               double tol = kDefaultTolerance,
                               const Limits& limits = {});

// The bracketed term 1 − γ_{s}(Ω ∪ S_{-block}) / γ_{s}(∅) for one decider
// block of users and one complete pure profile S; nullopt when the
// denominator is treated as zero.
std::optional<double> CurvatureTerm(const Game& game,
                                    const std::vector<UserIndex>& block,
                                    const PureProfile& profile,
                                    const ActionProfile& omega,
                                    const Limits& limits = {});

struct CurvatureReport {
  CurvatureResult total;
  std::vector<CurvatureResult> per_group;

  double max_group() const;
};

CurvatureReport ComputeCurvatures(const Game& game, const Grouping* grouping,
                                  const ActionProfile& omega,
                                  double tol = kDefaultTolerance,
                                  const Limits& limits = {});

struct OrderingVerdict {
  bool holds = true;
  // Offending (i, j): c_{k_i} > c + tol is reported as (i, -1); a size
  // inversion c_{k_i} > c_{k_j} + tol with k_i >= k_j as (i, j).
  std::optional<std::pair<int, int>> offending;
  std::string detail;

  explicit operator bool() const { return holds; }
};

// c_{k_i} <= c + tol for all groups; with identical action spaces also
// c_{k_i} <= c_{k_j} + tol whenever k_i >= k_j.
OrderingVerdict VerifyCurvatureOrdering(const Game& game,
                                        const Grouping& grouping,
                                        const ActionProfile& omega,
                                        double tol = kDefaultTolerance,
                                        const Limits& limits = {});
OrderingVerdict VerifyCurvatureOrdering(const Game& game,
                                        const Grouping& grouping,
                                        const CurvatureReport& report,
                                        double tol = kDefaultTolerance);

}  // namespace eqbound

#endif  // EQBOUND_CURVATURE_H_
