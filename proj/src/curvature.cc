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

#include "eqbound/curvature.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eqbound/expectation.h"

namespace eqbound {
namespace {

bool InBlock(const std::vector<UserIndex>& block, UserIndex user) {
  return std::find(block.begin(), block.end(), user) != block.end();
}

// Maximizes the curvature term over every complete pure profile S for one
// decider block. Ties keep the lexicographically first S.
void MaximizeOver(const Game& game, int index,
                  const std::vector<UserIndex>& block,
                  const ActionProfile& omega, double tol, const Limits& limits,
                  CurvatureResult& best) {
  const StrategyProfile empty;
  ForEachPureProfile(game, limits, [&](const PureProfile& indices) {
    const StrategyProfile own = PureStrategies(
        game, indices, [&](UserIndex u) { return InBlock(block, u); });
    const double standalone = ExpectedMarginal(game, own, empty, limits);
    if (standalone < -tol) {
      throw Error(ErrorCode::kNondecreasingViolated,
                  "negative standalone marginal; curvature is undefined");
    }
    if (std::abs(standalone) <= kZeroDenominator) return;
    const StrategyProfile rest = PureStrategies(
        game, indices, [&](UserIndex u) { return !InBlock(block, u); });
    const double on_top = ExpectedMarginal(
        game, own, ComposeUnion(game, omega, rest), limits);
    const double term = 1.0 - on_top / standalone;
    if (!best.argmax || term > best.value) {
      best.value = term;
      best.argmax = CurvatureArgmax{index, indices};
    }
  });
}

}  // namespace

std::optional<double> CurvatureTerm(const Game& game,
                                    const std::vector<UserIndex>& block,
                                    const PureProfile& profile,
                                    const ActionProfile& omega,
                                    const Limits& limits) {
  const StrategyProfile own = PureStrategies(
      game, profile, [&](UserIndex u) { return InBlock(block, u); });
  const double standalone =
      ExpectedMarginal(game, own, StrategyProfile(), limits);
  if (std::abs(standalone) <= kZeroDenominator) return std::nullopt;
  const StrategyProfile rest = PureStrategies(
      game, profile, [&](UserIndex u) { return !InBlock(block, u); });
  const double on_top =
      ExpectedMarginal(game, own, ComposeUnion(game, omega, rest), limits);
  return 1.0 - on_top / standalone;
}

CurvatureResult TotalCurvature(const Game& game, const ActionProfile& omega,
                               double tol, const Limits& limits) {
  ComposeUnion(game, omega, StrategyProfile());
  CheckBudget(SaturatingMul(game.num_pure_profiles(), game.num_users()),
              limits, "curvature enumeration");
  CurvatureResult best;
  for (UserIndex i = 0; i < game.num_users(); ++i) {
    MaximizeOver(game, i, {i}, omega, tol, limits, best);
  }
  if (!best.argmax) best.value = 0.0;
  return best;
}

CurvatureResult GroupCurvature(const Game& game, const Grouping& grouping,
                               int group, const ActionProfile& omega,
                               double tol, const Limits& limits) {
  ComposeUnion(game, omega, StrategyProfile());
  if (grouping.num_users() != game.num_users()) {
    throw Error(ErrorCode::kInvalidArgument, "grouping size mismatch");
  }
  if (group < 0 || group >= grouping.num_groups()) {
    throw Error(ErrorCode::kInvalidArgument, "group index out of range");
  }
  CurvatureResult best;
  MaximizeOver(game, group, grouping.users(group), omega, tol, limits, best);
  if (!best.argmax) best.value = 0.0;
  return best;
}

double CurvatureReport::max_group() const {
  double out = 0.0;
  for (const auto& r : per_group) out = std::max(out, r.value);
  return out;
}

CurvatureReport ComputeCurvatures(const Game& game, const Grouping* grouping,
                                  const ActionProfile& omega, double tol,
                                  const Limits& limits) {
  CurvatureReport report;
  report.total = TotalCurvature(game, omega, tol, limits);
  if (grouping != nullptr) {
    for (int g = 0; g < grouping->num_groups(); ++g) {
      report.per_group.push_back(
          GroupCurvature(game, *grouping, g, omega, tol, limits));
    }
  }
  return report;
}

OrderingVerdict VerifyCurvatureOrdering(const Game& game,
                                        const Grouping& grouping,
                                        const ActionProfile& omega, double tol,
                                        const Limits& limits) {
  return VerifyCurvatureOrdering(
      game, grouping, ComputeCurvatures(game, &grouping, omega, tol, limits),
      tol);
}

OrderingVerdict VerifyCurvatureOrdering(const Game& game,
                                        const Grouping& grouping,
                                        const CurvatureReport& report,
                                        double tol) {
  OrderingVerdict verdict;
  const double c = report.total.value;
  for (int g = 0; g < grouping.num_groups(); ++g) {
    if (report.per_group[g].value > c + tol) {
      std::ostringstream out;
      out.precision(17);
      out << "c_k[" << g << "]=" << report.per_group[g].value << " > c=" << c;
      return OrderingVerdict{false, std::make_pair(g, -1), out.str()};
    }
  }
  if (!game.identical_action_spaces()) return verdict;
  for (int i = 0; i < grouping.num_groups(); ++i) {
    for (int j = 0; j < grouping.num_groups(); ++j) {
      if (i == j || grouping.size(i) < grouping.size(j)) continue;
      if (report.per_group[i].value > report.per_group[j].value + tol) {
        std::ostringstream out;
        out.precision(17);
        out << "c_k[" << i << "]=" << report.per_group[i].value
            << " > c_k[" << j << "]=" << report.per_group[j].value
            << " with k_i=" << grouping.size(i) << " >= k_j="
            << grouping.size(j);
        return OrderingVerdict{false, std::make_pair(i, j), out.str()};
      }
    }
  }
  return verdict;
}

}  // namespace eqbound
