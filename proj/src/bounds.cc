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

#include "eqbound/bounds.h"

#include <algorithm>
#include <cmath>

#include "eqbound/expectation.h"
#include "eqbound/structure.h"

namespace eqbound {
namespace {

class HypothesisList {
 public:
  void require(std::optional<bool> verdict, std::string_view name) {
    if (verdict != true) add(name);
  }
  void require(bool verdict, std::string_view name) {
    if (!verdict) add(name);
  }
  bool empty() const { return unmet_.empty(); }
  const std::string& text() const { return unmet_; }

 private:
  void add(std::string_view name) {
    if (!unmet_.empty()) unmet_ += ",";
    unmet_ += name;
  }
  std::string unmet_;
};

void RequireComplete(const Game& game, const StrategyProfile& s) {
  if (static_cast<int>(s.size()) != game.num_users()) {
    throw Error(ErrorCode::kIncompleteProfile,
                "bound checks need a strategy for every user");
  }
}

PureProfile PureIndices(const StrategyProfile& s) {
  PureProfile out;
  for (const auto& m : s.entries()) {
    auto j = m.pure_action();
    if (!j) return {};
    out.push_back(*j);
  }
  return out;
}

BoundReport Finish(Statement statement, double lhs, double rhs, Sense sense,
                   const HypothesisList& hyps, const StrategyProfile& s,
                   Gate gate) {
  if (gate == Gate::kStrict && !hyps.empty()) {
    throw Error(ErrorCode::kHypothesisUnverified,
                std::string(StatementName(statement)) +
                    " hypotheses not met: " + hyps.text());
  }
  BoundReport report;
  report.statement = statement;
  report.lhs = lhs;
  report.rhs = rhs;
  report.sense = sense;
  report.margin = sense == Sense::kAtLeast ? lhs - rhs : rhs - lhs;
  report.hypotheses_met = hyps.empty();
  report.unmet = hyps.text();
  report.profile = PureIndices(s);
  return report;
}

bool EmptyValueNonPositive(const BoundContext& ctx) {
  return ctx.game.social(ActionProfile()) <= ctx.tol;
}

// ½(γ̄(Ω) + Σ_d γ̄_{s^d}(Ω ∪ S^{-d})) over the given decider blocks.
double HalfBound(const BoundContext& ctx, const Grouping& blocks,
                 const StrategyProfile& s) {
  double sum = 0.0;
  for (int g = 0; g < blocks.num_groups(); ++g) {
    const StrategyProfile own =
        s.filter([&](UserIndex u) { return blocks.contains(g, u); });
    const StrategyProfile rest =
        s.filter([&](UserIndex u) { return !blocks.contains(g, u); });
    sum += ExpectedMarginal(ctx.game, own,
                            ComposeUnion(ctx.game, ctx.optimum.omega, rest),
                            ctx.limits);
  }
  return 0.5 * (ctx.optimum.value + sum);
}

}  // namespace

Optimum BruteForceOpt(const Game& game, const Limits& limits) {
  Optimum best;
  bool first = true;
  ForEachPureProfile(game, limits, [&](const PureProfile& indices) {
    const double value = game.social(game.profile(indices));
    if (first || value > best.value) {
      best.indices = indices;
      best.value = value;
      first = false;
    }
  });
  best.omega = game.profile(best.indices);
  return best;
}

std::string_view StatementName(Statement statement) {
  switch (statement) {
    case Statement::kThm1: return "Thm1";
    case Statement::kThm2: return "Thm2";
    case Statement::kThm3: return "Thm3";
    case Statement::kThm4: return "Thm4";
    case Statement::kThm5: return "Thm5";
    case Statement::kThm6: return "Thm6";
    case Statement::kThm6Star: return "Thm6Star";
    case Statement::kLem1: return "Lem1";
    case Statement::kLem2: return "Lem2";
  }
  return "Unknown";
}

Hypotheses VerifyHypotheses(const Game& game, const Grouping* grouping,
                            double tol, const Limits& limits) {
  Hypotheses h;
  h.submodular = CheckSubmodular(game, tol, limits).holds;
  h.nondecreasing = CheckNondecreasing(game, tol, limits).holds;
  h.valid_private = CheckValidityPrivate(game, tol, limits).holds;
  if (game.social_graph()) {
    h.valid_social = CheckValiditySocial(game, tol, limits).holds;
  }
  if (grouping != nullptr) {
    h.valid_group = CheckValidityGroup(game, *grouping, tol, limits).holds;
  }
  return h;
}

BoundReport CheckThm1(const BoundContext& ctx, const StrategyProfile& s,
                      Gate gate) {
  RequireComplete(ctx.game, s);
  HypothesisList hyps;
  hyps.require(IsNash(ctx.game, s, ctx.tol, ctx.limits).valid, "nash");
  hyps.require(ctx.hypotheses.valid_private, "valid(private)");
  hyps.require(ctx.hypotheses.submodular, "submodular");
  const double lhs = ExpectedSocial(ctx.game, s, ctx.limits);
  const double rhs =
      HalfBound(ctx, Grouping::Singletons(ctx.game.num_users()), s);
  return Finish(Statement::kThm1, lhs, rhs, Sense::kAtLeast, hyps, s, gate);
}

BoundReport CheckThm2(const BoundContext& ctx, const StrategyProfile& s,
                      double c, Gate gate) {
  RequireComplete(ctx.game, s);
  HypothesisList hyps;
  hyps.require(IsNash(ctx.game, s, ctx.tol, ctx.limits).valid, "nash");
  hyps.require(ctx.hypotheses.valid_private, "valid(private)");
  hyps.require(ctx.hypotheses.submodular, "submodular");
  hyps.require(ctx.hypotheses.nondecreasing, "nondecreasing");
  hyps.require(EmptyValueNonPositive(ctx), "empty-value<=0");
  const double lhs = ExpectedSocial(ctx.game, s, ctx.limits);
  const double rhs = ctx.optimum.value / (1.0 + c);
  BoundReport r =
      Finish(Statement::kThm2, lhs, rhs, Sense::kAtLeast, hyps, s, gate);
  r.curvatures = {c};
  return r;
}

std::vector<BoundReport> CheckThm3Thm4(const BoundContext& ctx,
                                       const StrategyProfile& s, double c,
                                       Gate gate) {
  RequireComplete(ctx.game, s);
  const bool certified =
      IsSocialAwareNash(ctx.game, s, ctx.tol, ctx.limits).valid;
  const double lhs = ExpectedSocial(ctx.game, s, ctx.limits);

  HypothesisList h3;
  h3.require(certified, "social-aware-nash");
  h3.require(ctx.hypotheses.valid_social, "valid(social)");
  h3.require(ctx.hypotheses.submodular, "submodular");
  HypothesisList h4 = h3;
  h4.require(ctx.hypotheses.nondecreasing, "nondecreasing");
  h4.require(EmptyValueNonPositive(ctx), "empty-value<=0");

  const double rhs3 =
      HalfBound(ctx, Grouping::Singletons(ctx.game.num_users()), s);
  std::vector<BoundReport> out;
  out.push_back(
      Finish(Statement::kThm3, lhs, rhs3, Sense::kAtLeast, h3, s, gate));
  out.push_back(Finish(Statement::kThm4, lhs, ctx.optimum.value / (1.0 + c),
                       Sense::kAtLeast, h4, s, gate));
  out.back().curvatures = {c};
  return out;
}

BoundReport CheckThm5(const BoundContext& ctx, const Grouping& grouping,
                      const StrategyProfile& s, Gate gate) {
  RequireComplete(ctx.game, s);
  HypothesisList hyps;
  hyps.require(IsGroupNash(ctx.game, grouping, s, ctx.tol, ctx.limits).valid,
               "group-nash");
  hyps.require(ctx.hypotheses.valid_group, "valid(group)");
  hyps.require(ctx.hypotheses.submodular, "submodular");
  const double lhs = ExpectedSocial(ctx.game, s, ctx.limits);
  const double rhs = HalfBound(ctx, grouping, s);
  return Finish(Statement::kThm5, lhs, rhs, Sense::kAtLeast, hyps, s, gate);
}

double MinBlockCurvature(const Grouping& grouping,
                         const std::vector<double>& per_group_c) {
  const int k_star = grouping.min_size();
  double out = 0.0;
  for (double c : per_group_c) {
    if (std::isnan(c)) return c;
  }
  for (int g = 0; g < grouping.num_groups(); ++g) {
    if (grouping.size(g) == k_star) out = std::max(out, per_group_c[g]);
  }
  return out;
}

std::vector<BoundReport> CheckThm6(const BoundContext& ctx,
                                   const Grouping& grouping,
                                   const StrategyProfile& s,
                                   const std::vector<double>& per_group_c,
                                   Gate gate) {
  RequireComplete(ctx.game, s);
  if (static_cast<int>(per_group_c.size()) != grouping.num_groups()) {
    throw Error(ErrorCode::kInvalidArgument,
                "one curvature per group is required");
  }
  HypothesisList hyps;
  hyps.require(IsGroupNash(ctx.game, grouping, s, ctx.tol, ctx.limits).valid,
               "group-nash");
  hyps.require(ctx.hypotheses.valid_group, "valid(group)");
  hyps.require(ctx.hypotheses.submodular, "submodular");
  hyps.require(ctx.hypotheses.nondecreasing, "nondecreasing");
  hyps.require(EmptyValueNonPositive(ctx), "empty-value<=0");
  const double lhs = ExpectedSocial(ctx.game, s, ctx.limits);
  const double max_c =
      *std::max_element(per_group_c.begin(), per_group_c.end());

  std::vector<BoundReport> out;
  out.push_back(Finish(Statement::kThm6, lhs, ctx.optimum.value / (1.0 + max_c),
                       Sense::kAtLeast, hyps, s, gate));
  out.back().curvatures = per_group_c;
  if (ctx.game.identical_action_spaces()) {
    const double c_star = MinBlockCurvature(grouping, per_group_c);
    out.push_back(Finish(Statement::kThm6Star, lhs,
                         ctx.optimum.value / (1.0 + c_star), Sense::kAtLeast,
                         hyps, s, gate));
    out.back().curvatures = {c_star};
  }
  return out;
}

BoundReport CheckLemma1(const BoundContext& ctx, const Grouping& grouping,
                        const StrategyProfile& s, Gate gate) {
  RequireComplete(ctx.game, s);
  HypothesisList hyps;
  hyps.require(ctx.hypotheses.submodular, "submodular");
  const PureProfile indices = PureIndices(s);
  if (indices.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "Lemma 1 block comparison needs a pure profile");
  }
  const Game& game = ctx.game;
  const PureProfile& sigma = ctx.optimum.indices;
  const StrategyProfile omega_strategies = PureStrategies(game, sigma);

  double gain = 0.0;
  double loss = 0.0;
  // Moving γ̄_{σ^g}(S) to γ̄_{σ^g}(S^{-g}) needs either monotonicity or
  // blocks whose σ^g and s^g share no acts.
  bool disjoint_blocks = true;
  for (int g = 0; g < grouping.num_groups(); ++g) {
    bool differs = false;
    for (UserIndex u : grouping.users(g)) differs |= indices[u] != sigma[u];
    if (!differs) continue;
    for (UserIndex u : grouping.users(g)) {
      const ActSet mine = game.space(u).feasible[indices[u]];
      const ActSet opt = game.space(u).feasible[sigma[u]];
      disjoint_blocks &= (mine & opt).empty();
    }
    auto in_block = [&](UserIndex u) { return grouping.contains(g, u); };
    auto outside = [&](UserIndex u) { return !grouping.contains(g, u); };
    // γ̄_{σ^g}(S^{-g})
    gain += ExpectedMarginal(game, omega_strategies.filter(in_block),
                             s.filter(outside), ctx.limits);
    // γ̄_{s^g}(S^{(g-1)} ∪ Ω) as the union increment
    // γ̄(Ω ∪ S^{(g)}) - γ̄(Ω ∪ S^{(g-1)}), which telescopes to γ̄(Ω ∪ S).
    const int end = grouping.first(g) + grouping.size(g);
    const StrategyProfile prefix =
        s.filter([&](UserIndex u) { return u < grouping.first(g); });
    const StrategyProfile through =
        s.filter([&](UserIndex u) { return u < end; });
    loss += ExpectedSocialComposed(
                game, ComposeUnion(game, ctx.optimum.omega, through),
                ctx.limits) -
            ExpectedSocialComposed(
                game, ComposeUnion(game, ctx.optimum.omega, prefix),
                ctx.limits);
  }
  hyps.require(ctx.hypotheses.nondecreasing == true || disjoint_blocks,
               "nondecreasing-or-disjoint-blocks");
  const double lhs = ExpectedSocial(game, s, ctx.limits) + gain - loss;
  return Finish(Statement::kLem1, lhs, ctx.optimum.value, Sense::kAtLeast,
                hyps, s, gate);
}

BoundReport CheckLemma2(const BoundContext& ctx, const Grouping& grouping,
                        const StrategyProfile& s, Gate gate) {
  RequireComplete(ctx.game, s);
  HypothesisList hyps;
  hyps.require(ctx.hypotheses.submodular, "submodular");
  hyps.require(EmptyValueNonPositive(ctx), "empty-value<=0");
  double rhs = 0.0;
  for (int g = 0; g < grouping.num_groups(); ++g) {
    rhs += ExpectedMarginal(
        ctx.game, s.filter([&](UserIndex u) { return grouping.contains(g, u); }),
        StrategyProfile(), ctx.limits);
  }
  const double lhs = ExpectedSocial(ctx.game, s, ctx.limits);
  return Finish(Statement::kLem2, lhs, rhs, Sense::kAtMost, hyps, s, gate);
}

}  // namespace eqbound
