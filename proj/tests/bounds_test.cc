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

#include <cmath>
#include <vector>

#include "eqbound/coverage.h"
#include "eqbound/curvature.h"
#include "eqbound/equilibria.h"
#include "eqbound/expectation.h"
#include "eqbound/spectrum.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace eqbound {
namespace {

using testing::ErrorCodeOf;
using testing::LineSpectrum;
using testing::PureOf;

// Pure profile where users in `keep` play s_j, others absent.
ActionProfile Part(const Game& game, const std::vector<int>& s,
                   const std::function<bool(int)>& keep) {
  std::vector<ActionProfile::Entry> entries;
  for (int j = 0; j < game.num_users(); ++j) {
    if (keep(j)) entries.push_back({j, game.space(j).feasible[s[j]]});
  }
  return ActionProfile(entries);
}

// ½(OPT + Σ_b [γ(C_b ⊕ s^b) − γ(C_b)]) where C_b has users outside block b
// playing σ_j ∪ s_j.
double NaiveHalfBound(const Game& game, const std::vector<int>& omega,
                      const std::vector<int>& s,
                      const std::vector<std::vector<int>>& blocks) {
  double sum = 0.0;
  for (const auto& block : blocks) {
    auto in = [&](int u) {
      return std::find(block.begin(), block.end(), u) != block.end();
    };
    std::vector<ActionProfile::Entry> context;
    for (int j = 0; j < game.num_users(); ++j) {
      if (!in(j)) {
        context.push_back(
            {j, game.space(j).feasible[s[j]] | game.space(j).feasible[omega[j]]});
      }
    }
    const ActionProfile c(context);
    sum += game.social(Concat(c, Part(game, s, in))) - game.social(c);
  }
  return 0.5 * (game.social(PureOf(game, omega)) + sum);
}

// γ(S) + Σ_{b: σ^b ≠ s^b} [γ(S^{-b} ⊕ σ^b) − γ(S^{-b})] − [γ(Ω∪S) − γ(Ω)].
double NaiveLemma1Lhs(const Game& game, const std::vector<int>& omega,
                      const std::vector<int>& s,
                      const std::vector<std::vector<int>>& blocks) {
  double lhs = game.social(PureOf(game, s));
  for (const auto& block : blocks) {
    bool differs = false;
    for (int u : block) differs |= s[u] != omega[u];
    if (!differs) continue;
    auto in = [&](int u) {
      return std::find(block.begin(), block.end(), u) != block.end();
    };
    const ActionProfile rest = Part(game, s, [&](int u) { return !in(u); });
    lhs += game.social(Concat(rest, Part(game, omega, in))) - game.social(rest);
  }
  std::vector<ActionProfile::Entry> both;
  for (int j = 0; j < game.num_users(); ++j) {
    both.push_back(
        {j, game.space(j).feasible[s[j]] | game.space(j).feasible[omega[j]]});
  }
  lhs -= game.social(ActionProfile(both)) - game.social(PureOf(game, omega));
  return lhs;
}

std::vector<std::vector<int>> BlocksOf(const Grouping& grouping) {
  std::vector<std::vector<int>> out;
  for (int g = 0; g < grouping.num_groups(); ++g) out.push_back(grouping.users(g));
  return out;
}

BoundContext MakeContext(const Game& game, const Grouping* grouping = nullptr) {
  return BoundContext{game, BruteForceOpt(game), VerifyHypotheses(game, grouping)};
}

Game Coverage(int seed, bool identical = false, int users = 3) {
  CoverageGenParams params;
  params.n_users = users;
  params.universe = 5;
  params.ground_size = 4;
  params.n_actions = 3;
  params.identical_spaces = identical;
  params.detect_min = identical ? 1.0 : 0.5;
  return CoverageGame(GenerateCoverageScenario(seed, params));
}

TEST(BruteForceOptTest, SingleUserAndSeparable) {
  const Game single = testing::ModularGame({1}, {{{0}, {0, 1}, {1}}}, 2);
  EXPECT_EQ(BruteForceOpt(single).indices, (PureProfile{1}));
  const Game modular =
      testing::ModularGame({1, 2}, {{{0}, {0, 1}}, {{0, 1, 2}, {1}}}, 3);
  const Optimum opt = BruteForceOpt(modular);
  EXPECT_EQ(opt.indices, (PureProfile{1, 0}));
  EXPECT_DOUBLE_EQ(opt.value, 8.0);
  EXPECT_EQ(opt.omega, PureOf(modular, {1, 0}));
}

TEST(BruteForceOptTest, TiesGoToFirstProfile) {
  const Game flat = testing::MakeGame(
      2, 2, {{{0}, {1}}, {{0}, {1}}}, [](const ActionProfile&) { return 1.0; },
      [](UserIndex, const ActionProfile&) { return 0.0; });
  EXPECT_EQ(BruteForceOpt(flat).indices, (PureProfile{0, 0}));
}

TEST(BruteForceOptTest, MatchesNaiveLoop) {
  for (int seed = 1; seed <= 10; ++seed) {
    const Game g = Coverage(seed);
    const Optimum opt = BruteForceOpt(g);
    const auto naive = testing::NaiveOptimum(g);
    EXPECT_EQ(opt.indices, naive.profile);
    EXPECT_EQ(opt.value, naive.value);
  }
}

TEST(Thm1Test, AntiCoordinatedSpectrumEquilibrium) {
  const Game g = SpectrumGame(LineSpectrum({0, 2}, 2, 3.0, 0.01),
                              SpectrumFlavor::kPrivate);
  const BoundContext ctx = MakeContext(g);
  for (const auto& s : EnumerateEquilibria(g, EquilibriumKind::kNash)) {
    const BoundReport r = CheckThm1(ctx, PureStrategies(g, s));
    EXPECT_TRUE(r.hypotheses_met);
    EXPECT_EQ(r.lhs, g.social(PureOf(g, s)));
    EXPECT_NEAR(r.rhs, NaiveHalfBound(g, ctx.optimum.indices, s, {{0}, {1}}),
                1e-12);
    EXPECT_GE(r.margin, 0.0);
    EXPECT_EQ(r.profile, s);
  }
}

TEST(Thm1Test, OptimumThatIsNash) {
  const Game g = Coverage(4);
  const BoundContext ctx = MakeContext(g);
  const StrategyProfile s = PureStrategies(g, ctx.optimum.indices);
  if (!IsNash(g, s).valid) GTEST_SKIP() << "optimum is not an equilibrium";
  const BoundReport r = CheckThm1(ctx, s);
  EXPECT_DOUBLE_EQ(r.lhs, ctx.optimum.value);
  EXPECT_GE(r.margin, 0.0);
}

TEST(Thm1Test, GateRefusesUncertifiedProfiles) {
  const Game g = SpectrumGame(LineSpectrum({0, 2}, 2, 3.0, 0.01),
                              SpectrumFlavor::kPrivate);
  const BoundContext ctx = MakeContext(g);
  const StrategyProfile crowded = PureStrategies(g, {0, 0});
  EXPECT_EQ(ErrorCodeOf([&] { CheckThm1(ctx, crowded); }),
            ErrorCode::kHypothesisUnverified);
  const BoundReport r = CheckThm1(ctx, crowded, Gate::kInformational);
  EXPECT_FALSE(r.hypotheses_met);
  EXPECT_EQ(r.unmet, "nash");
  EXPECT_EQ(ErrorCodeOf([&] { CheckThm1(ctx, crowded.without(1)); }),
            ErrorCode::kIncompleteProfile);
}

TEST(Thm1Test, MixedEquilibrium) {
  const Game g = SpectrumGame(LineSpectrum({0, 2}, 2, 3.0, 0.0),
                              SpectrumFlavor::kPrivate);
  const BoundContext ctx = MakeContext(g);
  const StrategyProfile s(
      {MixedStrategy(0, {0.5, 0.5}), MixedStrategy(1, {0.5, 0.5})});
  const BoundReport r = CheckThm1(ctx, s);
  EXPECT_TRUE(r.hypotheses_met);
  EXPECT_TRUE(r.profile.empty());
  // γ̄(S) = ½ · (−½) since the pair collides half the time.
  EXPECT_NEAR(r.lhs, -0.25, 1e-12);
  EXPECT_GE(r.margin, -1e-9);
}

TEST(Thm2Test, CurvatureEndpoints) {
  const Game g = testing::ModularGame({1, 2}, {{{0}, {0, 1}}, {{1}, {0}}}, 2);
  const BoundContext ctx = MakeContext(g);
  const double c = TotalCurvature(g, ctx.optimum.omega).value;
  ASSERT_EQ(c, 0.0);
  const auto eq = EnumerateEquilibria(g, EquilibriumKind::kNash);
  ASSERT_FALSE(eq.empty());
  for (const auto& s : eq) {
    const BoundReport r = CheckThm2(ctx, PureStrategies(g, s), c);
    EXPECT_DOUBLE_EQ(r.rhs, ctx.optimum.value);
    EXPECT_GE(r.margin, -1e-9);
    EXPECT_EQ(r.curvatures, (std::vector<double>{0.0}));
    EXPECT_DOUBLE_EQ(
        CheckThm2(ctx, PureStrategies(g, s), 1.0, Gate::kInformational).rhs,
        ctx.optimum.value / 2);
  }
}

TEST(Thm2Test, NeedsMonotoneUtility) {
  const Game g = SpectrumGame(LineSpectrum({0, 2}, 2, 3.0, 0.01),
                              SpectrumFlavor::kPrivate);
  const BoundContext ctx = MakeContext(g);
  const BoundReport r =
      CheckThm2(ctx, PureStrategies(g, {0, 1}), 0.5, Gate::kInformational);
  EXPECT_FALSE(r.hypotheses_met);
  EXPECT_NE(r.unmet.find("nondecreasing"), std::string::npos);
}

TEST(Thm3Thm4Test, ZeroWeightsReproduceThm1Thm2) {
  const Game plain = Coverage(2);
  const Game tied = plain.with_social_graph(
      SocialGraph({{{1, 0.0}}, {{0, 0.0}}, {}}));
  const BoundContext a = MakeContext(plain);
  const BoundContext b = MakeContext(tied);
  const double c = TotalCurvature(plain, a.optimum.omega).value;
  for (const auto& s : EnumerateEquilibria(plain, EquilibriumKind::kNash)) {
    const BoundReport t1 = CheckThm1(a, PureStrategies(plain, s));
    const BoundReport t2 = CheckThm2(a, PureStrategies(plain, s), c);
    const auto t34 = CheckThm3Thm4(b, PureStrategies(tied, s), c);
    ASSERT_EQ(t34.size(), 2u);
    EXPECT_EQ(t34[0].statement, Statement::kThm3);
    EXPECT_DOUBLE_EQ(t34[0].lhs, t1.lhs);
    EXPECT_DOUBLE_EQ(t34[0].rhs, t1.rhs);
    EXPECT_DOUBLE_EQ(t34[1].rhs, t2.rhs);
    EXPECT_EQ(t34[0].hypotheses_met, t1.hypotheses_met);
  }
}

TEST(Thm3Thm4Test, FullTiesOnSpectrum) {
  SpectrumScenario sc = LineSpectrum({0, 2}, 2, 3.0, 0.0);
  sc.ties = SocialGraph({{{1, 1.0}}, {{0, 1.0}}});
  const Game g = SpectrumGame(sc, SpectrumFlavor::kSocialAware);
  const BoundContext ctx = MakeContext(g);
  const auto eq = EnumerateEquilibria(g, EquilibriumKind::kSocialAware);
  ASSERT_FALSE(eq.empty());
  for (const auto& s : eq) {
    const auto reports =
        CheckThm3Thm4(ctx, PureStrategies(g, s), std::nan(""), Gate::kInformational);
    EXPECT_TRUE(reports[0].hypotheses_met);
    EXPECT_GE(reports[0].margin, -1e-9);
    EXPECT_NEAR(reports[0].rhs,
                NaiveHalfBound(g, ctx.optimum.indices, s, {{0}, {1}}), 1e-12);
  }
}

TEST(Thm5Test, SingletonGroupsEqualThm1) {
  for (int seed = 1; seed <= 5; ++seed) {
    const Game g = SpectrumGame(
        GenerateSpectrumScenario(seed, {.n_users = 3, .n_channels = 2}),
        SpectrumFlavor::kPrivate);
    const Grouping singletons = Grouping::Singletons(3);
    const BoundContext ctx = MakeContext(g, &singletons);
    for (const auto& s : EnumerateEquilibria(g, EquilibriumKind::kNash)) {
      const BoundReport t1 = CheckThm1(ctx, PureStrategies(g, s));
      const BoundReport t5 = CheckThm5(ctx, singletons, PureStrategies(g, s));
      EXPECT_NEAR(t5.lhs, t1.lhs, 1e-12);
      EXPECT_NEAR(t5.rhs, t1.rhs, 1e-12);
      EXPECT_NEAR(t5.margin, t1.margin, 1e-12);
    }
  }
}

TEST(Thm5Test, SingleGroupIsOptimal) {
  const Game g = Coverage(6);
  const Grouping whole = Grouping::Whole(3);
  const BoundContext ctx = MakeContext(g.with_grouping(whole), &whole);
  const Game grouped = g.with_grouping(whole);
  const auto eq = EnumerateEquilibria(grouped, EquilibriumKind::kGroupNash);
  ASSERT_FALSE(eq.empty());
  for (const auto& s : eq) {
    const BoundReport r =
        CheckThm5(ctx, whole, PureStrategies(grouped, s), Gate::kInformational);
    EXPECT_DOUBLE_EQ(r.lhs, ctx.optimum.value);
    EXPECT_NEAR(r.rhs, NaiveHalfBound(g, ctx.optimum.indices, s, {{0, 1, 2}}),
                1e-12);
  }
}

TEST(Thm5Test, TwoGroupSpectrum) {
  SpectrumScenario sc = LineSpectrum({0, 2, 3.5, 5}, 2, 3.0, 0.01);
  sc.partition = Grouping::FromSizes({2, 2});
  const Game g = SpectrumGame(sc, SpectrumFlavor::kGrouped);
  const BoundContext ctx = MakeContext(g, &*sc.partition);
  for (const auto& s : EnumerateEquilibria(g, EquilibriumKind::kGroupNash)) {
    const BoundReport r = CheckThm5(ctx, *sc.partition, PureStrategies(g, s));
    EXPECT_GE(r.margin, -1e-9);
    EXPECT_NEAR(r.rhs,
                NaiveHalfBound(g, ctx.optimum.indices, s, {{0, 1}, {2, 3}}),
                1e-12);
  }
}

TEST(Thm6Test, GroupedBoundIsTighter) {
  for (int seed = 1; seed <= 5; ++seed) {
    const Game g = Coverage(seed, true, 4);
    const Grouping grouping = Grouping::FromSizes({2, 2});
    const Game grouped = g.with_grouping(grouping);
    const BoundContext ctx = MakeContext(grouped, &grouping);
    const CurvatureReport curv = ComputeCurvatures(g, &grouping, ctx.optimum.omega);
    std::vector<double> per_group;
    for (const auto& r : curv.per_group) per_group.push_back(r.value);
    for (const auto& s : EnumerateEquilibria(grouped, EquilibriumKind::kGroupNash)) {
      const auto reports = CheckThm6(ctx, grouping, PureStrategies(grouped, s),
                                     per_group, Gate::kInformational);
      ASSERT_EQ(reports.size(), 2u);
      EXPECT_EQ(reports[1].statement, Statement::kThm6Star);
      const BoundReport t2 = CheckThm2(ctx, PureStrategies(grouped, s),
                                       curv.total.value, Gate::kInformational);
      EXPECT_GE(reports[0].rhs, t2.rhs - 1e-12);
      EXPECT_GE(reports[1].rhs, reports[0].rhs - 1e-12);
      if (reports[0].hypotheses_met) {
        EXPECT_GE(reports[0].margin, -1e-9);
        EXPECT_GE(reports[1].margin, -1e-9);
      }
    }
  }
}

TEST(Thm6Test, StarOnlyWithIdenticalSpaces) {
  const Game g = Coverage(3);
  ASSERT_FALSE(g.identical_action_spaces());
  const Grouping grouping = Grouping::FromSizes({1, 2});
  const BoundContext ctx = MakeContext(g, &grouping);
  const auto reports = CheckThm6(ctx, grouping, PureStrategies(g, {0, 0, 0}),
                                 {0.1, 0.2}, Gate::kInformational);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_DOUBLE_EQ(reports[0].rhs, ctx.optimum.value / 1.2);
  EXPECT_EQ(ErrorCodeOf([&] {
              CheckThm6(ctx, grouping, PureStrategies(g, {0, 0, 0}), {0.1},
                        Gate::kInformational);
            }),
            ErrorCode::kInvalidArgument);
}

TEST(MinBlockCurvatureTest, LargestAmongSmallestBlocks) {
  const Grouping grouping = Grouping::FromSizes({2, 1, 1});
  EXPECT_DOUBLE_EQ(MinBlockCurvature(grouping, {0.9, 0.3, 0.5}), 0.5);
  EXPECT_TRUE(std::isnan(MinBlockCurvature(grouping, {0.9, std::nan(""), 0.5})));
}

TEST(Lemma1Test, OptimumHasNoCorrections) {
  const Game g = Coverage(2);
  const Grouping grouping = Grouping::FromSizes({1, 2});
  const BoundContext ctx = MakeContext(g, &grouping);
  const BoundReport r =
      CheckLemma1(ctx, grouping, PureStrategies(g, ctx.optimum.indices));
  EXPECT_DOUBLE_EQ(r.lhs, ctx.optimum.value);
  EXPECT_DOUBLE_EQ(r.margin, 0.0);
}

TEST(Lemma1Test, MatchesDirectEvaluation) {
  for (int seed = 1; seed <= 6; ++seed) {
    const Game g = Coverage(seed, false, 4);
    for (const auto& sizes : std::vector<std::vector<int>>{{1, 1, 1, 1}, {2, 2}, {1, 3}}) {
      const Grouping grouping = Grouping::FromSizes(sizes);
      const BoundContext ctx = MakeContext(g, &grouping);
      for (const auto& s : testing::AllProfiles(testing::SpaceSizes(g))) {
        const BoundReport r = CheckLemma1(ctx, grouping, PureStrategies(g, s));
        EXPECT_TRUE(r.hypotheses_met);
        EXPECT_NEAR(r.lhs,
                    NaiveLemma1Lhs(g, ctx.optimum.indices, s, BlocksOf(grouping)),
                    1e-12);
        EXPECT_GE(r.margin, -1e-9);
      }
    }
  }
}

TEST(Lemma1Test, NeedsPureProfile) {
  const Game g = SpectrumGame(LineSpectrum({0, 2}, 2, 3.0, 0.0),
                              SpectrumFlavor::kPrivate);
  const Grouping grouping = Grouping::Singletons(2);
  const BoundContext ctx = MakeContext(g, &grouping);
  const StrategyProfile s(
      {MixedStrategy(0, {0.5, 0.5}), MixedStrategy(1, {0.5, 0.5})});
  EXPECT_EQ(ErrorCodeOf([&] { CheckLemma1(ctx, grouping, s); }),
            ErrorCode::kInvalidArgument);
}

TEST(Lemma1Test, SharedActsOnNonMonotoneUtilityAreInformational) {
  // One member of a differing block keeps its optimal channel.
  SpectrumScenario sc = LineSpectrum({0, 2, 3.5, 5}, 2, 3.0, 0.01);
  const Game g = SpectrumGame(sc, SpectrumFlavor::kPrivate);
  const Grouping grouping = Grouping::FromSizes({2, 2});
  const BoundContext ctx = MakeContext(g, &grouping);
  PureProfile s = ctx.optimum.indices;
  s[1] = 1 - s[1];
  const BoundReport r =
      CheckLemma1(ctx, grouping, PureStrategies(g, s), Gate::kInformational);
  EXPECT_FALSE(r.hypotheses_met);
  EXPECT_EQ(r.unmet, "nondecreasing-or-disjoint-blocks");
}

TEST(Lemma2Test, ModularIsTight) {
  const Game g = testing::ModularGame({1, 2, 3}, {{{0}, {0, 1}}, {{1}}, {{0}, {1}}}, 2);
  const Grouping grouping = Grouping::FromSizes({2, 1});
  const BoundContext ctx = MakeContext(g, &grouping);
  for (const auto& s : testing::AllProfiles(testing::SpaceSizes(g))) {
    const BoundReport r = CheckLemma2(ctx, grouping, PureStrategies(g, s));
    EXPECT_EQ(r.sense, Sense::kAtMost);
    EXPECT_NEAR(r.margin, 0.0, 1e-12);
  }
}

TEST(Lemma2Test, SingleGroupIsTight) {
  const Game g = Coverage(5);
  const Grouping whole = Grouping::Whole(3);
  const BoundContext ctx = MakeContext(g, &whole);
  const BoundReport r = CheckLemma2(ctx, whole, PureStrategies(g, {1, 2, 0}));
  EXPECT_NEAR(r.margin, 0.0, 1e-12);
}

TEST(Lemma2Test, MatchesDirectEvaluation) {
  const Game g = Coverage(7, false, 4);
  const Grouping grouping = Grouping::FromSizes({1, 3});
  const BoundContext ctx = MakeContext(g, &grouping);
  const double empty = g.social(ActionProfile());
  for (const auto& s : testing::AllProfiles(testing::SpaceSizes(g))) {
    double rhs = 0.0;
    for (int b = 0; b < 2; ++b) {
      rhs += g.social(Part(g, s, [&](int u) { return grouping.contains(b, u); })) -
             empty;
    }
    const BoundReport r = CheckLemma2(ctx, grouping, PureStrategies(g, s));
    EXPECT_NEAR(r.rhs, rhs, 1e-12);
    EXPECT_DOUBLE_EQ(r.margin, r.rhs - r.lhs);
    EXPECT_GE(r.margin, -1e-9);
  }
}

TEST(HypothesesTest, OptionalFieldsFollowStructure) {
  const Game g = Coverage(1);
  const Hypotheses plain = VerifyHypotheses(g, nullptr);
  EXPECT_EQ(plain.submodular, true);
  EXPECT_EQ(plain.nondecreasing, true);
  EXPECT_FALSE(plain.valid_social.has_value());
  EXPECT_FALSE(plain.valid_group.has_value());
  const Grouping grouping = Grouping::FromSizes({1, 2});
  EXPECT_TRUE(VerifyHypotheses(g, &grouping).valid_group.has_value());
}

}  // namespace
}  // namespace eqbound
