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

#ifndef EQBOUND_BOUNDS_H_
#define EQBOUND_BOUNDS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eqbound/curvature.h"
#include "eqbound/equilibria.h"
#include "eqbound/error.h"
#include "eqbound/game.h"

namespace eqbound {

struct Optimum {
  PureProfile indices;
  ActionProfile omega;
  double value = 0.0;
};

// Lexicographically least complete pure profile attaining max γ.
Optimum BruteForceOpt(const Game& game, const Limits& limits = {});

enum class Statement {
  kThm1,      // γ̄(S) >= ½(γ̄(Ω) + Σ_i γ̄_{s_i}(S_{-i} ∪ Ω)), Nash S
  kThm2,      // γ̄(S) >= γ̄(Ω) / (1 + c), Nash S
  kThm3,      // Thm1 form, social-aware S
  kThm4,      // Thm2 form, social-aware S
  kThm5,      // γ̄(S) >= ½(γ̄(Ω) + Σ_g γ̄_{s^g}(Ω ∪ S^{-g})), group S
  kThm6,      // γ̄(S) >= γ̄(Ω) / (1 + max_g c_{k_g}), group S
  kThm6Star,  // γ̄(S) >= γ̄(Ω) / (1 + c_{k*}), identical action spaces
  kLem1,      // γ̄(S) + corrections >= γ̄(Ω)
  kLem2,      // γ̄(S) <= Σ_g γ̄_{s^g}(∅)
};

std::string_view StatementName(Statement statement);

enum class Sense { kAtLeast, kAtMost };

struct BoundReport {
  Statement statement;
  double lhs = 0.0;
  double rhs = 0.0;
  Sense sense = Sense::kAtLeast;
  // Signed slack: lhs − rhs for kAtLeast, rhs − lhs for kAtMost. The
  // inequality holds iff margin >= 0.
  double margin = 0.0;
  bool hypotheses_met = false;
  // Hypotheses that failed or were not verified, comma separated.
  std::string unmet;
  PureProfile profile;
  std::vector<double> curvatures;
};

// Structural verdicts established for one game (and, for the group
// hypotheses, one grouping). Unset means "not verified".
struct Hypotheses {
  std::optional<bool> submodular;
  std::optional<bool> nondecreasing;
  std::optional<bool> valid_private;
  std::optional<bool> valid_social;
  std::optional<bool> valid_group;
};

// Runs every applicable structural check.
Hypotheses VerifyHypotheses(const Game& game, const Grouping* grouping,
                            double tol = kDefaultTolerance,
                            const Limits& limits = {});

// kStrict throws kHypothesisUnverified instead of returning a report whose
// hypotheses are unmet; kInformational always returns the report.
enum class Gate { kStrict, kInformational };

struct BoundContext {
  const Game& game;
  Optimum optimum;
  Hypotheses hypotheses;
  double tol = kDefaultTolerance;
  Limits limits;
};

BoundReport CheckThm1(const BoundContext& ctx, const StrategyProfile& s,
                      Gate gate = Gate::kStrict);
BoundReport CheckThm2(const BoundContext& ctx, const StrategyProfile& s,
                      double c, Gate gate = Gate::kStrict);
// {Thm3, Thm4}.
std::vector<BoundReport> CheckThm3Thm4(const BoundContext& ctx,
                                       const StrategyProfile& s, double c,
                                       Gate gate = Gate::kStrict);
BoundReport CheckThm5(const BoundContext& ctx, const Grouping& grouping,
                      const StrategyProfile& s, Gate gate = Gate::kStrict);
// {Thm6} or, with identical action spaces, {Thm6, Thm6Star}.
std::vector<BoundReport> CheckThm6(const BoundContext& ctx,
                                   const Grouping& grouping,
                                   const StrategyProfile& s,
                                   const std::vector<double>& per_group_c,
                                   Gate gate = Gate::kStrict);
// Blocks count as differing when σ^g ≠ s^g as joint actions. Besides
// submodularity this needs γ nondecreasing or, for every differing block,
// σ_j ∩ s_j = ∅ for each member j.
BoundReport CheckLemma1(const BoundContext& ctx, const Grouping& grouping,
                        const StrategyProfile& s, Gate gate = Gate::kStrict);
BoundReport CheckLemma2(const BoundContext& ctx, const Grouping& grouping,
                        const StrategyProfile& s, Gate gate = Gate::kStrict);

// Curvature of the k* blocks: the largest c_{k_g} among blocks of minimum
// size.
double MinBlockCurvature(const Grouping& grouping,
                         const std::vector<double>& per_group_c);

}  // namespace eqbound

#endif  // EQBOUND_BOUNDS_H_
