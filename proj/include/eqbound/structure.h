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

#ifndef EQBOUND_STRUCTURE_H_
#define EQBOUND_STRUCTURE_H_

#include <optional>
#include <string>
#include <string_view>

#include "eqbound/error.h"
#include "eqbound/game.h"

namespace eqbound {

enum class WitnessKind {
  kMonotonicity,
  kSubmodularity,
  kAssumption1,
  kAssumption2,
  kAssumption3,
  kAssumption4,
  kAssumption5,
  kAssumption6,
};

std::string_view WitnessKindName(WitnessKind kind);

// A concrete violation. The recorded inequality is lhs >= rhs; a witness is
// only produced when lhs < rhs - tol.
//
//   kMonotonicity   lhs = γ(X),          rhs = γ(Y)          (Y ⊆ X)
//   kSubmodularity  lhs = γ_Z(Y),        rhs = γ_Z(X)        (Y ⊆ X)
//   kAssumption1/3  lhs = α_i(X) | η_i(X), rhs = γ_{x_i}(X_{-i})
//   kAssumption5    lhs = η_g(X),        rhs = γ_{x^g}(X^{-g})
//   kAssumption2/4/6 lhs = γ(X),         rhs = Σ α_i | η_i | η_g
//
// `index` is the user (1/3) or group (5) concerned, -1 otherwise.
struct Witness {
  WitnessKind kind;
  ActionProfile y;
  ActionProfile x;
  ActionProfile z;
  int index = -1;
  // Partition used by kAssumption5/6 witnesses.
  std::optional<Grouping> grouping;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;

  explicit operator bool() const { return holds; }
};

// γ(Y) <= γ(X) + tol for every pure X over feasible actions and Y ⊆ X.
Verdict CheckNondecreasing(const Game& game, double tol = kDefaultTolerance,
                           const Limits& limits = {});

// γ_Z(Y) >= γ_Z(X) - tol for every pure X, Y ⊆ X, and Z on users outside X.
// Z's act-sets range over feasible actions and unions of two feasible
// actions, which is where union-composed profiles land.
Verdict CheckSubmodular(const Game& game, double tol = kDefaultTolerance,
                        const Limits& limits = {});

// Pure-profile sufficient conditions for the validity assumptions:
//   private: α_i(X) >= γ_{x_i}(X_{-i}) and Σ α_i(X) <= γ(X)
//   social:  the same with η_i (needs social ties)
//   group:   η_g(X) >= γ_{x^g}(X^{-g}) and Σ η_g(X) <= γ(X), η_g a block sum
Verdict CheckValidityPrivate(const Game& game, double tol = kDefaultTolerance,
                             const Limits& limits = {});
Verdict CheckValiditySocial(const Game& game, double tol = kDefaultTolerance,
                            const Limits& limits = {});
Verdict CheckValidityGroup(const Game& game, double tol = kDefaultTolerance,
                           const Limits& limits = {});
Verdict CheckValidityGroup(const Game& game, const Grouping& grouping,
                           double tol = kDefaultTolerance,
                           const Limits& limits = {});

// Recomputes lhs and rhs from the witness profiles. Returns true when they
// still describe a violation at `tol`.
bool ReproducesViolation(const Game& game, const Witness& witness,
                         double tol = kDefaultTolerance);

std::string DescribeWitness(const Game& game, const Witness& witness);

}  // namespace eqbound

#endif  // EQBOUND_STRUCTURE_H_
