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

#include "eqbound/structure.h"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <vector>

namespace eqbound {
namespace {

void RequireOrderInvariant(const Game& game) {
  if (!game.order_invariant()) {
    throw Error(ErrorCode::kInvalidArgument,
                "structural checks need an order-invariant social utility");
  }
}

// γ tabulated over every profile in which each user is absent (state 0) or
// plays options[user][state - 1].
class Grid {
 public:
  Grid(const Game& game, std::vector<std::vector<ActSet>> options,
       const Limits& limits)
      : options_(std::move(options)) {
    const int n = game.num_users();
    stride_.assign(n, 1);
    std::uint64_t total = 1;
    for (int i = n - 1; i >= 0; --i) {
      stride_[i] = total;
      total = SaturatingMul(total, options_[i].size() + 1);
    }
    CheckBudget(total, limits, "profile grid");
    values_.resize(total);
    std::vector<std::size_t> state(n, 0);
    for (std::uint64_t index = 0; index < total; ++index) {
      values_[index] = game.social(ProfileAt(state));
      for (int i = n - 1; i >= 0; --i) {
        if (++state[i] <= options_[i].size()) break;
        state[i] = 0;
      }
    }
  }

  ActionProfile ProfileAt(const std::vector<std::size_t>& state) const {
    std::vector<ActionProfile::Entry> entries;
    for (std::size_t i = 0; i < state.size(); ++i) {
      if (state[i] != 0) {
        entries.push_back({static_cast<UserIndex>(i), options_[i][state[i] - 1]});
      }
    }
    return ActionProfile(std::move(entries));
  }

  std::uint64_t stride(int user) const { return stride_[user]; }
  double at(std::uint64_t index) const { return values_[index]; }
  const std::vector<ActSet>& options(int user) const { return options_[user]; }

 private:
  std::vector<std::vector<ActSet>> options_;
  std::vector<std::uint64_t> stride_;
  std::vector<double> values_;
};

std::vector<std::vector<ActSet>> FeasibleOptions(const Game& game) {
  std::vector<std::vector<ActSet>> out;
  for (int i = 0; i < game.num_users(); ++i) out.push_back(game.space(i).feasible);
  return out;
}

// Feasible actions first (same order), then distinct pairwise unions not
// already present.
std::vector<std::vector<ActSet>> UnionOptions(const Game& game) {
  std::vector<std::vector<ActSet>> out = FeasibleOptions(game);
  for (int i = 0; i < game.num_users(); ++i) {
    const auto& feasible = game.space(i).feasible;
    for (std::size_t a = 0; a < feasible.size(); ++a) {
      for (std::size_t b = a + 1; b < feasible.size(); ++b) {
        ActSet u = feasible[a] | feasible[b];
        if (std::find(out[i].begin(), out[i].end(), u) == out[i].end()) {
          out[i].push_back(u);
        }
      }
    }
  }
  return out;
}

// Odometer over per-user role counts.
bool Advance(std::vector<int>& roles, const std::vector<int>& radix) {
  for (int i = static_cast<int>(roles.size()) - 1; i >= 0; --i) {
    if (++roles[i] < radix[i]) return true;
    roles[i] = 0;
  }
  return false;
}

void AppendList(std::vector<int>& key, const std::vector<int>& list) {
  key.push_back(static_cast<int>(list.size()));
  key.insert(key.end(), list.begin(), list.end());
}

ActionProfile Build(const Grid& grid, const std::vector<int>& users,
                    const std::vector<int>& options) {
  std::vector<ActionProfile::Entry> entries;
  for (std::size_t k = 0; k < users.size(); ++k) {
    entries.push_back({users[k], grid.options(users[k])[options[k]]});
  }
  return ActionProfile(std::move(entries));
}

}  // namespace

std::string_view WitnessKindName(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::kMonotonicity: return "Monotonicity";
    case WitnessKind::kSubmodularity: return "Submodularity";
    case WitnessKind::kAssumption1: return "Assumption1";
    case WitnessKind::kAssumption2: return "Assumption2";
    case WitnessKind::kAssumption3: return "Assumption3";
    case WitnessKind::kAssumption4: return "Assumption4";
    case WitnessKind::kAssumption5: return "Assumption5";
    case WitnessKind::kAssumption6: return "Assumption6";
  }
  return "Unknown";
}

Verdict CheckNondecreasing(const Game& game, double tol, const Limits& limits) {
  RequireOrderInvariant(game);
  const int n = game.num_users();
  Grid grid(game, FeasibleOptions(game), limits);

  // Role 0: absent; 1..n_i: in Y with action r-1; n_i+1..2n_i: in X only.
  std::vector<int> radix(n);
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    radix[i] = 1 + 2 * game.space(i).size();
    count = SaturatingMul(count, radix[i]);
  }
  CheckBudget(count, limits, "monotonicity enumeration");

  std::vector<int> roles(n, 0);
  std::optional<std::vector<int>> best_key;
  Verdict verdict;
  do {
    std::uint64_t ix = 0, iy = 0;
    bool strict = false;
    for (int i = 0; i < n; ++i) {
      const int ni = game.space(i).size();
      if (roles[i] == 0) continue;
      if (roles[i] <= ni) {
        iy += grid.stride(i) * roles[i];
        ix += grid.stride(i) * roles[i];
      } else {
        ix += grid.stride(i) * (roles[i] - ni);
        strict = true;
      }
    }
    if (!strict) continue;
    const double gx = grid.at(ix);
    const double gy = grid.at(iy);
    if (!(gx < gy - tol)) continue;

    std::vector<int> xu, xa, yu, ya;
    for (int i = 0; i < n; ++i) {
      const int ni = game.space(i).size();
      if (roles[i] == 0) continue;
      const int action = roles[i] <= ni ? roles[i] - 1 : roles[i] - ni - 1;
      xu.push_back(i);
      xa.push_back(action);
      if (roles[i] <= ni) {
        yu.push_back(i);
        ya.push_back(action);
      }
    }
    std::vector<int> key{static_cast<int>(xu.size())};
    key.insert(key.end(), xu.begin(), xu.end());
    key.insert(key.end(), xa.begin(), xa.end());
    AppendList(key, yu);
    if (best_key && !(key < *best_key)) continue;
    best_key = key;
    Witness w{WitnessKind::kMonotonicity, Build(grid, yu, ya),
              Build(grid, xu, xa), ActionProfile(), -1, std::nullopt, gx, gy};
    verdict.holds = false;
    verdict.witness = std::move(w);
  } while (Advance(roles, radix));
  return verdict;
}

Verdict CheckSubmodular(const Game& game, double tol, const Limits& limits) {
  RequireOrderInvariant(game);
  const int n = game.num_users();
  Grid grid(game, UnionOptions(game), limits);

  // Role 0: absent; 1..n_i: in Y; n_i+1..2n_i: in X only;
  // 2n_i+1..2n_i+o_i: in Z with option r-2n_i-1.
  std::vector<int> radix(n);
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    radix[i] = 1 + 2 * game.space(i).size() +
               static_cast<int>(grid.options(i).size());
    count = SaturatingMul(count, radix[i]);
  }
  CheckBudget(count, limits, "submodularity enumeration");

  std::vector<int> roles(n, 0);
  std::optional<std::vector<int>> best_key;
  Verdict verdict;
  do {
    std::uint64_t ix = 0, iy = 0, iz = 0;
    bool strict = false, has_z = false;
    for (int i = 0; i < n; ++i) {
      const int ni = game.space(i).size();
      const int r = roles[i];
      if (r == 0) continue;
      if (r <= ni) {
        iy += grid.stride(i) * r;
        ix += grid.stride(i) * r;
      } else if (r <= 2 * ni) {
        ix += grid.stride(i) * (r - ni);
        strict = true;
      } else {
        iz += grid.stride(i) * (r - 2 * ni);
        has_z = true;
      }
    }
    if (!strict || !has_z) continue;
    const double gain_y = grid.at(iy + iz) - grid.at(iy);
    const double gain_x = grid.at(ix + iz) - grid.at(ix);
    if (!(gain_y < gain_x - tol)) continue;

    std::vector<int> xu, xa, yu, ya, zu, zo;
    for (int i = 0; i < n; ++i) {
      const int ni = game.space(i).size();
      const int r = roles[i];
      if (r == 0) continue;
      if (r <= 2 * ni) {
        const int action = r <= ni ? r - 1 : r - ni - 1;
        xu.push_back(i);
        xa.push_back(action);
        if (r <= ni) {
          yu.push_back(i);
          ya.push_back(action);
        }
      } else {
        zu.push_back(i);
        zo.push_back(r - 2 * ni - 1);
      }
    }
    std::vector<int> key{static_cast<int>(xu.size())};
    key.insert(key.end(), xu.begin(), xu.end());
    key.insert(key.end(), xa.begin(), xa.end());
    AppendList(key, yu);
    AppendList(key, zu);
    key.insert(key.end(), zo.begin(), zo.end());
    if (best_key && !(key < *best_key)) continue;
    best_key = key;
    Witness w{WitnessKind::kSubmodularity, Build(grid, yu, ya),
              Build(grid, xu, xa), Build(grid, zu, zo), -1, std::nullopt,
              gain_y, gain_x};
    verdict.holds = false;
    verdict.witness = std::move(w);
  } while (Advance(roles, radix));
  return verdict;
}

namespace {

enum class ValidityFlavor { kPrivate, kSocial };

Verdict CheckValidityPerUser(const Game& game, ValidityFlavor flavor,
                             double tol, const Limits& limits) {
  const WitnessKind marginal_kind = flavor == ValidityFlavor::kPrivate
                                        ? WitnessKind::kAssumption1
                                        : WitnessKind::kAssumption3;
  const WitnessKind sum_kind = flavor == ValidityFlavor::kPrivate
                                   ? WitnessKind::kAssumption2
                                   : WitnessKind::kAssumption4;
  auto utility = [&](UserIndex i, const ActionProfile& x) {
    return flavor == ValidityFlavor::kPrivate ? game.private_utility(i, x)
                                              : SocialGroupUtility(game, i, x);
  };
  Verdict verdict;
  ForEachPureProfile(game, limits, [&](const PureProfile& indices) {
    if (!verdict.holds) return;
    const ActionProfile x = game.profile(indices);
    const double total = game.social(x);
    double sum = 0.0;
    for (int i = 0; i < game.num_users(); ++i) {
      const double own = utility(i, x);
      sum += own;
      const ActionProfile rest = x.without(i);
      const double loss = total - game.social(rest);
      if (own < loss - tol) {
        verdict.holds = false;
        verdict.witness = Witness{marginal_kind, rest, x,
                                  ActionProfile::Single(i, *x.find(i)), i,
                                  std::nullopt, own, loss};
        return;
      }
    }
    if (total < sum - tol) {
      verdict.holds = false;
      verdict.witness = Witness{sum_kind, ActionProfile(), x, ActionProfile(),
                                -1, std::nullopt, total, sum};
    }
  });
  return verdict;
}

}  // namespace

Verdict CheckValidityPrivate(const Game& game, double tol,
                             const Limits& limits) {
  return CheckValidityPerUser(game, ValidityFlavor::kPrivate, tol, limits);
}

Verdict CheckValiditySocial(const Game& game, double tol,
                            const Limits& limits) {
  if (!game.social_graph()) {
    throw Error(ErrorCode::kMissingSocialGraph,
                "social validity needs social ties");
  }
  return CheckValidityPerUser(game, ValidityFlavor::kSocial, tol, limits);
}

Verdict CheckValidityGroup(const Game& game, double tol, const Limits& limits) {
  if (!game.grouping()) {
    throw Error(ErrorCode::kMissingGrouping, "group validity needs groups");
  }
  return CheckValidityGroup(game, *game.grouping(), tol, limits);
}

Verdict CheckValidityGroup(const Game& game, const Grouping& grouping,
                           double tol, const Limits& limits) {
  if (grouping.num_users() != game.num_users()) {
    throw Error(ErrorCode::kInvalidArgument, "grouping size mismatch");
  }
  Verdict verdict;
  ForEachPureProfile(game, limits, [&](const PureProfile& indices) {
    if (!verdict.holds) return;
    const ActionProfile x = game.profile(indices);
    const double total = game.social(x);
    double sum = 0.0;
    for (int g = 0; g < grouping.num_groups(); ++g) {
      const double own = BlockUtility(game, grouping, g, x);
      sum += own;
      const ActionProfile rest = WithoutBlock(x, grouping, g);
      const double loss = total - game.social(rest);
      if (own < loss - tol) {
        verdict.holds = false;
        verdict.witness = Witness{WitnessKind::kAssumption5, rest, x,
                                  BlockPart(x, grouping, g), g, grouping, own,
                                  loss};
        return;
      }
    }
    if (total < sum - tol) {
      verdict.holds = false;
      verdict.witness = Witness{WitnessKind::kAssumption6, ActionProfile(), x,
                                ActionProfile(), -1, grouping, total, sum};
    }
  });
  return verdict;
}

bool ReproducesViolation(const Game& game, const Witness& w, double tol) {
  double lhs = 0.0, rhs = 0.0;
  switch (w.kind) {
    case WitnessKind::kMonotonicity:
      if (!IsSubsequence(w.y, w.x)) return false;
      lhs = game.social(w.x);
      rhs = game.social(w.y);
      break;
    case WitnessKind::kSubmodularity:
      if (!IsSubsequence(w.y, w.x)) return false;
      lhs = Marginal(game, w.z, w.y);
      rhs = Marginal(game, w.z, w.x);
      break;
    case WitnessKind::kAssumption1:
      lhs = game.private_utility(w.index, w.x);
      rhs = Marginal(game, w.z, w.y);
      break;
    case WitnessKind::kAssumption3:
      lhs = SocialGroupUtility(game, w.index, w.x);
      rhs = Marginal(game, w.z, w.y);
      break;
    case WitnessKind::kAssumption5:
      if (!w.grouping) return false;
      lhs = BlockUtility(game, *w.grouping, w.index, w.x);
      rhs = Marginal(game, w.z, w.y);
      break;
    case WitnessKind::kAssumption2:
      lhs = game.social(w.x);
      for (int i = 0; i < game.num_users(); ++i) {
        rhs += game.private_utility(i, w.x);
      }
      break;
    case WitnessKind::kAssumption4:
      lhs = game.social(w.x);
      for (int i = 0; i < game.num_users(); ++i) {
        rhs += SocialGroupUtility(game, i, w.x);
      }
      break;
    case WitnessKind::kAssumption6:
      if (!w.grouping) return false;
      lhs = game.social(w.x);
      for (int g = 0; g < w.grouping->num_groups(); ++g) {
        rhs += BlockUtility(game, *w.grouping, g, w.x);
      }
      break;
  }
  return lhs < rhs - tol;
}

std::string DescribeWitness(const Game& game, const Witness& w) {
  auto profile = [&](const ActionProfile& p) {
    std::ostringstream out;
    out << "(";
    bool first = true;
    for (const auto& e : p.entries()) {
      if (!first) out << ", ";
      first = false;
      out << e.user << ":" << game.describe(e.user, e.acts);
    }
    out << ")";
    return out.str();
  };
  std::ostringstream out;
  out << WitnessKindName(w.kind) << " X=" << profile(w.x);
  if (!w.y.empty() || w.kind == WitnessKind::kMonotonicity ||
      w.kind == WitnessKind::kSubmodularity) {
    out << " Y=" << profile(w.y);
  }
  if (!w.z.empty()) out << " Z=" << profile(w.z);
  if (w.index >= 0) out << " index=" << w.index;
  out.precision(17);
  out << " lhs=" << w.lhs << " rhs=" << w.rhs;
  return out.str();
}

}  // namespace eqbound
