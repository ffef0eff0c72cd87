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

#include "eqbound/game.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace eqbound {
namespace {

template <typename T, typename Key>
void SortAndCheckUnique(std::vector<T>& entries, Key key) {
  std::stable_sort(entries.begin(), entries.end(),
                   [&](const T& a, const T& b) { return key(a) < key(b); });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (key(entries[k - 1]) == key(entries[k])) {
      throw Error(ErrorCode::kOverlappingUsers,
                  "user " + std::to_string(key(entries[k])) +
                      " appears twice");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- ActSet

ActSet ActSet::Of(std::initializer_list<int> acts) {
  std::uint64_t bits = 0;
  for (int act : acts) {
    if (act < 0 || act >= kMaxGroundSetSize) {
      throw Error(ErrorCode::kInvalidArgument,
                  "act position out of range: " + std::to_string(act));
    }
    bits |= std::uint64_t{1} << act;
  }
  return ActSet(bits);
}

std::vector<int> ActSet::acts() const {
  std::vector<int> out;
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest));
  }
  return out;
}

// --------------------------------------------------------- ActionProfile

ActionProfile::ActionProfile(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  SortAndCheckUnique(entries_, [](const Entry& e) { return e.user; });
}

const ActSet* ActionProfile::find(UserIndex user) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), user,
      [](const Entry& e, UserIndex u) { return e.user < u; });
  if (it == entries_.end() || it->user != user) return nullptr;
  return &it->acts;
}

ActionProfile ActionProfile::without(UserIndex user) const {
  return filter([user](UserIndex u) { return u != user; });
}

ActionProfile ActionProfile::with(UserIndex user, ActSet acts) const {
  ActionProfile out;
  out.entries_.reserve(entries_.size() + 1);
  bool placed = false;
  for (const Entry& e : entries_) {
    if (!placed && e.user >= user) {
      out.entries_.push_back({user, acts});
      placed = true;
      if (e.user == user) continue;
    }
    out.entries_.push_back(e);
  }
  if (!placed) out.entries_.push_back({user, acts});
  return out;
}

ActionProfile ActionProfile::filter(
    const std::function<bool(UserIndex)>& keep) const {
  ActionProfile out;
  for (const Entry& e : entries_) {
    if (keep(e.user)) out.entries_.push_back(e);
  }
  return out;
}

ActionProfile Concat(const ActionProfile& y, const ActionProfile& z) {
  std::vector<ActionProfile::Entry> entries(y.entries().begin(),
                                            y.entries().end());
  entries.insert(entries.end(), z.entries().begin(), z.entries().end());
  return ActionProfile(std::move(entries));
}

bool IsSubsequence(const ActionProfile& y, const ActionProfile& x) {
  for (const auto& e : y.entries()) {
    const ActSet* found = x.find(e.user);
    if (found == nullptr || *found != e.acts) return false;
  }
  return true;
}

// --------------------------------------------------------- MixedStrategy

MixedStrategy::MixedStrategy(UserIndex user, std::vector<double> probs)
    : user_(user), probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw Error(ErrorCode::kDegenerateDistribution,
                "empty distribution for user " + std::to_string(user));
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::kDegenerateDistribution,
                  "negative or non-finite probability for user " +
                      std::to_string(user));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::kDegenerateDistribution,
                "probabilities of user " + std::to_string(user) +
                    " do not sum to one");
  }
}

MixedStrategy MixedStrategy::Pure(UserIndex user, int num_actions, int action) {
  if (action < 0 || action >= num_actions) {
    throw Error(ErrorCode::kInvalidArgument, "action index out of range");
  }
  std::vector<double> probs(num_actions, 0.0);
  probs[action] = 1.0;
  return MixedStrategy(user, std::move(probs));
}

std::optional<int> MixedStrategy::pure_action() const {
  for (int j = 0; j < num_actions(); ++j) {
    if (probs_[j] == 1.0) return j;
  }
  return std::nullopt;
}

// ------------------------------------------------------- StrategyProfile

StrategyProfile::StrategyProfile(std::vector<MixedStrategy> entries)
    : entries_(std::move(entries)) {
  SortAndCheckUnique(entries_, [](const MixedStrategy& s) { return s.user(); });
}

const MixedStrategy* StrategyProfile::find(UserIndex user) const {
  for (const auto& s : entries_) {
    if (s.user() == user) return &s;
  }
  return nullptr;
}

StrategyProfile StrategyProfile::without(UserIndex user) const {
  return filter([user](UserIndex u) { return u != user; });
}

StrategyProfile StrategyProfile::with(MixedStrategy strategy) const {
  std::vector<MixedStrategy> entries;
  for (const auto& s : entries_) {
    if (s.user() != strategy.user()) entries.push_back(s);
  }
  entries.push_back(std::move(strategy));
  return StrategyProfile(std::move(entries));
}

StrategyProfile StrategyProfile::filter(
    const std::function<bool(UserIndex)>& keep) const {
  StrategyProfile out;
  for (const auto& s : entries_) {
    if (keep(s.user())) out.entries_.push_back(s);
  }
  return out;
}

bool StrategyProfile::is_pure() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const MixedStrategy& s) {
                       return s.pure_action().has_value();
                     });
}

StrategyProfile Concat(const StrategyProfile& t, const StrategyProfile& w) {
  std::vector<MixedStrategy> entries(t.entries().begin(), t.entries().end());
  entries.insert(entries.end(), w.entries().begin(), w.entries().end());
  return StrategyProfile(std::move(entries));
}

// ----------------------------------------------------------- SocialGraph

SocialGraph::SocialGraph(std::vector<std::vector<Tie>> ties)
    : ties_(std::move(ties)) {
  const int n = num_users();
  for (int i = 0; i < n; ++i) {
    std::set<UserIndex> seen;
    for (const Tie& t : ties_[i]) {
      if (t.to < 0 || t.to >= n) {
        throw Error(ErrorCode::kInvalidArgument, "tie to unknown user");
      }
      if (t.to == i) {
        throw Error(ErrorCode::kInvalidArgument,
                    "user " + std::to_string(i) + " tied to itself");
      }
      if (!(t.weight >= 0.0 && t.weight <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "tie weight outside [0,1]");
      }
      if (!seen.insert(t.to).second) {
        throw Error(ErrorCode::kInvalidArgument, "duplicate tie");
      }
    }
    std::sort(ties_[i].begin(), ties_[i].end(),
              [](const Tie& a, const Tie& b) { return a.to < b.to; });
  }
}

SocialGraph SocialGraph::Empty(int num_users) {
  return SocialGraph(std::vector<std::vector<Tie>>(num_users));
}

double SocialGraph::weight(UserIndex from, UserIndex to) const {
  for (const Tie& t : ties_[from]) {
    if (t.to == to) return t.weight;
  }
  return 0.0;
}

bool SocialGraph::is_symmetric(double tol) const {
  for (int i = 0; i < num_users(); ++i) {
    for (const Tie& t : ties_[i]) {
      if (std::abs(weight(t.to, i) - t.weight) > tol) return false;
    }
  }
  return true;
}

// -------------------------------------------------------------- Grouping

Grouping::Grouping(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "grouping has no blocks");
  }
  for (int k : sizes_) {
    if (k <= 0) throw Error(ErrorCode::kInvalidArgument, "empty block");
    firsts_.push_back(num_users_);
    num_users_ += k;
  }
}

Grouping Grouping::FromSizes(std::vector<int> sizes) {
  return Grouping(std::move(sizes));
}

Grouping Grouping::FromBlocks(
    const std::vector<std::vector<UserIndex>>& blocks) {
  std::vector<int> sizes;
  UserIndex next = 0;
  for (const auto& block : blocks) {
    for (UserIndex u : block) {
      if (u != next) {
        throw Error(ErrorCode::kInvalidArgument,
                    "groups must list users 0..N-1 in contiguous blocks");
      }
      ++next;
    }
    sizes.push_back(static_cast<int>(block.size()));
  }
  return Grouping(std::move(sizes));
}

Grouping Grouping::Singletons(int num_users) {
  return Grouping(std::vector<int>(num_users, 1));
}

Grouping Grouping::Whole(int num_users) { return Grouping({num_users}); }

int Grouping::group_of(UserIndex user) const {
  for (int g = 0; g < num_groups(); ++g) {
    if (contains(g, user)) return g;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "user " + std::to_string(user) + " outside grouping");
}

std::vector<UserIndex> Grouping::users(int group) const {
  std::vector<UserIndex> out(sizes_[group]);
  for (int k = 0; k < sizes_[group]; ++k) out[k] = firsts_[group] + k;
  return out;
}

int Grouping::min_size() const {
  return *std::min_element(sizes_.begin(), sizes_.end());
}

// ----------------------------------------------------------- ActionSpace

std::optional<int> ActionSpace::index_of(ActSet acts) const {
  for (int j = 0; j < size(); ++j) {
    if (feasible[j] == acts) return j;
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ Game

Game::Game(std::vector<std::vector<std::string>> ground_sets,
           std::vector<ActionSpace> spaces, SocialUtility social,
           PrivateUtility private_utility, bool order_invariant)
    : order_invariant_(order_invariant) {
  if (spaces.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "game has no users");
  }
  if (ground_sets.size() != spaces.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "one ground set per user is required");
  }
  if (!social || !private_utility) {
    throw Error(ErrorCode::kInvalidArgument, "utility oracle missing");
  }
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const auto& ground = ground_sets[i];
    if (ground.size() > static_cast<std::size_t>(kMaxGroundSetSize)) {
      throw Error(ErrorCode::kInvalidArgument, "ground set larger than 64");
    }
    if (std::set<std::string>(ground.begin(), ground.end()).size() !=
        ground.size()) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate act in ground set");
    }
    const std::uint64_t universe =
        ground.size() == 64 ? ~std::uint64_t{0}
                            : (std::uint64_t{1} << ground.size()) - 1;
    const auto& feasible = spaces[i].feasible;
    if (feasible.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "user " + std::to_string(i) + " has no feasible action");
    }
    std::set<ActSet> distinct(feasible.begin(), feasible.end());
    if (distinct.size() != feasible.size()) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate feasible action");
    }
    for (ActSet a : feasible) {
      if ((a.bits() & ~universe) != 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "action outside the user's ground set");
      }
    }
  }
  ground_sets_ = std::make_shared<const std::vector<std::vector<std::string>>>(
      std::move(ground_sets));
  spaces_ = std::make_shared<const std::vector<ActionSpace>>(std::move(spaces));
  social_ = std::make_shared<const SocialUtility>(std::move(social));
  private_ = std::make_shared<const PrivateUtility>(std::move(private_utility));
}

Game Game::with_social_graph(SocialGraph graph) const {
  if (graph.num_users() != num_users()) {
    throw Error(ErrorCode::kInvalidArgument,
                "social graph size does not match the game");
  }
  Game out = *this;
  out.social_graph_ = std::move(graph);
  return out;
}

Game Game::with_grouping(Grouping grouping) const {
  if (grouping.num_users() != num_users()) {
    throw Error(ErrorCode::kInvalidArgument,
                "grouping size does not match the game");
  }
  Game out = *this;
  out.grouping_ = std::move(grouping);
  return out;
}

ActionProfile Game::profile(std::span<const int> action_indices) const {
  if (static_cast<int>(action_indices.size()) != num_users()) {
    throw Error(ErrorCode::kIncompleteProfile,
                "expected one action index per user");
  }
  std::vector<ActionProfile::Entry> entries;
  entries.reserve(action_indices.size());
  for (int i = 0; i < num_users(); ++i) {
    int j = action_indices[i];
    if (j < 0 || j >= space(i).size()) {
      throw Error(ErrorCode::kInvalidArgument, "action index out of range");
    }
    entries.push_back({i, space(i).feasible[j]});
  }
  return ActionProfile(std::move(entries));
}

std::optional<PureProfile> Game::indices_of(
    const ActionProfile& profile) const {
  if (!is_complete(profile)) return std::nullopt;
  PureProfile out;
  for (const auto& e : profile.entries()) {
    auto j = space(e.user).index_of(e.acts);
    if (!j) return std::nullopt;
    out.push_back(*j);
  }
  return out;
}

bool Game::is_complete(const ActionProfile& profile) const {
  if (static_cast<int>(profile.size()) != num_users()) return false;
  int expected = 0;
  for (const auto& e : profile.entries()) {
    if (e.user != expected++) return false;
  }
  return true;
}

std::uint64_t Game::num_pure_profiles() const {
  std::uint64_t count = 1;
  for (int i = 0; i < num_users(); ++i) {
    count = SaturatingMul(count, static_cast<std::uint64_t>(space(i).size()));
  }
  return count;
}

bool Game::identical_action_spaces() const {
  auto named = [this](UserIndex i) {
    std::set<std::set<std::string>> out;
    for (ActSet a : space(i).feasible) {
      std::set<std::string> names;
      for (int act : a.acts()) names.insert(ground_set(i)[act]);
      out.insert(std::move(names));
    }
    return out;
  };
  const auto reference = named(0);
  for (int i = 1; i < num_users(); ++i) {
    if (named(i) != reference) return false;
  }
  return true;
}

std::string Game::describe(UserIndex user, ActSet acts) const {
  std::string out = "{";
  bool first = true;
  for (int act : acts.acts()) {
    if (!first) out += ",";
    first = false;
    out += act < static_cast<int>(ground_set(user).size())
               ? ground_set(user)[act]
               : "#" + std::to_string(act);
  }
  return out + "}";
}

// ------------------------------------------------------------ utilities

double Marginal(const Game& game, const ActionProfile& z,
                const ActionProfile& y) {
  return game.social(Concat(y, z)) - game.social(y);
}

double SocialGroupUtility(const Game& game, UserIndex user,
                          const ActionProfile& profile) {
  if (!game.social_graph()) {
    throw Error(ErrorCode::kMissingSocialGraph,
                "social-aware utility needs social ties");
  }
  if (!game.is_complete(profile)) {
    throw Error(ErrorCode::kIncompleteProfile,
                "social group utility needs a complete profile");
  }
  double value = game.private_utility(user, profile);
  for (const auto& tie : game.social_graph()->neighbors(user)) {
    value += tie.weight * game.private_utility(tie.to, profile);
  }
  return value;
}

double BlockUtility(const Game& game, const Grouping& grouping, int group,
                    const ActionProfile& profile) {
  if (!game.is_complete(profile)) {
    throw Error(ErrorCode::kIncompleteProfile,
                "block utility needs a complete profile");
  }
  if (group < 0 || group >= grouping.num_groups()) {
    throw Error(ErrorCode::kInvalidArgument, "group index out of range");
  }
  double value = 0.0;
  for (UserIndex u : grouping.users(group)) {
    value += game.private_utility(u, profile);
  }
  return value;
}

double BlockUtility(const Game& game, int group, const ActionProfile& profile) {
  if (!game.grouping()) {
    throw Error(ErrorCode::kMissingGrouping, "game has no grouping");
  }
  return BlockUtility(game, *game.grouping(), group, profile);
}

ActionProfile BlockPart(const ActionProfile& profile, const Grouping& grouping,
                        int group) {
  return profile.filter(
      [&](UserIndex u) { return grouping.contains(group, u); });
}

ActionProfile WithoutBlock(const ActionProfile& profile,
                           const Grouping& grouping, int group) {
  return profile.filter(
      [&](UserIndex u) { return !grouping.contains(group, u); });
}

void ForEachPureProfile(const Game& game, const Limits& limits,
                        const std::function<void(const PureProfile&)>& visit) {
  CheckBudget(game.num_pure_profiles(), limits, "pure profile enumeration");
  const int n = game.num_users();
  PureProfile current(n, 0);
  while (true) {
    visit(current);
    int pos = n - 1;
    while (pos >= 0 && ++current[pos] == game.space(pos).size()) {
      current[pos] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

}  // namespace eqbound
