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

#ifndef EQBOUND_GAME_H_
#define EQBOUND_GAME_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eqbound/error.h"

namespace eqbound {

// Users are indexed 0..N-1.
using UserIndex = int;

// Action index per user for a complete pure profile.
using PureProfile = std::vector<int>;

inline constexpr int kMaxGroundSetSize = 64;

// A set of acts drawn from one user's ground set, stored as a bitmask over
// the ground set's positions.
class ActSet {
 public:
  constexpr ActSet() = default;
  constexpr explicit ActSet(std::uint64_t bits) : bits_(bits) {}

  static ActSet Of(std::initializer_list<int> acts);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int act) const { return (bits_ >> act) & 1u; }
  constexpr bool subset_of(ActSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  constexpr ActSet operator|(ActSet other) const {
    return ActSet(bits_ | other.bits_);
  }
  constexpr ActSet operator&(ActSet other) const {
    return ActSet(bits_ & other.bits_);
  }

  // Positions in increasing order.
  std::vector<int> acts() const;

  constexpr auto operator<=>(const ActSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

// An ordered assignment of act-sets to users, canonically sorted by user.
// Entries need not be feasible actions: union-composed profiles routinely
// carry act-sets outside a user's action space.
class ActionProfile {
 public:
  struct Entry {
    UserIndex user;
    ActSet acts;
    auto operator<=>(const Entry&) const = default;
  };

  ActionProfile() = default;
  // Sorts by user; throws kOverlappingUsers on a repeated user.
  explicit ActionProfile(std::vector<Entry> entries);

  static ActionProfile Single(UserIndex user, ActSet acts) {
    return ActionProfile({Entry{user, acts}});
  }

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool contains(UserIndex user) const { return find(user) != nullptr; }
  const ActSet* find(UserIndex user) const;

  // X_{-i}.
  ActionProfile without(UserIndex user) const;
  // (X_{-i}, x_i'); inserts the user when absent.
  ActionProfile with(UserIndex user, ActSet acts) const;
  // Keeps only users for which `keep` returns true.
  ActionProfile filter(const std::function<bool(UserIndex)>& keep) const;

  bool operator==(const ActionProfile&) const = default;

 private:
  std::vector<Entry> entries_;
};

// Y ⊕ Z; throws kOverlappingUsers when the user sets intersect.
ActionProfile Concat(const ActionProfile& y, const ActionProfile& z);

// True iff every (user, act-set) entry of `y` also appears in `x`.
bool IsSubsequence(const ActionProfile& y, const ActionProfile& x);

// A distribution over one user's feasible actions.
class MixedStrategy {
 public:
  // Throws kDegenerateDistribution unless probs lie on the simplex
  // (entries >= 0, sum within 1e-12 of one).
  MixedStrategy(UserIndex user, std::vector<double> probs);

  static MixedStrategy Pure(UserIndex user, int num_actions, int action);

  UserIndex user() const { return user_; }
  std::span<const double> probs() const { return probs_; }
  int num_actions() const { return static_cast<int>(probs_.size()); }
  // Index of the action carrying all the mass, if any.
  std::optional<int> pure_action() const;

  bool operator==(const MixedStrategy&) const = default;

 private:
  UserIndex user_;
  std::vector<double> probs_;
};

class StrategyProfile {
 public:
  StrategyProfile() = default;
  // Sorts by user; throws kOverlappingUsers on a repeated user.
  explicit StrategyProfile(std::vector<MixedStrategy> entries);

  std::span<const MixedStrategy> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const MixedStrategy* find(UserIndex user) const;
  bool contains(UserIndex user) const { return find(user) != nullptr; }

  StrategyProfile without(UserIndex user) const;
  StrategyProfile with(MixedStrategy strategy) const;
  StrategyProfile filter(const std::function<bool(UserIndex)>& keep) const;

  bool is_pure() const;

  bool operator==(const StrategyProfile&) const = default;

 private:
  std::vector<MixedStrategy> entries_;
};

StrategyProfile Concat(const StrategyProfile& t, const StrategyProfile& w);

// Social ties: N_i^s with weights w_im in [0, 1].
class SocialGraph {
 public:
  struct Tie {
    UserIndex to;
    double weight;
  };

  // Throws kInvalidArgument on self-ties, duplicate ties, or weights outside
  // [0, 1].
  explicit SocialGraph(std::vector<std::vector<Tie>> ties);
  static SocialGraph Empty(int num_users);

  int num_users() const { return static_cast<int>(ties_.size()); }
  std::span<const Tie> neighbors(UserIndex user) const { return ties_[user]; }
  double weight(UserIndex from, UserIndex to) const;
  bool is_symmetric(double tol = 0.0) const;

 private:
  std::vector<std::vector<Tie>> ties_;
};

// Partition of users into l contiguous blocks; block g holds users
// first(g) .. first(g) + size(g) - 1.
class Grouping {
 public:
  static Grouping FromSizes(std::vector<int> sizes);
  // Blocks must be contiguous, increasing, and cover 0..N-1.
  static Grouping FromBlocks(const std::vector<std::vector<UserIndex>>& blocks);
  static Grouping Singletons(int num_users);
  static Grouping Whole(int num_users);

  int num_groups() const { return static_cast<int>(sizes_.size()); }
  int num_users() const { return num_users_; }
  int size(int group) const { return sizes_[group]; }
  int first(int group) const { return firsts_[group]; }
  int group_of(UserIndex user) const;
  bool contains(int group, UserIndex user) const {
    return user >= firsts_[group] && user < firsts_[group] + sizes_[group];
  }
  std::vector<UserIndex> users(int group) const;
  // k* = min_i k_i.
  int min_size() const;
  std::span<const int> sizes() const { return sizes_; }

  bool operator==(const Grouping&) const = default;

 private:
  explicit Grouping(std::vector<int> sizes);

  std::vector<int> sizes_;
  std::vector<int> firsts_;
  int num_users_ = 0;
};

struct ActionSpace {
  std::vector<ActSet> feasible;

  int size() const { return static_cast<int>(feasible.size()); }
  std::optional<int> index_of(ActSet acts) const;
};

using SocialUtility = std::function<double(const ActionProfile&)>;
using PrivateUtility = std::function<double(UserIndex, const ActionProfile&)>;

// A utility system: ground sets, feasible action spaces, the social utility
// γ and the private utilities α_i. Oracles must be total over profiles whose
// act-sets are arbitrary subsets of the ground sets and must be safe to call
// concurrently.
class Game {
 public:
  Game(std::vector<std::vector<std::string>> ground_sets,
       std::vector<ActionSpace> spaces, SocialUtility social,
       PrivateUtility private_utility, bool order_invariant = true);

  Game with_social_graph(SocialGraph graph) const;
  Game with_grouping(Grouping grouping) const;

  int num_users() const { return static_cast<int>(spaces_->size()); }
  const std::vector<std::string>& ground_set(UserIndex user) const {
    return (*ground_sets_)[user];
  }
  const ActionSpace& space(UserIndex user) const { return (*spaces_)[user]; }
  bool order_invariant() const { return order_invariant_; }
  const std::optional<SocialGraph>& social_graph() const {
    return social_graph_;
  }
  const std::optional<Grouping>& grouping() const { return grouping_; }

  // γ(X).
  double social(const ActionProfile& profile) const {
    return (*social_)(profile);
  }
  // α_i(X).
  double private_utility(UserIndex user, const ActionProfile& profile) const {
    return (*private_)(user, profile);
  }

  // Complete pure profile from per-user action indices.
  ActionProfile profile(std::span<const int> action_indices) const;
  // Inverse of profile(); nullopt if any entry is not a feasible action.
  std::optional<PureProfile> indices_of(const ActionProfile& profile) const;
  bool is_complete(const ActionProfile& profile) const;

  // Π n_i, saturating.
  std::uint64_t num_pure_profiles() const;

  // True when every user's feasible set, read as sets of act names, equals
  // user 0's.
  bool identical_action_spaces() const;

  // Human-readable act-set such as "{a,b}".
  std::string describe(UserIndex user, ActSet acts) const;

 private:
  std::shared_ptr<const std::vector<std::vector<std::string>>> ground_sets_;
  std::shared_ptr<const std::vector<ActionSpace>> spaces_;
  std::shared_ptr<const SocialUtility> social_;
  std::shared_ptr<const PrivateUtility> private_;
  bool order_invariant_ = true;
  std::optional<SocialGraph> social_graph_;
  std::optional<Grouping> grouping_;
};

// γ_Z(Y) = γ(Y ⊕ Z) − γ(Y).
double Marginal(const Game& game, const ActionProfile& z,
                const ActionProfile& y);

// η_i = α_i + Σ_{m∈N_i^s} w_im α_m on a complete profile.
double SocialGroupUtility(const Game& game, UserIndex user,
                          const ActionProfile& profile);

// Σ of α_j over the users of block `group`, on a complete profile.
double BlockUtility(const Game& game, const Grouping& grouping, int group,
                    const ActionProfile& profile);
// Same, using the game's own grouping (kMissingGrouping when absent).
double BlockUtility(const Game& game, int group, const ActionProfile& profile);

// Block sub-profile x^g and its complement X^{-g}.
ActionProfile BlockPart(const ActionProfile& profile, const Grouping& grouping,
                        int group);
ActionProfile WithoutBlock(const ActionProfile& profile,
                           const Grouping& grouping, int group);

// Visits every complete pure profile in lexicographic order (user 0 most
// significant). Throws kResourceLimit when Π n_i exceeds the budget.
void ForEachPureProfile(const Game& game, const Limits& limits,
                        const std::function<void(const PureProfile&)>& visit);

}  // namespace eqbound

#endif  // EQBOUND_GAME_H_
