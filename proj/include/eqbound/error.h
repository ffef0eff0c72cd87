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

#ifndef EQBOUND_ERROR_H_
#define EQBOUND_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eqbound {

enum class ErrorCode {
  kInvalidArgument,
  kOverlappingUsers,
  kIncompleteProfile,
  kMissingSocialGraph,
  kMissingGrouping,
  kDegenerateDistribution,
  kIncompleteOmega,
  kResourceLimit,
  kNondecreasingViolated,
  kHypothesisUnverified,
  kEmptyChannelSet,
  kAsymmetricTies,
  kUnequalPowers,
  kInvalidParams,
  kParseError,
  kOracleDomain,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported with this exception type; callers that
// need to branch (the CLI maps codes to exit statuses) inspect code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Enumeration budget shared by every exhaustive routine.
struct Limits {
  std::uint64_t max_outcomes = DefaultMaxOutcomes();

  // 10^7 unless EQBOUND_MAX_OUTCOMES overrides it.
  static std::uint64_t DefaultMaxOutcomes();
};

// Throws kResourceLimit when `count` exceeds the budget.
void CheckBudget(std::uint64_t count, const Limits& limits,
                 std::string_view what);

// Saturating product used when sizing enumerations.
std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b);

inline constexpr double kDefaultTolerance = 1e-9;

}  // namespace eqbound

#endif  // EQBOUND_ERROR_H_
