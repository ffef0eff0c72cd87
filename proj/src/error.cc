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

#include "eqbound/error.h"

#include <cstdlib>
#include <limits>

namespace eqbound {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOverlappingUsers: return "OverlappingUsers";
    case ErrorCode::kIncompleteProfile: return "IncompleteProfile";
    case ErrorCode::kMissingSocialGraph: return "MissingSocialGraph";
    case ErrorCode::kMissingGrouping: return "MissingGrouping";
    case ErrorCode::kDegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::kIncompleteOmega: return "IncompleteOmega";
    case ErrorCode::kResourceLimit: return "ResourceLimit";
    case ErrorCode::kNondecreasingViolated: return "NondecreasingViolated";
    case ErrorCode::kHypothesisUnverified: return "HypothesisUnverified";
    case ErrorCode::kEmptyChannelSet: return "EmptyChannelSet";
    case ErrorCode::kAsymmetricTies: return "AsymmetricTies";
    case ErrorCode::kUnequalPowers: return "UnequalPowers";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kOracleDomain: return "OracleDomain";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

std::uint64_t Limits::DefaultMaxOutcomes() {
  constexpr std::uint64_t kDefault = 10'000'000;
  const char* env = std::getenv("EQBOUND_MAX_OUTCOMES");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || value == 0) return kDefault;
  return value;
}

void CheckBudget(std::uint64_t count, const Limits& limits,
                 std::string_view what) {
  if (count > limits.max_outcomes) {
    throw Error(ErrorCode::kResourceLimit,
                std::string(what) + " needs " + std::to_string(count) +
                    " outcomes, budget is " +
                    std::to_string(limits.max_outcomes));
  }
}

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

}  // namespace eqbound
