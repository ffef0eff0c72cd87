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

#ifndef EQBOUND_PIPELINE_H_
#define EQBOUND_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqbound/bounds.h"
#include "eqbound/coverage.h"
#include "eqbound/curvature.h"
#include "eqbound/equilibria.h"
#include "eqbound/scenario.h"
#include "eqbound/spectrum.h"

namespace eqbound {

// Process exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitMissingStructure = 3,
  kExitViolation = 4,
  kExitResourceLimit = 5,
};

int ExitCodeFor(ErrorCode code);

// Everything computed for one decider kind of one scenario.
struct FlavorAnalysis {
  EquilibriumKind kind = EquilibriumKind::kNash;
  Optimum optimum;
  Hypotheses hypotheses;
  // Absent when γ decreases somewhere (curvature is then undefined).
  std::optional<CurvatureReport> curvature;
  std::vector<PureProfile> equilibria;
  std::vector<double> equilibrium_values;
  std::vector<BoundReport> reports;
};

struct Analysis {
  std::vector<FlavorAnalysis> flavors;

  // Reports whose hypotheses verified and whose margin is below -tol.
  int violations(double tol) const;
};

// Solves every applicable kind (Nash always, social-aware with ties, group
// with groups), then checks each theorem and both lemmas at every pure
// equilibrium found.
Analysis AnalyzeScenario(const Scenario& scenario, const Limits& limits = {});

nlohmann::json AnalysisToJson(const Scenario& scenario,
                              const Analysis& analysis);

struct CheckOptions {
  std::string path;
  bool json = false;
};
int RunCheck(const CheckOptions& options, std::ostream& out,
             std::ostream& err);

struct SolveOptions {
  std::string path;
  EquilibriumKind kind = EquilibriumKind::kNash;
  bool dynamics = false;
  std::optional<PureProfile> start;
  int max_rounds = 100;
  bool shuffled = false;
  std::uint64_t seed = 0;
};
int RunSolve(const SolveOptions& options, std::ostream& out,
             std::ostream& err);

struct BoundsOptions {
  std::string path;
  bool timing = true;
};
int RunBounds(const BoundsOptions& options, std::ostream& out,
              std::ostream& err);

enum class Family { kSpectrum, kCoverage };

struct GenOptions {
  Family family = Family::kSpectrum;
  std::uint64_t seed = 0;
  SpectrumGenParams spectrum;
  CoverageGenParams coverage;
  // Written to `out` when empty.
  std::string out_path;
};

Scenario GenerateScenario(const GenOptions& options);

// Writes the scenario and prints its digest.
int RunGen(const GenOptions& options, std::ostream& out, std::ostream& err);

struct SweepOptions {
  GenOptions gen;
  std::uint64_t first_seed = 0;
  std::uint64_t last_seed = 0;
  bool empty_range = false;
  // Partitions as block-size lists; empty means one row per seed with the
  // generator's own partition.
  std::vector<std::vector<int>> partitions;
};

// Fixed CSV header of RunSweep.
std::string SweepHeader();
int RunSweep(const SweepOptions& options, std::ostream& out,
             std::ostream& err);

// "3..7" (inclusive); "5..4" is an empty range. Throws kParseError.
void ParseSeedRange(const std::string& text, SweepOptions& options);
// "1,1,2;2,2" -> {{1,1,2},{2,2}}. Throws kParseError.
std::vector<std::vector<int>> ParsePartitions(const std::string& text);
// "0,1,2" -> {0,1,2}. Throws kParseError.
std::vector<int> ParseIntList(const std::string& text);

}  // namespace eqbound

#endif  // EQBOUND_PIPELINE_H_
