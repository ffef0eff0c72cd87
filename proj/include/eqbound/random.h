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

#ifndef EQBOUND_RANDOM_H_
#define EQBOUND_RANDOM_H_

#include <cstdint>
#include <random>

namespace eqbound {

// Draws from mt19937_64 with a fixed mapping to [0, 1), so generated
// instances are bit-identical across standard libraries (the std
// distributions are implementation-defined).
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  double Next() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Range(double lo, double hi) { return lo + (hi - lo) * Next(); }
  // Uniform in 0..n-1.
  int Index(int n) {
    const int k = static_cast<int>(Next() * n);
    return k < n ? k : n - 1;
  }
  bool Bernoulli(double p) { return Next() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace eqbound

#endif  // EQBOUND_RANDOM_H_
