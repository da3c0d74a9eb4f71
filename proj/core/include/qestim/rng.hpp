// Copyright 2026 The qestim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QESTIM_RNG_HPP
#define QESTIM_RNG_HPP

#include <cstdint>
#include <random>

namespace qestim {

/// Seeded stream of uniform doubles. The mapping from raw engine words to
/// doubles is spelled out here (53 high bits over [0,1)) instead of going
/// through std::uniform_real_distribution, whose output is
/// implementation-defined; identical seeds must reproduce identical
/// datasets on any platform.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : engine_(seed) {}

  /// In [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// In [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qestim

#endif  // QESTIM_RNG_HPP
