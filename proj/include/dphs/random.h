//
// Copyright 2026 The dphs Authors
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
//

#ifndef DPHS_RANDOM_H_
#define DPHS_RANDOM_H_

#include <cstdint>
#include <random>

namespace dphs {

// All randomness in the library flows through an explicitly passed engine.
using Rng = std::mt19937_64;

// Uniform double in the open interval (0, 1), built from the top 53 bits of
// one engine output so that results do not depend on the standard library's
// distribution implementations.
inline double UniformOpen01(Rng& rng) {
  const uint64_t bits = rng() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

// SplitMix64 finalizer. Used to derive independent per-trial seeds from a
// master seed and a trial index.
inline uint64_t MixSeed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t DeriveSeed(uint64_t master, uint64_t index) {
  return MixSeed(MixSeed(master) ^ MixSeed(index + 0x632be59bd9b4e019ULL));
}

}  // namespace dphs

#endif  // DPHS_RANDOM_H_
