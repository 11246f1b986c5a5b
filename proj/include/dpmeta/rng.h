// Copyright 2026 The dpmeta Authors
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

#ifndef DPMETA_RNG_H_
#define DPMETA_RNG_H_

#include <cstdint>
#include <random>

namespace dpmeta {

using Rng = std::mt19937_64;

// Purpose tags for derived random streams. Values are part of the seed
// derivation and must stay stable for results to reproduce.
enum class StreamTag : std::uint64_t {
  kTrainTask = 1,
  kTrainLosses = 2,
  kTrainNoise = 3,
  kEvalTask = 4,
  kEvalLosses = 5,
  kEvalMonteCarlo = 6,
  kTrainMonteCarlo = 7,
  kSweep = 8,
};

// splitmix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the substream (master_seed, index, tag). Substreams are independent
// of evaluation order, so parallel and sequential runs draw identical values.
constexpr std::uint64_t DeriveSeed(std::uint64_t master_seed,
                                   std::uint64_t index, StreamTag tag) {
  return Mix64(Mix64(Mix64(master_seed) ^ static_cast<std::uint64_t>(tag)) ^
               index);
}

inline Rng MakeStream(std::uint64_t master_seed, std::uint64_t index,
                      StreamTag tag) {
  return Rng(DeriveSeed(master_seed, index, tag));
}

}  // namespace dpmeta

#endif  // DPMETA_RNG_H_
