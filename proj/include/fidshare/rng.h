// Copyright 2026 The fidshare Authors
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

#ifndef FIDSHARE_RNG_H_
#define FIDSHARE_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fidshare {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr uint64_t MixBits(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based substream derivation: the seed depends only on the master
// seed and the ordered tag list, never on how many other streams exist.
constexpr uint64_t DeriveSeed(uint64_t master, std::initializer_list<uint64_t> tags) {
  uint64_t h = MixBits(master);
  for (uint64_t tag : tags) h = MixBits(h ^ MixBits(tag + 0x632be59bd9b4e019ULL));
  return h;
}

// Stream purposes, used as the last DeriveSeed tag.
enum class Stream : uint64_t {
  kTrajectory = 1,
  kSensing = 2,
  kMechanism = 3,
};

inline Rng MakeRng(uint64_t master, std::initializer_list<uint64_t> tags) {
  return Rng(DeriveSeed(master, tags));
}

}  // namespace fidshare

#endif  // FIDSHARE_RNG_H_
