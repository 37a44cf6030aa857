// Copyright 2026 The PerturbShield Authors
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

#ifndef PERTURBSHIELD_RNG_H_
#define PERTURBSHIELD_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace perturbshield {

// Seeded pseudo-random stream with bit-exact output on every platform.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The standard distributions are not (their algorithms are
// implementation-defined), so all derived draws are computed here.
//
// Fork() derives an independent substream from the construction seed and a
// label only; it does not depend on how many values were drawn so far. That
// lets callers hand out per-review or per-shard streams in any order.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t seed() const { return seed_; }

  uint64_t NextU64() { return engine_(); }

  // Uniform integer in [0, n). Requires n > 0.
  size_t UniformIndex(size_t n);

  // Uniform double in [0, 1) with 53 random bits.
  double UniformDouble();

  // Returns min(k, n) distinct indices from [0, n), uniformly without
  // replacement, in draw order.
  std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k);

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[UniformIndex(i)]);
    }
  }

  Rng Fork(std::string_view label) const;
  Rng Fork(uint64_t index) const;

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to decorrelate derived seeds.
uint64_t MixSeed(uint64_t x);

}  // namespace perturbshield

#endif  // PERTURBSHIELD_RNG_H_
