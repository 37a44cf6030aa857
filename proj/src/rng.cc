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

#include "perturbshield/rng.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace perturbshield {
namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = kFnvOffset;
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

uint64_t MixSeed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(uint64_t seed) : seed_(seed), engine_(MixSeed(seed)) {}

size_t Rng::UniformIndex(size_t n) {
  if (n == 0) throw std::invalid_argument("UniformIndex: empty range");
  const uint64_t range = static_cast<uint64_t>(n);
  // Reject the low sliver that would bias the modulo.
  const uint64_t threshold = (0 - range) % range;
  for (;;) {
    const uint64_t x = engine_();
    if (x >= threshold) return static_cast<size_t>(x % range);
  }
}

double Rng::UniformDouble() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<size_t> Rng::SampleWithoutReplacement(size_t n, size_t k) {
  std::vector<size_t> pool(n);
  std::iota(pool.begin(), pool.end(), size_t{0});
  const size_t take = std::min(n, k);
  for (size_t i = 0; i < take; ++i) {
    std::swap(pool[i], pool[i + UniformIndex(n - i)]);
  }
  pool.resize(take);
  return pool;
}

Rng Rng::Fork(std::string_view label) const {
  return Rng(MixSeed(seed_ ^ MixSeed(Fnv1a(label))));
}

Rng Rng::Fork(uint64_t index) const {
  return Rng(MixSeed(seed_ ^ MixSeed(index ^ 0x5bd1e995ULL)));
}

}  // namespace perturbshield
