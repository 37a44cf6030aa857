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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <vector>

namespace perturbshield {
namespace {

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngTest, DifferentSeedsDiffer) {
  Rng a(1), b(2);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += a.NextU64() == b.NextU64();
  EXPECT_EQ(same, 0);
}

TEST(RngTest, ForkIgnoresDrawState) {
  Rng a(9);
  const uint64_t before = a.Fork("x").NextU64();
  for (int i = 0; i < 10; ++i) a.NextU64();
  EXPECT_EQ(a.Fork("x").NextU64(), before);
  EXPECT_NE(a.Fork("y").NextU64(), before);
  EXPECT_NE(a.Fork(uint64_t{0}).NextU64(), a.Fork(uint64_t{1}).NextU64());
}

TEST(RngTest, UniformIndexInRange) {
  Rng rng(3);
  for (size_t n : {1u, 2u, 3u, 7u, 1000u}) {
    for (int i = 0; i < 1000; ++i) ASSERT_LT(rng.UniformIndex(n), n);
  }
}

TEST(RngTest, UniformIndexChiSquare) {
  // 10 cells, 10^5 draws; the 99.9% quantile of chi-square(9) is 27.88.
  Rng rng(5);
  const size_t cells = 10, draws = 100000;
  std::vector<double> counts(cells, 0.0);
  for (size_t i = 0; i < draws; ++i) counts[rng.UniformIndex(cells)] += 1;
  const double expected = static_cast<double>(draws) / cells;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 27.88);
}

TEST(RngTest, UniformDoubleInUnitInterval) {
  Rng rng(8);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.UniformDouble();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Mean of U(0,1) has sd sqrt(1/12 / 1e5) ~ 0.00091.
  EXPECT_NEAR(sum / 100000, 0.5, 4 * 0.00091);
}

TEST(RngTest, SampleWithoutReplacementDistinct) {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto s = rng.SampleWithoutReplacement(10, 5);
    ASSERT_EQ(s.size(), 5u);
    EXPECT_EQ(std::set<size_t>(s.begin(), s.end()).size(), 5u);
    for (size_t x : s) EXPECT_LT(x, 10u);
  }
  EXPECT_EQ(rng.SampleWithoutReplacement(3, 5).size(), 3u);
  EXPECT_TRUE(rng.SampleWithoutReplacement(0, 2).empty());
}

TEST(RngTest, ShuffleIsPermutation) {
  Rng rng(4);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  auto w = v;
  rng.Shuffle(w);
  EXPECT_NE(v, w);
  std::sort(w.begin(), w.end());
  EXPECT_EQ(v, w);
}

TEST(RngTest, MixSeedSpreadsNearbySeeds) {
  EXPECT_NE(MixSeed(0), MixSeed(1));
  EXPECT_NE(MixSeed(1), 1u);
}

}  // namespace
}  // namespace perturbshield
