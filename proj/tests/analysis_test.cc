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

#include "perturbshield/analysis.h"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "perturbshield/errors.h"
#include "perturbshield/rng.h"
#include "perturbshield/stats.h"

namespace perturbshield {
namespace {

ProbInputs Inputs(double n, double m, double a, double l, double k) {
  ProbInputs in;
  in.sentences = n;
  in.mean_length = m;
  in.attack = a;
  in.l = l;
  in.k = k;
  return in;
}

// Counts k-subsets of an m-set by enumerating bitmasks.
uint64_t SubsetCount(unsigned m, unsigned k) {
  uint64_t count = 0;
  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    count += static_cast<unsigned>(std::popcount(mask)) == k;
  }
  return count;
}

TEST(PAttackTest, Examples) {
  EXPECT_DOUBLE_EQ(PAttack(Inputs(10, 20, 5, 1, 1)), 0.025);
  EXPECT_EQ(PAttackExact(5, 200), Rational(1, 40));
  EXPECT_EQ(PAttackExact(5, 200).ToString(), "1/40");
  EXPECT_DOUBLE_EQ(PAttack(Inputs(10, 20, 0, 1, 1)), 0.0);
  EXPECT_DOUBLE_EQ(PAttack(Inputs(10, 20, 200, 1, 1)), 1.0);
  EXPECT_THROW(PAttack(Inputs(10, 20, 201, 1, 1)), InvalidBudgetError);
  EXPECT_THROW(PAttack(Inputs(0.5, 1, 0, 1, 1)), InvalidParamsError);
  EXPECT_THROW(PAttack(Inputs(1, 5, -1, 1, 1)), InvalidParamsError);
}

TEST(PRpdTest, MatchesSubsetEnumeration) {
  EXPECT_DOUBLE_EQ(PRpd(Inputs(1, 5, 0, 1, 2)), 10.0);
  for (unsigned m = 1; m <= 12; ++m) {
    for (unsigned k = 0; k <= m; ++k) {
      const double expected = 3.0 * 7.0 * static_cast<double>(SubsetCount(m, k));
      ASSERT_DOUBLE_EQ(PRpd(Inputs(3, m, 0, 7, k)), expected) << m << " " << k;
      ASSERT_EQ(PRpdExact(3, 7, m, k), BigInt(3 * 7 * SubsetCount(m, k)));
    }
  }
}

TEST(PRpdTest, BoundaryCases) {
  EXPECT_DOUBLE_EQ(PRpd(Inputs(10, 20, 0, 7, 20)), 70.0);
  EXPECT_DOUBLE_EQ(PRpd(Inputs(10, 20, 0, 7, 0)), 70.0);
  EXPECT_THROW(PRpd(Inputs(10, 20, 0, 7, 21)), InvalidParamsError);
  EXPECT_THROW(PRpd(Inputs(10, 20, 0, 7, 1.5)), InvalidParamsError);
  // Fractional m uses the falling factorial: C(4.5, 2) = 4.5 * 3.5 / 2.
  EXPECT_NEAR(PRpd(Inputs(2, 4.5, 0, 1, 2)), 2 * 4.5 * 3.5 / 2, 1e-12);
  // Large values stay exact in integer form.
  EXPECT_EQ(PRpdExact(1, 1, 100, 50),
            BigInt("100891344545564193334812497256"));
}

TEST(PRpdTest, RearrangedForm) {
  // N^2 m^2 l (m-1)...(m-k+1) / k! with N=2, m=5, l=3, k=3:
  // 4 * 25 * 3 * 4 * 3 / 6.
  EXPECT_DOUBLE_EQ(PRpdRearranged(Inputs(2, 5, 0, 3, 3)), 4 * 25 * 3 * 4 * 3 / 6.0);
}

TEST(PIrdTest, Examples) {
  EXPECT_DOUBLE_EQ(PIrd(Inputs(10, 20, 5, 1, 41)), 0.205);
  EXPECT_EQ(PIrdExact(41, 10, 20), Rational(41, 200));
  EXPECT_EQ(PIrdExact(41, 10, 20).ToString(), "41/200");
  EXPECT_EQ(PIrdExact(4, 2, 2).ToString(), "1");
  EXPECT_THROW(PIrd(Inputs(10, 20, 5, 1, 0)), InvalidParamsError);
  EXPECT_THROW(PIrdExact(0, 10, 20), InvalidParamsError);
  EXPECT_TRUE(IrdBeatsAttack(Inputs(10, 20, 5, 1, 41)));
  EXPECT_TRUE(IrdBeatsAttack(Inputs(10, 20, 0, 1, 1)));
}

TEST(PIrdTest, MoreReplicatesThanAttacksBeatsAttack) {
  Rng rng(17);
  for (int i = 0; i < 10000; ++i) {
    const uint64_t n = 1 + rng.UniformIndex(50);
    const uint64_t m = 1 + rng.UniformIndex(60);
    const uint64_t a = rng.UniformIndex(n * m + 1);
    const uint64_t k = a + 1 + rng.UniformIndex(100);
    ASSERT_GT(PIrdExact(k, n, m), PAttackExact(a, n * m));
    ASSERT_TRUE(IrdBeatsAttack(Inputs(n, m, a, 1, k)));
  }
}

TEST(PIrdTest, MonotoneInK) {
  for (uint64_t k = 1; k < 300; ++k) {
    ASSERT_LT(PIrdExact(k, 7, 13), PIrdExact(k + 1, 7, 13));
  }
}

TEST(RationalTest, LowestTermsAndOrder) {
  EXPECT_EQ(Rational(10, 4).ToString(), "5/2");
  EXPECT_TRUE(Rational(1, 3) < Rational(1, 2));
  EXPECT_DOUBLE_EQ(Rational(3, 8).ToDouble(), 0.375);
}

TEST(McHitTest, WithinThreeSigmaOfExact) {
  int inside = 0;
  for (uint64_t rep = 0; rep < 10; ++rep) {
    const McEstimate e = McHitEstimate(10, 20, 41, 10000, Rng(rep));
    EXPECT_DOUBLE_EQ(e.exact, 0.205);
    inside += std::abs(e.mean - e.exact) <= 3 * e.standard_error;
  }
  EXPECT_GE(inside, 9);
}

TEST(McHitTest, JobsDoNotChangeEstimate) {
  const Rng rng(3);
  EXPECT_EQ(McHitEstimate(4, 5, 9, 20000, rng, 1).mean,
            McHitEstimate(4, 5, 9, 20000, rng, 4).mean);
}

TEST(McHitTest, SingleCellAndExhaustive) {
  const McEstimate e = McHitEstimate(1, 1, 1, 1000, Rng(1));
  EXPECT_DOUBLE_EQ(e.mean, 1.0);
  EXPECT_DOUBLE_EQ(e.standard_error, 0.0);
  EXPECT_DOUBLE_EQ(ExhaustiveHitCount(10, 20, 200), 1.0);
  EXPECT_DOUBLE_EQ(ExhaustiveHitCount(1, 1, 1), 1.0);
  EXPECT_DOUBLE_EQ(ExhaustiveHitCount(3, 4, 24), 2.0);
}

TEST(StatsTest, MeanAndSampleStdDev) {
  const std::vector<double> xs = {1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(Mean(xs), 3.0);
  EXPECT_DOUBLE_EQ(SampleStdDev(xs), std::sqrt(2.5));
}

TEST(StatsTest, OneSampleTTestKnownValue) {
  // t = (3 - 2) / (sqrt(2.5) / sqrt(5)) = sqrt(2), 4 degrees of freedom.
  // For 4 d.o.f. the two-sided tail is 1 - sin(th) (1 + cos^2(th) / 2) with
  // th = atan(t / 2), which at t = sqrt(2) is 1 - 4 / (3 sqrt(3)).
  const std::vector<double> xs = {1, 2, 3, 4, 5};
  const TTestResult r = OneSampleTTest(xs, 2.0);
  EXPECT_TRUE(r.valid);
  EXPECT_NEAR(r.t, std::sqrt(2.0), 1e-12);
  EXPECT_DOUBLE_EQ(r.degrees_of_freedom, 4.0);
  EXPECT_NEAR(r.p_value, 1.0 - 4.0 / (3.0 * std::sqrt(3.0)), 1e-9);
}

TEST(StatsTest, DegenerateSamples) {
  const std::vector<double> same = {0.9, 0.9, 0.9};
  EXPECT_DOUBLE_EQ(OneSampleTTest(same, 0.9).p_value, 1.0);
  const TTestResult off = OneSampleTTest(same, 0.8);
  EXPECT_TRUE(std::isinf(off.t));
  EXPECT_DOUBLE_EQ(off.p_value, 0.0);
  const std::vector<double> one = {0.5};
  EXPECT_FALSE(OneSampleTTest(one, 0.5).valid);
}

}  // namespace
}  // namespace perturbshield
