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

// Touch-probability model for attacks and defenses on a review of N
// sentences with mean sentence length m (W = N * m words):
//
//   attack:  a / W
//   RPD:     N * l * C(m, k)        (a selection count; can exceed 1)
//   IRD:     k / (N * m)
//
// plus a Monte-Carlo estimate of the expected number of IRD draws that land
// on one fixed word, whose exact value is k / (N * m).

#ifndef PERTURBSHIELD_ANALYSIS_H_
#define PERTURBSHIELD_ANALYSIS_H_

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "perturbshield/rng.h"
#include "perturbshield/text.h"

namespace perturbshield {

using BigInt = boost::multiprecision::cpp_int;

// Exact non-negative fraction in lowest terms.
class Rational {
 public:
  Rational(BigInt num, BigInt den);
  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  double ToDouble() const;
  std::string ToString() const;  // "p/q" or "p"
  bool operator==(const Rational&) const = default;
  // Exact comparison.
  bool operator<(const Rational& other) const;
  bool operator>(const Rational& other) const { return other < *this; }

 private:
  BigInt num_;
  BigInt den_;
};

struct ProbInputs {
  double sentences = 1;    // N
  double mean_length = 1;  // m
  double attack = 0;       // a
  double l = 1;
  double k = 1;

  double words() const { return sentences * mean_length; }  // W
};

// Inputs taken from a segmented review: N, mean tokens per sentence.
ProbInputs InputsFromReview(const Review& review, double attack, double l,
                            double k);

// a / W. Throws InvalidBudgetError when a > W, InvalidParamsError for
// W < 1 or a < 0.
double PAttack(const ProbInputs& in);
Rational PAttackExact(uint64_t attack, uint64_t words);

// N * l * m! / (k! (m - k)!). m may be fractional (generalized binomial via
// the falling factorial); k must be a non-negative integer <= m. Throws
// InvalidParamsError otherwise.
double PRpd(const ProbInputs& in);
BigInt PRpdExact(uint64_t sentences, uint64_t l, uint64_t mean_length,
                 uint64_t k);

// The rearranged form N^2 m^2 l (m-1)(m-2)...(m-k+1) / k!, reported next to
// the attack count a for comparison.
double PRpdRearranged(const ProbInputs& in);

// k / (N * m). Requires N, m, k >= 1 (InvalidParamsError).
double PIrd(const ProbInputs& in);
Rational PIrdExact(uint64_t k, uint64_t sentences, uint64_t mean_length);

// k > a implies PIrd > PAttack.
bool IrdBeatsAttack(const ProbInputs& in);

struct McEstimate {
  double mean = 0.0;
  // Standard error of the mean: sqrt(k p (1 - p) / trials), p = 1 / (N m).
  double standard_error = 0.0;
  double exact = 0.0;  // k / (N m)
};

// Simulates `trials` rounds of k uniform (sentence, token) draws on an
// N x m grid and averages the number of draws hitting cell (0, 0). Trials
// are split into fixed shards, each with its own forked stream, so the
// estimate is identical for any `jobs`. Requires trials >= 1.
McEstimate McHitEstimate(uint64_t sentences, uint64_t mean_length, uint64_t k,
                         uint64_t trials, const Rng& rng, size_t jobs = 1);

// Deterministic sweep that visits cells in order, k draws; with
// k == N * m every cell is hit exactly once, so the result is 1.
double ExhaustiveHitCount(uint64_t sentences, uint64_t mean_length,
                          uint64_t k);

}  // namespace perturbshield

#endif  // PERTURBSHIELD_ANALYSIS_H_
