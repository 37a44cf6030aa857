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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "perturbshield/errors.h"
#include "perturbshield/parallel.h"

namespace perturbshield {
namespace {

constexpr uint64_t kMcShards = 64;

bool IsWhole(double x) { return std::floor(x) == x; }

void RequireAtLeastOne(double v, const char* name) {
  if (!(v >= 1.0)) {
    throw InvalidParamsError(std::string(name) + " must be >= 1");
  }
}

BigInt Binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r holds C(n - k + i, i) after this step
  }
  return r;
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (num < 0 || den < 0) throw std::invalid_argument("negative fraction");
  const BigInt g = boost::multiprecision::gcd(num, den);
  num_ = g == 0 ? num : num / g;
  den_ = g == 0 ? den : den / g;
  if (num_ == 0) den_ = 1;
}

double Rational::ToDouble() const {
  return num_.convert_to<double>() / den_.convert_to<double>();
}

std::string Rational::ToString() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

bool Rational::operator<(const Rational& other) const {
  return num_ * other.den_ < other.num_ * den_;
}

ProbInputs InputsFromReview(const Review& review, double attack, double l,
                            double k) {
  ProbInputs in;
  in.sentences = static_cast<double>(review.sentences.size());
  in.mean_length = review.MeanSentenceLength();
  in.attack = attack;
  in.l = l;
  in.k = k;
  return in;
}

double PAttack(const ProbInputs& in) {
  const double w = in.words();
  if (!(w >= 1.0)) throw InvalidParamsError("word count W must be >= 1");
  if (in.attack < 0) throw InvalidParamsError("attack count a must be >= 0");
  if (in.attack > w) {
    throw InvalidBudgetError("attack count a exceeds word count W");
  }
  return in.attack / w;
}

Rational PAttackExact(uint64_t attack, uint64_t words) {
  if (words < 1) throw InvalidParamsError("word count W must be >= 1");
  if (attack > words) {
    throw InvalidBudgetError("attack count a exceeds word count W");
  }
  return Rational(attack, words);
}

double PRpd(const ProbInputs& in) {
  if (!IsWhole(in.k) || in.k < 0) {
    throw InvalidParamsError("k must be a non-negative integer");
  }
  if (in.k > in.mean_length) throw InvalidParamsError("k must not exceed m");
  RequireAtLeastOne(in.sentences, "N");
  RequireAtLeastOne(in.l, "l");
  if (IsWhole(in.mean_length) && IsWhole(in.sentences) && IsWhole(in.l)) {
    return PRpdExact(static_cast<uint64_t>(in.sentences),
                     static_cast<uint64_t>(in.l),
                     static_cast<uint64_t>(in.mean_length),
                     static_cast<uint64_t>(in.k))
        .convert_to<double>();
  }
  double c = 1.0;
  for (double i = 0; i < in.k; i += 1) c *= (in.mean_length - i) / (i + 1);
  return in.sentences * in.l * c;
}

BigInt PRpdExact(uint64_t sentences, uint64_t l, uint64_t mean_length,
                 uint64_t k) {
  if (k > mean_length) throw InvalidParamsError("k must not exceed m");
  return BigInt(sentences) * l * Binomial(mean_length, k);
}

double PRpdRearranged(const ProbInputs& in) {
  if (!IsWhole(in.k) || in.k < 0) {
    throw InvalidParamsError("k must be a non-negative integer");
  }
  if (in.k > in.mean_length) throw InvalidParamsError("k must not exceed m");
  double v = in.sentences * in.sentences * in.mean_length * in.mean_length *
             in.l;
  for (double i = 1; i < in.k; i += 1) v *= in.mean_length - i;
  for (double i = 2; i <= in.k; i += 1) v /= i;
  return v;
}

double PIrd(const ProbInputs& in) {
  RequireAtLeastOne(in.sentences, "N");
  RequireAtLeastOne(in.mean_length, "m");
  RequireAtLeastOne(in.k, "k");
  return in.k / in.words();
}

Rational PIrdExact(uint64_t k, uint64_t sentences, uint64_t mean_length) {
  if (k < 1 || sentences < 1 || mean_length < 1) {
    throw InvalidParamsError("N, m and k must be >= 1");
  }
  return Rational(k, BigInt(sentences) * mean_length);
}

bool IrdBeatsAttack(const ProbInputs& in) { return PIrd(in) > PAttack(in); }

McEstimate McHitEstimate(uint64_t sentences, uint64_t mean_length, uint64_t k,
                         uint64_t trials, const Rng& rng, size_t jobs) {
  if (sentences < 1 || mean_length < 1) {
    throw InvalidParamsError("N and m must be >= 1");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const uint64_t shards = std::min(trials, kMcShards);
  std::vector<uint64_t> hits(shards, 0);
  ParallelFor(shards, jobs, [&](size_t s) {
    const uint64_t share = trials / shards + (s < trials % shards ? 1 : 0);
    Rng stream = rng.Fork(static_cast<uint64_t>(s));
    uint64_t h = 0;
    for (uint64_t t = 0; t < share; ++t) {
      for (uint64_t d = 0; d < k; ++d) {
        const size_t sentence = stream.UniformIndex(sentences);
        const size_t token = stream.UniformIndex(mean_length);
        if (sentence == 0 && token == 0) ++h;
      }
    }
    hits[s] = h;
  });
  uint64_t total = 0;
  for (uint64_t h : hits) total += h;

  const double cells = static_cast<double>(sentences) *
                       static_cast<double>(mean_length);
  const double p = 1.0 / cells;
  McEstimate est;
  est.mean = static_cast<double>(total) / static_cast<double>(trials);
  est.exact = static_cast<double>(k) / cells;
  est.standard_error = std::sqrt(static_cast<double>(k) * p * (1.0 - p) /
                                 static_cast<double>(trials));
  return est;
}

double ExhaustiveHitCount(uint64_t sentences, uint64_t mean_length,
                          uint64_t k) {
  const uint64_t cells = sentences * mean_length;
  if (cells == 0) throw InvalidParamsError("N and m must be >= 1");
  uint64_t hits = 0;
  for (uint64_t d = 0; d < k; ++d) {
    if (d % cells == 0) ++hits;
  }
  return static_cast<double>(hits);
}

}  // namespace perturbshield
