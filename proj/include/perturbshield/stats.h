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

#ifndef PERTURBSHIELD_STATS_H_
#define PERTURBSHIELD_STATS_H_

#include <span>

namespace perturbshield {

double Mean(std::span<const double> xs);

// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double SampleStdDev(std::span<const double> xs);

struct TTestResult {
  double t = 0.0;
  double degrees_of_freedom = 0.0;
  // Two-sided.
  double p_value = 1.0;
  // False when fewer than two samples were given.
  bool valid = false;
};

// One-sample t-test of `xs` against the constant `baseline`. With zero
// spread, t is 0 (p = 1) when the mean equals the baseline and +-inf
// (p = 0) otherwise.
TTestResult OneSampleTTest(std::span<const double> xs, double baseline);

}  // namespace perturbshield

#endif  // PERTURBSHIELD_STATS_H_
