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

#include "perturbshield/stats.h"

#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

namespace perturbshield {

double Mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double SampleStdDev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = Mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

TTestResult OneSampleTTest(std::span<const double> xs, double baseline) {
  TTestResult r;
  if (xs.size() < 2) return r;
  r.valid = true;
  r.degrees_of_freedom = static_cast<double>(xs.size() - 1);
  const double mean = Mean(xs);
  const double sd = SampleStdDev(xs);
  if (sd == 0.0) {
    if (mean == baseline) {
      r.t = 0.0;
      r.p_value = 1.0;
    } else {
      r.t = mean > baseline ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
    }
    return r;
  }
  r.t = (mean - baseline) / (sd / std::sqrt(static_cast<double>(xs.size())));
  const boost::math::students_t dist(r.degrees_of_freedom);
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t)));
  return r;
}

}  // namespace perturbshield
