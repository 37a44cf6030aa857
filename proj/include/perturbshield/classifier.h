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

#ifndef PERTURBSHIELD_CLASSIFIER_H_
#define PERTURBSHIELD_CLASSIFIER_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perturbshield/text.h"

namespace perturbshield {

struct Verdict {
  Label label = Label::kNegative;
  // Confidence of `label`, in [0, 1].
  double score = 0.0;

  bool operator==(const Verdict&) const = default;
};

// Score the verdict assigns to `label` (1 - score for the other label).
inline double ScoreFor(const Verdict& v, Label label) {
  return v.label == label ? v.score : 1.0 - v.score;
}

// A black-box binary sentiment classifier.
//
// ClassifyBatch returns exactly one verdict per input, in input order.
// Implementations that cannot serve concurrent calls return false from
// ConcurrentSafe(); callers then serialize.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::vector<Verdict> ClassifyBatch(
      std::span<const std::string> texts) const = 0;

  virtual bool ConcurrentSafe() const { return true; }

  Verdict Classify(const std::string& text) const;
};

// Splits `texts` into chunks of `batch_size` and classifies them on up to
// `jobs` threads (1 when the classifier is not concurrency-safe). Output
// order matches input order.
std::vector<Verdict> ClassifyFanOut(const Classifier& classifier,
                                    std::span<const std::string> texts,
                                    size_t jobs, size_t batch_size = 64);

// Returns a fixed verdict and counts every text it is asked to classify.
class CountingStub : public Classifier {
 public:
  explicit CountingStub(Label label, double score = 1.0)
      : verdict_{label, score} {}

  std::vector<Verdict> ClassifyBatch(
      std::span<const std::string> texts) const override;

  uint64_t calls() const { return calls_.load(); }
  void Reset() { calls_.store(0); }

 private:
  Verdict verdict_;
  mutable std::atomic<uint64_t> calls_{0};
};

// Adapts a per-text function; also counts calls. Handy in tests.
class FunctionClassifier : public Classifier {
 public:
  using Fn = std::function<Verdict(std::string_view)>;
  explicit FunctionClassifier(Fn fn) : fn_(std::move(fn)) {}

  std::vector<Verdict> ClassifyBatch(
      std::span<const std::string> texts) const override;

  uint64_t calls() const { return calls_.load(); }

 private:
  Fn fn_;
  mutable std::atomic<uint64_t> calls_{0};
};

}  // namespace perturbshield

#endif  // PERTURBSHIELD_CLASSIFIER_H_
