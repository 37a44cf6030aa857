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

#include "perturbshield/classifier.h"

#include <algorithm>
#include <stdexcept>

#include "perturbshield/errors.h"
#include "perturbshield/parallel.h"

namespace perturbshield {

Verdict Classifier::Classify(const std::string& text) const {
  std::vector<Verdict> out = ClassifyBatch(std::span<const std::string>(&text, 1));
  if (out.size() != 1) {
    throw ProtocolError("classifier returned " + std::to_string(out.size()) +
                        " verdicts for 1 text");
  }
  return out.front();
}

std::vector<Verdict> ClassifyFanOut(const Classifier& classifier,
                                    std::span<const std::string> texts,
                                    size_t jobs, size_t batch_size) {
  if (batch_size == 0) throw std::invalid_argument("batch_size must be >= 1");
  const size_t chunks = (texts.size() + batch_size - 1) / batch_size;
  std::vector<Verdict> out(texts.size());
  const size_t workers = classifier.ConcurrentSafe() ? jobs : 1;
  ParallelFor(chunks, workers, [&](size_t c) {
    const size_t begin = c * batch_size;
    const size_t len = std::min(batch_size, texts.size() - begin);
    std::vector<Verdict> part = classifier.ClassifyBatch(texts.subspan(begin, len));
    if (part.size() != len) {
      throw ProtocolError("classifier returned " + std::to_string(part.size()) +
                          " verdicts for " + std::to_string(len) + " texts");
    }
    std::copy(part.begin(), part.end(),
              out.begin() + static_cast<ptrdiff_t>(begin));
  });
  return out;
}

std::vector<Verdict> CountingStub::ClassifyBatch(
    std::span<const std::string> texts) const {
  calls_.fetch_add(texts.size());
  return std::vector<Verdict>(texts.size(), verdict_);
}

std::vector<Verdict> FunctionClassifier::ClassifyBatch(
    std::span<const std::string> texts) const {
  calls_.fetch_add(texts.size());
  std::vector<Verdict> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(fn_(t));
  return out;
}

}  // namespace perturbshield
