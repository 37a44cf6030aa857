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

// HTTP client for an external sentiment service.
//
// Wire protocol:
//   POST <base>/v1/classify
//   request:  {"texts": ["...", ...]}
//   response: 200 {"results": [{"label": "positive"|"negative",
//                               "score": <number in [0,1]>}, ...]}
// Any non-200 status or transport failure is retried with exponential
// backoff; exhausting the retries raises BackendUnavailableError. A 200
// response that does not match the schema raises ProtocolError at once.

#ifndef PERTURBSHIELD_REMOTE_CLASSIFIER_H_
#define PERTURBSHIELD_REMOTE_CLASSIFIER_H_

#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "perturbshield/classifier.h"

namespace perturbshield {

struct RemoteClassifierOptions {
  // Base URL, e.g. "http://127.0.0.1:8080" or "http://host/prefix".
  std::string url;
  size_t batch_size = 32;
  size_t max_in_flight = 4;
  std::chrono::milliseconds timeout{10000};
  // Retries after the first attempt.
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{100};
};

// Parses a response body into verdicts; exposed for tests. Throws
// ProtocolError with `context` in the message.
std::vector<Verdict> ParseClassifyResponse(const std::string& body,
                                           size_t expected,
                                           const std::string& context);
std::string BuildClassifyRequest(std::span<const std::string> texts);

class RemoteClassifier : public Classifier {
 public:
  explicit RemoteClassifier(RemoteClassifierOptions options);
  ~RemoteClassifier() override;

  std::vector<Verdict> ClassifyBatch(
      std::span<const std::string> texts) const override;

  const RemoteClassifierOptions& options() const { return options_; }

 private:
  class Slots;

  std::vector<Verdict> PostChunk(std::span<const std::string> texts,
                                 size_t offset) const;

  RemoteClassifierOptions options_;
  std::string scheme_host_port_;
  std::string endpoint_;
  std::unique_ptr<Slots> slots_;
};

}  // namespace perturbshield

#endif  // PERTURBSHIELD_REMOTE_CLASSIFIER_H_
