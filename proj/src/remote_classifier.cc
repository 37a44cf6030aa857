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

#include "perturbshield/remote_classifier.h"

#include <stdexcept>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "perturbshield/errors.h"
#include "perturbshield/parallel.h"

namespace perturbshield {

// Caps concurrent requests across every caller of one client.
class RemoteClassifier::Slots {
 public:
  explicit Slots(size_t capacity) : free_(capacity) {}

  void Acquire() {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait(lock, [&] { return free_ > 0; });
    --free_;
  }
  void Release() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      ++free_;
    }
    cv_.notify_one();
  }

  class Guard {
   public:
    explicit Guard(Slots& slots) : slots_(slots) { slots_.Acquire(); }
    ~Guard() { slots_.Release(); }
    Guard(const Guard&) = delete;
    Guard& operator=(const Guard&) = delete;

   private:
    Slots& slots_;
  };

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  size_t free_;
};

std::string BuildClassifyRequest(std::span<const std::string> texts) {
  nlohmann::json body;
  body["texts"] = nlohmann::json::array();
  for (const auto& t : texts) body["texts"].push_back(t);
  return body.dump();
}

std::vector<Verdict> ParseClassifyResponse(const std::string& body,
                                           size_t expected,
                                           const std::string& context) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(context + ": response is not JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("results") ||
      !doc["results"].is_array()) {
    throw ProtocolError(context + ": response lacks a 'results' array");
  }
  const auto& results = doc["results"];
  if (results.size() != expected) {
    throw ProtocolError(context + ": expected " + std::to_string(expected) +
                        " results, got " + std::to_string(results.size()));
  }
  std::vector<Verdict> out;
  out.reserve(expected);
  for (size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const std::string where = context + ": result " + std::to_string(i);
    if (!r.is_object() || !r.contains("label") || !r["label"].is_string() ||
        !r.contains("score") || !r["score"].is_number()) {
      throw ProtocolError(where + " must have string 'label' and number 'score'");
    }
    Verdict v;
    const std::string label = r["label"].get<std::string>();
    if (label == "positive") {
      v.label = Label::kPositive;
    } else if (label == "negative") {
      v.label = Label::kNegative;
    } else {
      throw ProtocolError(where + " has unknown label '" + label + "'");
    }
    v.score = r["score"].get<double>();
    if (!(v.score >= 0.0 && v.score <= 1.0)) {
      throw ProtocolError(where + " score outside [0, 1]");
    }
    out.push_back(v);
  }
  return out;
}

RemoteClassifier::RemoteClassifier(RemoteClassifierOptions options)
    : options_(std::move(options)) {
  if (options_.batch_size == 0 || options_.max_in_flight == 0) {
    throw std::invalid_argument("batch_size and max_in_flight must be >= 1");
  }
  const std::string& url = options_.url;
  const size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http") {
    throw std::invalid_argument("remote backend URL must start with http://");
  }
  const size_t path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  std::string prefix =
      path_start == std::string::npos ? "" : url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  endpoint_ = prefix + "/v1/classify";
  slots_ = std::make_unique<Slots>(options_.max_in_flight);
}

RemoteClassifier::~RemoteClassifier() = default;

std::vector<Verdict> RemoteClassifier::PostChunk(
    std::span<const std::string> texts, size_t offset) const {
  const std::string body = BuildClassifyRequest(texts);
  const std::string context = "POST " + scheme_host_port_ + endpoint_ +
                              " [texts " + std::to_string(offset) + ".." +
                              std::to_string(offset + texts.size()) + ")";
  std::string last_error;
  auto backoff = options_.initial_backoff;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Result res;
    {
      Slots::Guard slot(*slots_);
      httplib::Client client(scheme_host_port_);
      const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
          options_.timeout);
      const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
          options_.timeout - secs);
      client.set_connection_timeout(secs.count(), usecs.count());
      client.set_read_timeout(secs.count(), usecs.count());
      client.set_write_timeout(secs.count(), usecs.count());
      res = client.Post(endpoint_, body, "application/json");
    }
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP status " + std::to_string(res->status);
      continue;
    }
    return ParseClassifyResponse(res->body, texts.size(), context);
  }
  throw BackendUnavailableError(context + ": giving up after " +
                                std::to_string(options_.max_retries + 1) +
                                " attempts, last error: " + last_error);
}

std::vector<Verdict> RemoteClassifier::ClassifyBatch(
    std::span<const std::string> texts) const {
  const size_t size = options_.batch_size;
  const size_t chunks = (texts.size() + size - 1) / size;
  std::vector<std::vector<Verdict>> parts(chunks);
  ParallelFor(chunks, options_.max_in_flight, [&](size_t c) {
    const size_t begin = c * size;
    const size_t len = std::min(size, texts.size() - begin);
    parts[c] = PostChunk(texts.subspan(begin, len), begin);
  });
  std::vector<Verdict> out;
  out.reserve(texts.size());
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace perturbshield
