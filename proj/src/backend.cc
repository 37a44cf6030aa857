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

#include "perturbshield/backend.h"

#include <stdexcept>

#include "perturbshield/errors.h"
#include "perturbshield/naive_bayes.h"

namespace perturbshield {

BackendSelector ParseBackendSelector(std::string_view text) {
  const size_t colon = text.find(':');
  if (colon == std::string_view::npos || colon + 1 == text.size()) {
    throw std::invalid_argument(
        "backend must be builtin:<model>, remote:<url> or stub:<label>, got '" +
        std::string(text) + "'");
  }
  const std::string_view kind = text.substr(0, colon);
  BackendSelector out;
  out.argument = std::string(text.substr(colon + 1));
  if (kind == "builtin") {
    out.kind = BackendKind::kBuiltin;
  } else if (kind == "remote") {
    out.kind = BackendKind::kRemote;
  } else if (kind == "stub") {
    out.kind = BackendKind::kStub;
    try {
      ParseLabel(out.argument);
    } catch (const DataError&) {
      throw std::invalid_argument("stub label must be positive or negative");
    }
  } else {
    throw std::invalid_argument("unknown backend kind '" + std::string(kind) +
                                "'");
  }
  return out;
}

std::unique_ptr<Classifier> MakeBackend(const BackendSelector& selector,
                                        RemoteClassifierOptions remote) {
  switch (selector.kind) {
    case BackendKind::kBuiltin:
      return std::make_unique<NaiveBayesClassifier>(
          NaiveBayesModel::LoadFile(selector.argument));
    case BackendKind::kRemote:
      remote.url = selector.argument;
      return std::make_unique<RemoteClassifier>(std::move(remote));
    case BackendKind::kStub:
      return std::make_unique<CountingStub>(ParseLabel(selector.argument));
  }
  throw std::invalid_argument("unknown backend");
}

}  // namespace perturbshield
