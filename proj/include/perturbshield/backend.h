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

#ifndef PERTURBSHIELD_BACKEND_H_
#define PERTURBSHIELD_BACKEND_H_

#include <memory>
#include <string>
#include <string_view>

#include "perturbshield/classifier.h"
#include "perturbshield/remote_classifier.h"

namespace perturbshield {

enum class BackendKind { kBuiltin, kRemote, kStub };

struct BackendSelector {
  BackendKind kind = BackendKind::kStub;
  // Model path, base URL, or stub label.
  std::string argument;
};

// "builtin:<model-path>", "remote:<url>" or "stub:<positive|negative>".
// Throws std::invalid_argument for anything else.
BackendSelector ParseBackendSelector(std::string_view text);

// Loads or connects the selected backend. `remote` supplies the transport
// knobs; its url is replaced by the selector's.
std::unique_ptr<Classifier> MakeBackend(const BackendSelector& selector,
                                        RemoteClassifierOptions remote = {});

}  // namespace perturbshield

#endif  // PERTURBSHIELD_BACKEND_H_
