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

#ifndef PERTURBSHIELD_ERRORS_H_
#define PERTURBSHIELD_ERRORS_H_

#include <stdexcept>
#include <string>

namespace perturbshield {

// Root of all library errors. Argument-contract violations (k < 1, alpha <= 0
// and friends) are reported with std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problems with input data: corpora, lexicons, model files, parameters that
// come from data rather than from the caller.
class DataError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public DataError {
 public:
  EmptyInputError() : DataError("empty input: text contains no words") {}
};

// Malformed file content. `line` is 1-based, 0 when not line-oriented.
class ParseError : public DataError {
 public:
  ParseError(const std::string& path, size_t line, const std::string& what)
      : DataError(path + (line > 0 ? ":" + std::to_string(line) : "") + ": " +
                  what),
        path_(path),
        line_(line) {}

  const std::string& path() const { return path_; }
  size_t line() const { return line_; }

 private:
  std::string path_;
  size_t line_;
};

class EmptyVotesError : public DataError {
 public:
  EmptyVotesError() : DataError("cannot vote on an empty verdict list") {}
};

// Attack budget larger than the number of words.
class InvalidBudgetError : public DataError {
 public:
  using DataError::DataError;
};

// Probability-model parameters outside the formula's domain (k > m, ...).
class InvalidParamsError : public DataError {
 public:
  using DataError::DataError;
};

// Failures reaching or talking to a classifier backend.
class BackendError : public Error {
 public:
  using Error::Error;
};

class BackendUnavailableError : public BackendError {
 public:
  using BackendError::BackendError;
};

class ProtocolError : public BackendError {
 public:
  using BackendError::BackendError;
};

}  // namespace perturbshield

#endif  // PERTURBSHIELD_ERRORS_H_
