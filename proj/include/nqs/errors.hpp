// Copyright 2026 The nqsquench Authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NQS_ERRORS_HPP
#define NQS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nqs {

// Malformed arguments: wrong shapes, out-of-range indices, bad preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Hilbert space too large for dense/exact treatment.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Failure of a numerical kernel (factorization, eigensolver, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A NaN or infinity was produced. The dynamics loop treats this as a
// blow-up of the trajectory rather than as an internal failure.
class NonFiniteError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Invalid experiment configuration. `path()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string &what)
      : std::runtime_error(what), path_(std::move(path)) {}

  const std::string &path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace nqs

#endif  // NQS_ERRORS_HPP
