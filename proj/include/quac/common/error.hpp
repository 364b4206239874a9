// Copyright 2026 The quac-sim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace quac {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration; `field()` names the offending parameter.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A well-formed request the model cannot satisfy.
class DomainError : public Error {
 public:
  using Error::Error;
};

class TimingViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsupportedOperation : public DomainError {
 public:
  using DomainError::DomainError;
};

class InsufficientEntropy : public DomainError {
 public:
  using DomainError::DomainError;
};

class ArgumentError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace quac
