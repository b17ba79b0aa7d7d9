// Copyright 2026 The roslu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace roslu {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Incompatible operand shapes in a kernel.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value (negative lambda, zero learning rate, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Violated call contract (missing DOM prefix, noisy example in a clean
/// batch, backward without reset, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent corpus / checkpoint content.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Optimizer step aborted (non-finite gradients).
class StepError : public Error {
 public:
  using Error::Error;
};

}  // namespace roslu
