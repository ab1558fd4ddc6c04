// Copyright 2026 The spline2relu Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spline2relu {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation
/// (evaluation off [0,1], composition range violation, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed object: unsorted breakpoints, shape mismatch, broken
/// special-network structure.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A CPwL result would exceed the configured node budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter combination (unsupported width, bad exponent, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A documented postcondition could not be established.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace spline2relu
