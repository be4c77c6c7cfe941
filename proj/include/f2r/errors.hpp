// Copyright 2026 The fourier2relu Authors.
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

namespace f2r {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition (bad dimensions, parameters
// outside their domain, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input. `position()` is the byte offset where the
// problem was detected, or npos when the input was syntactically valid but
// structurally wrong.
class ParseError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  ParseError(const std::string& what, std::size_t position = npos);

  std::size_t position() const noexcept { return position_; }
  // Message without the position suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

// A construction could not satisfy its own invariants.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Invalid experiment configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Operation not available for this kind of object.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace f2r
