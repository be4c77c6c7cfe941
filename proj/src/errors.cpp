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

#include "f2r/errors.hpp"

namespace f2r {

namespace {
std::string with_position(const std::string& what, std::size_t position) {
  if (position == ParseError::npos) return what;
  return what + " (at byte " + std::to_string(position) + ")";
}
}  // namespace

ParseError::ParseError(const std::string& what, std::size_t position)
    : Error(with_position(what, position)), detail_(what), position_(position) {}

}  // namespace f2r
