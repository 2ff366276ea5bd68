// Copyright 2026 The AugGate Authors.
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
#include "auggate/error.h"

#include <utility>

namespace auggate {
namespace {

std::string WithLocation(const std::string& message,
                         ParseError::Location kind, int64_t location) {
  switch (kind) {
    case ParseError::Location::kRow:
      return "row " + std::to_string(location) + ": " + message;
    case ParseError::Location::kLine:
      return "line " + std::to_string(location) + ": " + message;
    case ParseError::Location::kByteOffset:
      return "byte offset " + std::to_string(location) + ": " + message;
    case ParseError::Location::kNone:
      break;
  }
  return message;
}

}  // namespace

ParseError::ParseError(const std::string& message, Location kind,
                       int64_t location)
    : Error(WithLocation(message, kind, location)),
      location_kind_(kind),
      location_(location) {}

ProviderError::ProviderError(Kind kind, const std::string& message,
                             int status, std::string detail)
    : Error(message), kind_(kind), status_(status), detail_(std::move(detail)) {}

}  // namespace auggate
