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
#ifndef AUGGATE_ERROR_H_
#define AUGGATE_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace auggate {

// Root of the toolkit's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input data. location is a row number, line number or byte offset
// depending on the format; kind says which.
class ParseError : public Error {
 public:
  enum class Location { kNone, kRow, kLine, kByteOffset };

  ParseError(const std::string& message, Location kind = Location::kNone,
             int64_t location = -1);

  Location location_kind() const { return location_kind_; }
  int64_t location() const { return location_; }

 private:
  Location location_kind_;
  int64_t location_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller violated an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Failure reported by (or while talking to) a model provider.
class ProviderError : public Error {
 public:
  enum class Kind {
    kTransport,
    kRateLimited,
    kProtocol,
    kUnsupported,
    kUnparseable,
    kRemote,
  };

  ProviderError(Kind kind, const std::string& message, int status = 0,
                std::string detail = {});

  Kind kind() const { return kind_; }
  int status() const { return status_; }
  // Raw payload for unparseable responses.
  const std::string& detail() const { return detail_; }
  bool retryable() const {
    return kind_ == Kind::kTransport || kind_ == Kind::kRateLimited;
  }

 private:
  Kind kind_;
  int status_;
  std::string detail_;
};

}  // namespace auggate

#endif  // AUGGATE_ERROR_H_
