// Copyright 2026 The ycurve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ycurve {

// Broad failure classes. The CLI maps each class to a stable exit code.
enum class ErrorKind {
  parse,       // malformed input files, flags, or config
  alignment,   // series cannot be put on a common quarter range
  estimation,  // singular systems, degenerate or separated data
  io,          // output could not be written
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string_view module, const std::string& message)
      : std::runtime_error(std::string(module) + ": " + message),
        kind_(kind),
        module_(module) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

class ParseError : public Error {
 public:
  ParseError(std::string_view module, const std::string& message)
      : Error(ErrorKind::parse, module, message) {}
};

// Input content is well-formed but violates a unit or uniqueness rule.
class ValidationError : public Error {
 public:
  ValidationError(std::string_view module, const std::string& message)
      : Error(ErrorKind::parse, module, message) {}
};

class LookupError : public Error {
 public:
  LookupError(std::string_view module, const std::string& message)
      : Error(ErrorKind::parse, module, message) {}
};

class AlignmentError : public Error {
 public:
  AlignmentError(std::string_view module, const std::string& message)
      : Error(ErrorKind::alignment, module, message) {}
};

// Arguments outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  DomainError(std::string_view module, const std::string& message)
      : Error(ErrorKind::estimation, module, message) {}
};

class SingularityError : public Error {
 public:
  SingularityError(std::string_view module, const std::string& message)
      : Error(ErrorKind::estimation, module, message) {}
};

class InsufficientDataError : public Error {
 public:
  InsufficientDataError(std::string_view module, const std::string& message)
      : Error(ErrorKind::estimation, module, message) {}
};

class DegenerateDataError : public Error {
 public:
  DegenerateDataError(std::string_view module, const std::string& message)
      : Error(ErrorKind::estimation, module, message) {}
};

class SeparationError : public Error {
 public:
  SeparationError(std::string_view module, const std::string& message)
      : Error(ErrorKind::estimation, module, message) {}
};

class IoError : public Error {
 public:
  IoError(std::string_view module, const std::string& message)
      : Error(ErrorKind::io, module, message) {}
};

}  // namespace ycurve
