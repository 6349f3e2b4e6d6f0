// Copyright 2026 The msat Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace msat {

enum class ErrorKind {
  UnknownSymbol,
  SortMismatch,
  UnboundVariable,
  MissingAssignment,
  UnsupportedDoctrine,
  InvalidParameter,
  ObjectMismatch,
  SourceMismatch,
  IndexOutOfRange,
  ElementNotInCarrier,
  DoctrineMismatch,
  InvalidModel,
  InvalidDiagram,
  HomEnumerationIncomplete,
  BudgetExhausted,
  Syntax,
  Semantic,
};

std::string_view to_string(ErrorKind kind);

/// Base error for every failure raised by the engine. The kind is stable and
/// is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A syntax or semantic error in a text input, with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, int line, int column, const std::string& message)
      : Error(kind, std::to_string(line) + ":" + std::to_string(column) + ": " +
                        message),
        line_(line),
        column_(column),
        detail_(message) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

}  // namespace msat
