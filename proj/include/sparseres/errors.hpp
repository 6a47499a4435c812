// Copyright 2026 The sparseres Authors.
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparseres {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_ = 0;
  int column_ = 0;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class MissingSlotError : public Error {
 public:
  explicit MissingSlotError(std::string slot)
      : Error("missing coefficient slot '" + slot + "'"), slot_(std::move(slot)) {}
  const std::string& slot() const { return slot_; }

 private:
  std::string slot_;
};

// Pivot block too close to singular; carries the reciprocal condition estimate.
class SingularPivotError : public Error {
 public:
  explicit SingularPivotError(double rcond)
      : Error("singular pivot block (reciprocal condition " + std::to_string(rcond) + ")"),
        rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

class NonConvergenceError : public Error {
 public:
  explicit NonConvergenceError(std::size_t index)
      : Error("eigenvalue iteration stalled at index " + std::to_string(index)), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class NoSolverError : public Error {
 public:
  using Error::Error;
};

class NoTemplateError : public Error {
 public:
  using Error::Error;
};

class UnsupportedCaseError : public Error {
 public:
  using Error::Error;
};

class UnrecoverableVariableError : public Error {
 public:
  explicit UnrecoverableVariableError(int var)
      : Error("variable " + std::to_string(var) + " has no monomial pair in the basis"), var_(var) {}
  int var() const { return var_; }

 private:
  int var_;
};

}  // namespace sparseres
