//===- error.hpp - Error hierarchy ------------------------------*- C++ -*-===//
//
// Every failure surfaced by the library is one of three exception families:
// ParseError (front end), AnalysisError (bad criterion or request) and
// RuntimeError (interpreter faults). The CLI maps them to exit codes 2/3/3.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <stdexcept>
#include <string>

#include "slicekit/label.hpp"

namespace slicekit {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind { Syntax, DuplicateDecl, UseOfUndeclared, ShapeMismatch };

class ParseError : public Error {
public:
  ParseError(ParseErrorKind kind, int line, int column, const std::string &msg)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        kind_(kind), line_(line), column_(column) {}

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

private:
  ParseErrorKind kind_;
  int line_;
  int column_;
};

enum class AnalysisErrorKind {
  InvalidCriterion,
  UnknownLabel,
  OccurrenceNotFound,
  StatementNeverExecuted,
  ContradictoryFixing,
  NoDefinition,
  InvalidVariable,
};

class AnalysisError : public Error {
public:
  AnalysisError(AnalysisErrorKind kind, const std::string &msg)
      : Error(msg), kind_(kind) {}
  AnalysisErrorKind kind() const { return kind_; }

private:
  AnalysisErrorKind kind_;
};

enum class RuntimeErrorKind { DivisionByZero, IndexOutOfBounds, StepLimitExceeded };

/// Interpreter fault; `label`/`occurrence` identify the faulting step.
class RuntimeError : public Error {
public:
  RuntimeError(RuntimeErrorKind kind, Label label, int occurrence,
               const std::string &msg)
      : Error(msg), kind_(kind), label_(label), occurrence_(occurrence) {}

  RuntimeErrorKind kind() const { return kind_; }
  Label label() const { return label_; }
  int occurrence() const { return occurrence_; }

private:
  RuntimeErrorKind kind_;
  Label label_;
  int occurrence_;
};

} // namespace slicekit
