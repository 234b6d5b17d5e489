#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace reflectjoin {

enum class ErrorKind {
  DuplicateSchema,
  SchemaNotFound,
  IncompatibleDomains,
  InvalidRelation,
  IoError,
  ParseError,
  DomainError,
  Infeasible,
  SchemaMismatch,
  Compilation,
  ClassFormat,
  ClassNotFound,
  NoSuchMethod,
  ClassCast,
  VmFault,
  Arity,
  InterfaceMismatch,
  InvalidJoin,
  BuilderUnderflow,
  InvalidArgument,
};

const char* errorKindName(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the GenLang front end; carries the phase and source line.
class CompilationError : public Error {
 public:
  enum class Phase { Syntax, Type };

  CompilationError(Phase phase, int line, const std::string& message)
      : Error(ErrorKind::Compilation,
              std::string(phase == Phase::Syntax ? "syntax" : "type") +
                  " error at line " + std::to_string(line) + ": " + message),
        phase_(phase),
        line_(line) {}

  Phase phase() const noexcept { return phase_; }
  int line() const noexcept { return line_; }

 private:
  Phase phase_;
  int line_;
};

/// Catch-all join failure; keeps the original error kind for inspection.
class InvalidJoinError : public Error {
 public:
  explicit InvalidJoinError(const std::string& message,
                            std::optional<ErrorKind> cause = std::nullopt)
      : Error(ErrorKind::InvalidJoin, message), cause_(cause) {}

  std::optional<ErrorKind> cause() const noexcept { return cause_; }

 private:
  std::optional<ErrorKind> cause_;
};

}  // namespace reflectjoin
