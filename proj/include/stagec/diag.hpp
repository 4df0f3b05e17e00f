#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace stagec {

enum class DiagCode {
  SyntaxError,
  TypeMismatch,
  StageViolation,
  PhaseViolation,
  ScopeViolation,
  ArityViolation,
  UnknownBuiltin,
  StageError,
  UnboundIdentifier,
  AnnotationRequired,
  ShapeMismatch,
  NonCircuitConstruct,
  ArityMismatch,
  TooManyInputs,
  ProfileViolation,
  StuckEvaluation,
};

const char* diagCodeName(DiagCode code);

// A single diagnostic. `where` is a node path ("fun.body") for term-level
// checks or empty; line/col are 1-based source positions when known.
struct Diag {
  DiagCode code = DiagCode::SyntaxError;
  std::string message;
  std::string where;
  int line = 0;
  int col = 0;

  std::string render() const;
};

// User-facing failure carried as an exception.
class Error : public std::runtime_error {
public:
  explicit Error(Diag diag) : std::runtime_error(diag.render()), diag_(std::move(diag)) {}
  const Diag& diag() const { return diag_; }
  DiagCode code() const { return diag_.code; }

private:
  Diag diag_;
};

// A broken internal invariant: evaluator or validator bug, not a user error.
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

template <class T>
class Expected {
public:
  Expected(T value) : v_(std::move(value)) {}
  Expected(Diag diag) : v_(std::move(diag)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<T>(v_); }
  T&& value() && { return std::get<T>(std::move(v_)); }
  const Diag& error() const { return std::get<Diag>(v_); }

private:
  std::variant<T, Diag> v_;
};

}  // namespace stagec
