#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gradinv {

/// Coarse failure classes; the CLI maps each to a distinct exit status.
enum class ErrorKind {
  Parse,           // malformed text or problem file
  Axiom,           // Lie/action/module axioms violated
  Precondition,    // NotSemisimple, NotSolvable, NotSplitOverBaseField, Gamma/Phi violations
  Internal,        // split failure and other "cannot happen" states
  Usage,           // signature or dimension mismatch between arguments
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}
  ErrorKind kind() const noexcept { return kind_; }
  /// Stable identifier such as "NotSemisimple".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorKind::Parse, "ParseError",
              "at position " + std::to_string(position) + ": " + message),
        position_(position),
        message_(message) {}
  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

struct SignatureMismatch : Error {
  explicit SignatureMismatch(const std::string& what)
      : Error(ErrorKind::Usage, "SignatureMismatch", what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what)
      : Error(ErrorKind::Usage, "DimensionMismatch", what) {}
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::Usage, "InvalidArgument", what) {}
};

struct NotHomogeneous : Error {
  explicit NotHomogeneous(const std::string& what)
      : Error(ErrorKind::Usage, "NotHomogeneous", what) {}
};

struct AxiomViolation : Error {
  explicit AxiomViolation(const std::string& what)
      : Error(ErrorKind::Axiom, "AxiomViolation", what) {}
};

struct NotSemisimple : Error {
  explicit NotSemisimple(const std::string& what = "Lie algebra is not semisimple (Killing form is degenerate)")
      : Error(ErrorKind::Precondition, "NotSemisimple", what) {}
};

struct NotSolvable : Error {
  explicit NotSolvable(const std::string& what = "Lie algebra is not solvable")
      : Error(ErrorKind::Precondition, "NotSolvable", what) {}
};

class NotSplitOverBaseField : public Error {
 public:
  NotSplitOverBaseField(const std::string& what, std::string factor)
      : Error(ErrorKind::Precondition, "NotSplitOverBaseField", what), factor_(std::move(factor)) {}
  /// Factor of the characteristic polynomial without rational roots, e.g. "t^2 + 1". Empty
  /// when the failure was a dimension-sum mismatch.
  const std::string& factor() const noexcept { return factor_; }

 private:
  std::string factor_;
};

struct GammaViolation : Error {
  explicit GammaViolation(const std::string& what)
      : Error(ErrorKind::Precondition, "GammaViolation", what) {}
};

struct PhiViolation : Error {
  explicit PhiViolation(const std::string& what)
      : Error(ErrorKind::Precondition, "PhiViolation", what) {}
};

struct SplitFailure : Error {
  explicit SplitFailure(const std::string& what)
      : Error(ErrorKind::Internal, "SplitFailure", what) {}
};

}  // namespace gradinv
