#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace portnet {

/// A machine-readable finding. `code` is stable (e.g. "LP-COND-2"), `nodes`
/// names the offending net nodes, `hint` is a one-line remedy.
struct Diagnostic {
  std::string code;
  std::string message;
  std::vector<std::string> nodes;
  std::string hint;
  int line = 0;
  int column = 0;

  bool operator==(const Diagnostic&) const = default;
};

std::string to_string(const Diagnostic& d);

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message);
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// An error that carries a list of structured diagnostics.
class DiagnosticError : public Error {
 public:
  DiagnosticError(std::string code, const std::string& summary,
                  std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

class BagUnderflow : public Error {
 public:
  explicit BagUnderflow(const std::string& what) : Error("BAG-UNDERFLOW", what) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& what) : Error("NOT-FOUND", what) {}
};

class NotEnabled : public Error {
 public:
  explicit NotEnabled(const std::string& what) : Error("NOT-ENABLED", what) {}
};

class InvalidNet : public Error {
 public:
  explicit InvalidNet(const std::string& what) : Error("INVALID-NET", what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error("USAGE", what) {}
};

/// Exploration was truncated; results derived from it would be unsound.
class Inconclusive : public Error {
 public:
  explicit Inconclusive(const std::string& what) : Error("INCONCLUSIVE", what) {}
};

class StructureError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

class PortnetError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

class CompositionError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

class MirrorError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

class PatternError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

class ParseError : public DiagnosticError {
 public:
  using DiagnosticError::DiagnosticError;
};

}  // namespace portnet
