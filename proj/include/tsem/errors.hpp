#pragma once

#include <stdexcept>
#include <string>

namespace tsem {

// Every failure carries a kind so callers (notably the CLI) can distinguish
// syntax problems from semantic validation problems without string matching.
enum class ErrorKind {
  DuplicateName,
  UnknownVariable,
  ReservedName,
  TypeError,
  EmptyRange,
  OutOfRange,
  DivisionByZero,
  SyntaxError,
  ExogenousAtom,
  ExogenousIntervention,
  OutOfRangeValue,
  DuplicateInterventionTime,
  UnknownObservable,
  IncompatibleSignatures,
  InterventionOutsideObservables,
  Validation,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // Syntax errors map to a different process exit code than semantic ones.
  bool is_syntax() const { return kind_ == ErrorKind::SyntaxError; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace tsem
