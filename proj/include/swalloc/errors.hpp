#pragma once

#include <stdexcept>
#include <string>

namespace swalloc {

/// Argument outside the mathematical domain of an operation (bad item index,
/// k < 3 for the closed-form bounds, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation was not met by the caller.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exhaustive enumeration would exceed the configured state budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An online algorithm queried an item that has not arrived yet.
class GuardViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The adaptive hardness oracle was queried outside the online model.
class ModelViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace swalloc
