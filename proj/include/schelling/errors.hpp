#pragma once

#include <stdexcept>
#include <string>

namespace schelling {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graphs, profiles, parameters or files.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// An algorithm was called outside the domain where its guarantee holds.
// `guard()` names the violated condition so callers can report it.
class PreconditionViolation : public Error {
 public:
  PreconditionViolation(std::string guard, const std::string& what)
      : Error(guard + ": " + what), guard_(std::move(guard)) {}
  const std::string& guard() const noexcept { return guard_; }

 private:
  std::string guard_;
};

// Exhaustive search or iteration cap exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A construction produced a result that failed its own verification.
class AssertionFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace schelling
