#pragma once

#include <stdexcept>
#include <string>

namespace ladderlab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument is outside the domain of an operation (bad input, not bad luck).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure could not meet its contract: no convergence,
// tolerance not met, accuracy unattainable, empty enumeration window.
class NumericError : public Error {
 public:
  enum class Kind {
    no_convergence,
    tolerance_not_met,
    accuracy_unattainable,
    window_too_small,
  };

  NumericError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  [[nodiscard]] Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace ladderlab
