#pragma once

#include <stdexcept>
#include <string>

namespace limsup {

// Argument outside the mathematical domain of an operation (r <= 0, tau <= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Lookup outside a sampled table.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A required hypothesis is not satisfied. `condition()` names the failed check.
class HypothesisError : public std::invalid_argument {
 public:
  explicit HypothesisError(std::string condition)
      : std::invalid_argument("hypothesis not met: " + condition),
        condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

// Desk-scale work guard tripped.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Input form the operation has no exact handling for (non-invertible g, sampled rule, ...).
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace limsup
