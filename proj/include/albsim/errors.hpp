#pragma once

#include <stdexcept>
#include <string>

namespace albsim {

// Raised when a configuration value violates the documented schema.
// `field` names the offending key (e.g. "groups", "load.levels").
class ValidationError : public std::runtime_error {
public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

// Raised when an operation is called with arguments outside its contract
// (a programming error, not a user-input error).
class ContractViolation : public std::logic_error {
public:
  explicit ContractViolation(const std::string& message)
      : std::logic_error(message) {}
};

}  // namespace albsim
