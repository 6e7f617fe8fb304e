#pragma once

#include <stdexcept>
#include <string>

namespace ffdigits {

/// Two operands were built over different fields.
class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A census or sum would exceed the configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& budget_name, const std::string& detail)
      : std::runtime_error("budget '" + budget_name + "' exceeded: " + detail),
        budget_name_(budget_name) {}

  const std::string& budget_name() const noexcept { return budget_name_; }

 private:
  std::string budget_name_;
};

/// A floating-point identity that must round to an integer did not.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ffdigits
