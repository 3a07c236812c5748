#pragma once

#include <stdexcept>
#include <string>

namespace rgupz {

/// Invalid input: bad field value, malformed quantum numbers, unknown tags.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Input is well formed but outside the physical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace rgupz
