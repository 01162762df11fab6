#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mash {

/// Argument outside the physically admissible domain (negative voltage, i1 < 3, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Command outside a tabulated or rated range (over-pressure, over-voltage).
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Carries every violated field, not just the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::size_t row)
      : std::runtime_error(what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mash
