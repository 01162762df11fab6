#include "mash/errors.hpp"

namespace mash {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out = "validation failed";
  for (const auto& item : items) {
    out += "\n  - ";
    out += item;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

}  // namespace mash
