#include "fields.hpp"

namespace mash::detail {

FieldReader::FieldReader(const nlohmann::json& object, std::string path,
                         std::vector<std::string>& errors)
    : path_(std::move(path)), errors_(errors) {
  if (object.is_object()) {
    object_ = &object;
  } else {
    errors_.push_back((path_.empty() ? std::string("<root>") : path_) + ": expected an object");
  }
}

FieldReader::~FieldReader() {
  if (!object_) return;
  for (const auto& [key, value] : object_->items()) {
    if (!seen_.contains(key)) errors_.push_back(path(key.c_str()) + ": unknown field");
  }
}

std::string FieldReader::path(const char* key) const {
  return path_.empty() ? std::string(key) : path_ + "." + key;
}

void FieldReader::error(const std::string& key, const std::string& message) {
  errors_.push_back(path(key.c_str()) + ": " + message);
}

bool FieldReader::has(const char* key) const { return object_ && object_->contains(key); }

const nlohmann::json* FieldReader::child(const char* key) {
  seen_.insert(key);
  if (!object_) return nullptr;
  auto it = object_->find(key);
  return it == object_->end() ? nullptr : &*it;
}

void FieldReader::number(const char* key, double& out) {
  const auto* v = child(key);
  if (!v) return;
  if (!v->is_number()) {
    error(key, "expected a number");
    return;
  }
  out = v->get<double>();
}

void FieldReader::integer(const char* key, std::uint64_t& out) {
  const auto* v = child(key);
  if (!v) return;
  if (!v->is_number_unsigned()) {
    error(key, "expected a non-negative integer");
    return;
  }
  out = v->get<std::uint64_t>();
}

void FieldReader::text(const char* key, std::string& out) {
  const auto* v = child(key);
  if (!v) return;
  if (!v->is_string()) {
    error(key, "expected a string");
    return;
  }
  out = v->get<std::string>();
}

void FieldReader::numbers(const char* key, std::vector<double>& out) {
  const auto* v = child(key);
  if (!v) return;
  if (!v->is_array()) {
    error(key, "expected an array of numbers");
    return;
  }
  std::vector<double> values;
  for (const auto& item : *v) {
    if (!item.is_number()) {
      error(key, "expected an array of numbers");
      return;
    }
    values.push_back(item.get<double>());
  }
  out = std::move(values);
}

}  // namespace mash::detail
