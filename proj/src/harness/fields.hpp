#pragma once

// Strict JSON object reader: optional fields keep their defaults, type
// mismatches and unknown keys are reported instead of thrown.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace mash::detail {

class FieldReader {
 public:
  FieldReader(const nlohmann::json& object, std::string path, std::vector<std::string>& errors);
  FieldReader(const FieldReader&) = delete;
  FieldReader& operator=(const FieldReader&) = delete;
  ~FieldReader();

  bool ok() const { return object_ != nullptr; }

  void number(const char* key, double& out);
  void integer(const char* key, std::uint64_t& out);
  void text(const char* key, std::string& out);
  void numbers(const char* key, std::vector<double>& out);

  /// nullptr when absent; marks the key as known.
  const nlohmann::json* child(const char* key);
  bool has(const char* key) const;

  std::string path(const char* key) const;
  void error(const std::string& key, const std::string& message);

 private:
  const nlohmann::json* object_ = nullptr;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

}  // namespace mash::detail
