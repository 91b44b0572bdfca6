#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sebot {

/// Flat `key = value` configuration. `[section]` headers prefix the keys
/// that follow with `section.`; `#` and `;` start comments. Values may be
/// quoted; list values are comma separated, optionally inside brackets.
/// Lookups mark keys as used so callers can reject unknown keys.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::istream& in, const std::string& source);
  static KeyValueConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.contains(key); }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  std::optional<std::string> get(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  unsigned long long get_uint(const std::string& key, unsigned long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<unsigned long long> get_uint_list(const std::string& key) const;

  /// Keys present in the file that were never looked up.
  std::vector<std::string> unused_keys() const;
  const std::map<std::string, std::string>& entries() const noexcept { return values_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
  std::string source_ = "<config>";
};

}  // namespace sebot
