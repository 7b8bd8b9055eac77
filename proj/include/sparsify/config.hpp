#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsify {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key=value file. '#' starts a comment; blank lines are skipped;
// keys and values are trimmed. A repeated key keeps the last value.
class KeyValueConfig {
 public:
  static KeyValueConfig load(const std::string& path);
  static KeyValueConfig parse(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  long long get_int(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;
  // Comma separated list; empty items are dropped.
  std::vector<std::string> get_list(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace sparsify
