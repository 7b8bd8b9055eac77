#include "sparsify/config.hpp"

#include <fstream>
#include <sstream>

namespace sparsify {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig config;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      throw ConfigError("line " + std::to_string(number) + ": expected key=value");
    }
    config.values_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return config;
}

std::string KeyValueConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing key " + key);
  return it->second;
}

std::string KeyValueConfig::get(const std::string& key,
                                const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string value = get(key);
  try {
    size_t used = 0;
    const double d = std::stod(value, &used);
    if (used == value.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("key " + key + ": not a number: " + value);
}

long long KeyValueConfig::get_int(const std::string& key) const {
  const std::string value = get(key);
  try {
    size_t used = 0;
    const long long i = std::stoll(value, &used);
    if (used == value.size()) return i;
  } catch (const std::exception&) {
  }
  throw ConfigError("key " + key + ": not an integer: " + value);
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string value = get(key);
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("key " + key + ": not a boolean: " + value);
}

std::vector<std::string> KeyValueConfig::get_list(const std::string& key) const {
  std::vector<std::string> items;
  std::istringstream in(get(key));
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace sparsify
