#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fnlscli {

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Flat `key = value` store with dotted key names, `#` comments, and blank
// lines. Typed getters record which keys were consumed so that leftovers
// (typos, misplaced sections) can be rejected as a whole.
class Config {
public:
  static Config parse_text(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key,
                         std::optional<std::string> fallback = {}) const;
  double get_double(const std::string& key,
                    std::optional<double> fallback = {}) const;
  std::size_t get_size(const std::string& key,
                       std::optional<std::size_t> fallback = {}) const;
  int get_int(const std::string& key, std::optional<int> fallback = {}) const;
  bool get_bool(const std::string& key,
                std::optional<bool> fallback = {}) const;
  std::vector<double> get_double_list(
      const std::string& key,
      std::optional<std::vector<double>> fallback = {}) const;

  // Throws ConfigError naming every key that no getter asked for.
  void require_fully_consumed() const;

private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
};

}  // namespace fnlscli
