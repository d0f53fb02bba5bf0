#include "fnlscli/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fnlscli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' &&
        c != '-')
      return false;
  }
  return true;
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  double out = 0.0;
  const char* begin = v.data();
  const char* end = v.data() + v.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc() || res.ptr != end)
    throw ConfigError("key '" + key + "' has a malformed number: '" + v + "'");
  return out;
}

}  // namespace

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (!valid_key(key))
      throw ConfigError("line " + std::to_string(lineno) +
                        ": malformed key '" + key + "'");
    if (value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key '" + key +
                        "' has no value");
    if (!cfg.values_.emplace(key, value).second)
      throw ConfigError("line " + std::to_string(lineno) + ": key '" + key +
                        "' appears twice");
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

bool Config::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string Config::get_string(const std::string& key,
                               std::optional<std::string> fallback) const {
  consumed_.insert(key);
  const auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  if (fallback) return *fallback;
  throw ConfigError("missing required key '" + key + "'");
}

double Config::get_double(const std::string& key,
                          std::optional<double> fallback) const {
  consumed_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) {
    if (fallback) return *fallback;
    throw ConfigError("missing required key '" + key + "'");
  }
  return parse_double(key, it->second);
}

std::size_t Config::get_size(const std::string& key,
                             std::optional<std::size_t> fallback) const {
  const double v = get_double(
      key, fallback ? std::optional<double>(static_cast<double>(*fallback))
                    : std::nullopt);
  if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
    throw ConfigError("key '" + key + "' must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

int Config::get_int(const std::string& key, std::optional<int> fallback) const {
  const double v = get_double(
      key,
      fallback ? std::optional<double>(static_cast<double>(*fallback))
               : std::nullopt);
  if (v != static_cast<double>(static_cast<int>(v)))
    throw ConfigError("key '" + key + "' must be an integer");
  return static_cast<int>(v);
}

bool Config::get_bool(const std::string& key,
                      std::optional<bool> fallback) const {
  consumed_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) {
    if (fallback) return *fallback;
    throw ConfigError("missing required key '" + key + "'");
  }
  const std::string& v = it->second;
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError("key '" + key + "' must be true/false");
}

std::vector<double> Config::get_double_list(
    const std::string& key, std::optional<std::vector<double>> fallback) const {
  consumed_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) {
    if (fallback) return *fallback;
    throw ConfigError("missing required key '" + key + "'");
  }
  std::vector<double> out;
  std::string token;
  std::istringstream in(it->second);
  while (std::getline(in, token, ',')) out.push_back(parse_double(key, token));
  if (out.empty())
    throw ConfigError("key '" + key + "' holds an empty list");
  return out;
}

void Config::require_fully_consumed() const {
  std::string leftovers;
  for (const auto& [key, value] : values_) {
    if (!consumed_.count(key)) {
      if (!leftovers.empty()) leftovers += ", ";
      leftovers += key;
    }
  }
  if (!leftovers.empty())
    throw ConfigError("unknown config keys: " + leftovers);
}

}  // namespace fnlscli
