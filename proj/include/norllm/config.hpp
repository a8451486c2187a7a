#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <string_view>

#include "norllm/errors.hpp"

namespace norllm::config {

// Workspace configuration: one "key = value" pair per line, '#' comments,
// blank lines ignored. Keys are dotted lowercase (e.g. dedup.seed).
struct Config {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }

  std::string get(const std::string& key, const std::string& fallback = {}) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }

  int64_t get_int(const std::string& key, int64_t fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
      return std::stoll(it->second);
    } catch (...) {
      throw ValidationError("config: key '" + key + "' is not an integer: " + it->second);
    }
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
      return std::stod(it->second);
    } catch (...) {
      throw ValidationError("config: key '" + key + "' is not a number: " + it->second);
    }
  }
};

inline Config parse_config(std::string_view text) {
  Config cfg;
  size_t lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;

    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty())
      throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
    cfg.values[key] = value;
  }
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open config: " + path);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

} // namespace norllm::config
