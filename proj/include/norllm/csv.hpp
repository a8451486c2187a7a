#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "norllm/errors.hpp"

namespace norllm::csv {

// Dialect: UTF-8, comma, quote-minimal, LF line endings.

inline std::string quote_field(std::string_view field) {
  bool needs = field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

inline std::string make_row(const std::vector<std::string>& fields) {
  std::string row;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += quote_field(fields[i]);
  }
  row += '\n';
  return row;
}

inline std::vector<std::string> parse_row(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
    ++i;
  }
  fields.push_back(std::move(cur));
  return fields;
}

inline std::vector<std::vector<std::string>> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(parse_row(line));
  }
  return rows;
}

inline void write_file(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for write: " + path);
  for (const auto& r : rows) f << make_row(r);
  if (!f) throw IoError("write failed: " + path);
}

} // namespace norllm::csv
