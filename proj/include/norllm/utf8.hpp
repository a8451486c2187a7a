#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "norllm/errors.hpp"

namespace norllm::utf8 {

// Decodes one code point starting at byte `i`. Returns false on malformed
// input (overlong forms, surrogates and values beyond U+10FFFF are rejected).
inline bool decode_one(std::string_view s, size_t i, uint32_t& cp, size_t& len) {
  const auto b = [&](size_t k) { return static_cast<uint8_t>(s[k]); };
  uint8_t b0 = b(i);
  if (b0 < 0x80) {
    cp = b0;
    len = 1;
    return true;
  }
  auto cont = [&](size_t k) { return k < s.size() && (b(k) & 0xC0) == 0x80; };
  if ((b0 & 0xE0) == 0xC0) {
    if (!cont(i + 1)) return false;
    cp = (uint32_t(b0 & 0x1F) << 6) | (b(i + 1) & 0x3F);
    len = 2;
    return cp >= 0x80;
  }
  if ((b0 & 0xF0) == 0xE0) {
    if (!cont(i + 1) || !cont(i + 2)) return false;
    cp = (uint32_t(b0 & 0x0F) << 12) | (uint32_t(b(i + 1) & 0x3F) << 6) | (b(i + 2) & 0x3F);
    len = 3;
    return cp >= 0x800 && !(cp >= 0xD800 && cp <= 0xDFFF);
  }
  if ((b0 & 0xF8) == 0xF0) {
    if (!cont(i + 1) || !cont(i + 2) || !cont(i + 3)) return false;
    cp = (uint32_t(b0 & 0x07) << 18) | (uint32_t(b(i + 1) & 0x3F) << 12) |
         (uint32_t(b(i + 2) & 0x3F) << 6) | (b(i + 3) & 0x3F);
    len = 4;
    return cp >= 0x10000 && cp <= 0x10FFFF;
  }
  return false;
}

inline void append(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(char(cp));
  } else if (cp < 0x800) {
    out.push_back(char(0xC0 | (cp >> 6)));
    out.push_back(char(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(char(0xE0 | (cp >> 12)));
    out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(char(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(char(0xF0 | (cp >> 18)));
    out.push_back(char(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(char(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(const std::vector<uint32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (uint32_t cp : cps) append(out, cp);
  return out;
}

// Throws ValidationError naming the byte offset of the first malformed sequence.
inline std::vector<uint32_t> decode_or_throw(std::string_view s) {
  std::vector<uint32_t> cps;
  cps.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    uint32_t cp;
    size_t len;
    if (!decode_one(s, i, cp, len))
      throw ValidationError("invalid UTF-8 at byte offset " + std::to_string(i));
    cps.push_back(cp);
    i += len;
  }
  return cps;
}

inline bool is_valid(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    uint32_t cp;
    size_t len;
    if (!decode_one(s, i, cp, len)) return false;
    i += len;
  }
  return true;
}

inline size_t count_scalars(std::string_view s) {
  size_t n = 0, i = 0;
  while (i < s.size()) {
    uint32_t cp;
    size_t len;
    if (!decode_one(s, i, cp, len)) throw ValidationError("invalid UTF-8 at byte offset " + std::to_string(i));
    ++n;
    i += len;
  }
  return n;
}

} // namespace norllm::utf8
