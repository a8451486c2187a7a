#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <vector>

#include "norllm/detail/unicode_tables.hpp"

namespace norllm::detail {

inline uint8_t combining_class(uint32_t cp) {
  auto it = std::lower_bound(std::begin(kCombiningClass), std::end(kCombiningClass), cp,
                             [](const CccEntry& e, uint32_t v) { return e.cp < v; });
  if (it != std::end(kCombiningClass) && it->cp == cp) return it->ccc;
  return 0;
}

// Hangul syllable composition constants (UAX #15 section 3.12)
inline constexpr uint32_t kHangulSBase = 0xAC00;
inline constexpr uint32_t kHangulLBase = 0x1100;
inline constexpr uint32_t kHangulVBase = 0x1161;
inline constexpr uint32_t kHangulTBase = 0x11A7;
inline constexpr uint32_t kHangulLCount = 19;
inline constexpr uint32_t kHangulVCount = 21;
inline constexpr uint32_t kHangulTCount = 28;
inline constexpr uint32_t kHangulNCount = kHangulVCount * kHangulTCount;
inline constexpr uint32_t kHangulSCount = kHangulLCount * kHangulNCount;

inline void canonical_decompose(uint32_t cp, std::vector<uint32_t>& out) {
  if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
    uint32_t s = cp - kHangulSBase;
    out.push_back(kHangulLBase + s / kHangulNCount);
    out.push_back(kHangulVBase + (s % kHangulNCount) / kHangulTCount);
    uint32_t t = s % kHangulTCount;
    if (t != 0) out.push_back(kHangulTBase + t);
    return;
  }
  auto it = std::lower_bound(std::begin(kDecomp), std::end(kDecomp), cp,
                             [](const DecompEntry& e, uint32_t v) { return e.cp < v; });
  if (it != std::end(kDecomp) && it->cp == cp) {
    for (uint32_t k = 0; k < it->len; ++k) out.push_back(kDecompBuf[it->offset + k]);
    return;
  }
  out.push_back(cp);
}

inline bool compose_pair(uint32_t a, uint32_t b, uint32_t& out) {
  // Hangul LV / LVT
  if (a >= kHangulLBase && a < kHangulLBase + kHangulLCount &&
      b >= kHangulVBase && b < kHangulVBase + kHangulVCount) {
    out = kHangulSBase + ((a - kHangulLBase) * kHangulVCount + (b - kHangulVBase)) * kHangulTCount;
    return true;
  }
  if (a >= kHangulSBase && a < kHangulSBase + kHangulSCount && (a - kHangulSBase) % kHangulTCount == 0 &&
      b > kHangulTBase && b < kHangulTBase + kHangulTCount) {
    out = a + (b - kHangulTBase);
    return true;
  }
  uint64_t key = (uint64_t(a) << 32) | b;
  auto it = std::lower_bound(std::begin(kCompose), std::end(kCompose), key,
                             [](const ComposeEntry& e, uint64_t v) { return e.key < v; });
  if (it != std::end(kCompose) && it->key == key) {
    out = it->composed;
    return true;
  }
  return false;
}

// Full NFC: canonical decomposition, canonical ordering, canonical composition.
inline std::vector<uint32_t> nfc(const std::vector<uint32_t>& in) {
  std::vector<uint32_t> d;
  d.reserve(in.size());
  for (uint32_t cp : in) canonical_decompose(cp, d);

  // canonical ordering: stable bubble of adjacent marks with descending ccc
  for (size_t i = 1; i < d.size(); ++i) {
    uint8_t cc = combining_class(d[i]);
    if (cc == 0) continue;
    size_t j = i;
    while (j > 0) {
      uint8_t prev = combining_class(d[j - 1]);
      if (prev == 0 || prev <= cc) break;
      std::swap(d[j - 1], d[j]);
      --j;
    }
  }

  // composition with blocking: a character combines with the last starter
  // when it directly follows it or every intervening mark has a lower ccc
  std::vector<uint32_t> out;
  out.reserve(d.size());
  ptrdiff_t last_starter = -1;
  uint8_t last_cc = 0;
  for (uint32_t cp : d) {
    uint8_t cc = combining_class(cp);
    if (last_starter >= 0 && (out.size() == size_t(last_starter) + 1 || last_cc < cc)) {
      uint32_t composed;
      if (compose_pair(out[size_t(last_starter)], cp, composed)) {
        out[size_t(last_starter)] = composed;
        continue;
      }
    }
    if (cc == 0) last_starter = ptrdiff_t(out.size());
    out.push_back(cp);
    last_cc = cc;
  }
  return out;
}

} // namespace norllm::detail
