#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "norllm/detail/nfc.hpp"
#include "norllm/errors.hpp"
#include "norllm/utf8.hpp"

namespace norllm::preprocess {

inline bool is_control(uint32_t cp) {
  return cp < 0x20 || (cp >= 0x7F && cp <= 0x9F);
}

// NFC, control characters stripped (newline and tab survive to the whitespace
// pass), whitespace runs collapsed: plain runs to one space, runs holding one
// newline to "\n", runs holding two or more to "\n\n". No case folding.
// Idempotent. Throws ValidationError with the byte offset on malformed UTF-8.
inline std::string normalize_text(std::string_view raw) {
  std::vector<uint32_t> cps = utf8::decode_or_throw(raw);

  std::vector<uint32_t> kept;
  kept.reserve(cps.size());
  for (uint32_t cp : cps) {
    if (is_control(cp) && cp != '\n' && cp != '\t') continue;
    kept.push_back(cp);
  }
  kept = detail::nfc(kept);

  std::string out;
  out.reserve(kept.size());
  size_t i = 0, n = kept.size();
  auto is_ws = [](uint32_t cp) { return cp == ' ' || cp == '\t' || cp == '\n'; };
  while (i < n) {
    if (!is_ws(kept[i])) {
      utf8::append(out, kept[i]);
      ++i;
      continue;
    }
    size_t newlines = 0;
    while (i < n && is_ws(kept[i])) {
      if (kept[i] == '\n') ++newlines;
      ++i;
    }
    if (out.empty() || i == n) continue;  // trim edges
    if (newlines >= 2)
      out += "\n\n";
    else if (newlines == 1)
      out += '\n';
    else
      out += ' ';
  }
  return out;
}

struct SegmentationRules {
  std::set<std::string> abbreviation_list;  // entries end with '.'
  std::set<char> terminators{'.', '!', '?'};
  size_t min_sentence_chars = 1;

  void validate() const {
    for (const auto& a : abbreviation_list)
      if (a.empty() || a.back() != '.')
        throw ValidationError("abbreviation entry must end with '.': " + a);
  }
};

// Shipped Norwegian abbreviation list; extend via load_abbreviations.
inline SegmentationRules default_rules() {
  SegmentationRules r;
  r.abbreviation_list = {
      "f.eks.", "bl.a.", "dvs.", "ca.", "nr.",  "jf.",   "mht.",  "osv.",
      "etc.",   "m.m.",  "mv.",  "mfl.", "pga.", "ifm.",  "iht.",  "evt.",
      "hhv.",   "kl.",   "s.",   "st.",  "dr.",  "prof.", "fhv.",  "adm.dir.",
      "tlf.",   "vedr.", "o.l.", "d.v.s.", "m.a.o.", "f.o.m.", "t.o.m.",
  };
  return r;
}

inline bool is_upper_or_digit(uint32_t cp) {
  if (cp >= '0' && cp <= '9') return true;
  if (cp >= 'A' && cp <= 'Z') return true;
  // Latin-1 uppercase covers the Scandinavian letters that matter here
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return true;
  if (cp == 0x0160 || cp == 0x017D || cp == 0x010C || cp == 0x0110 || cp == 0x014A ||
      cp == 0x0166)
    return true;  // Š Ž Č Đ Ŋ Ŧ (Sámi)
  return false;
}

// Rule-based splitter over normalized text. Splits after terminator + space +
// uppercase/digit, except when the token ending at the terminator is a listed
// abbreviation. Sentences are trimmed slices of the input.
inline std::vector<std::string> segment_sentences(std::string_view text,
                                                  const SegmentationRules& rules) {
  rules.validate();
  std::vector<std::string> sentences;
  if (text.empty()) return sentences;

  auto ends_with_abbreviation = [&](size_t end) {
    // end = index one past the terminator
    for (const auto& abbr : rules.abbreviation_list) {
      if (abbr.size() > end) continue;
      size_t start = end - abbr.size();
      if (start > 0) {
        char prev = text[start - 1];
        if (prev != ' ' && prev != '\n' && prev != '\t') continue;
      }
      bool match = true;
      for (size_t k = 0; k < abbr.size(); ++k) {
        char a = text[start + k], b = abbr[k];
        if (a >= 'A' && a <= 'Z') a = char(a - 'A' + 'a');
        if (b >= 'A' && b <= 'Z') b = char(b - 'A' + 'a');
        if (a != b) {
          match = false;
          break;
        }
      }
      if (match) return true;
    }
    return false;
  };

  size_t start = 0;
  size_t count_in_sentence = 0;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    ++count_in_sentence;
    if (rules.terminators.count(c) && i + 1 < text.size() &&
        (text[i + 1] == ' ' || text[i + 1] == '\n')) {
      size_t next = i + 1;
      while (next < text.size() && (text[next] == ' ' || text[next] == '\n')) ++next;
      uint32_t cp = 0;
      size_t len = 0;
      bool have_next = next < text.size() && utf8::decode_one(text, next, cp, len);
      bool abbrev = (c == '.') && ends_with_abbreviation(i + 1);
      if (have_next && is_upper_or_digit(cp) && !abbrev &&
          count_in_sentence >= rules.min_sentence_chars) {
        sentences.emplace_back(text.substr(start, i + 1 - start));
        start = next;
        i = next;
        count_in_sentence = 0;
        continue;
      }
    }
    ++i;
  }
  if (start < text.size()) {
    std::string_view tail = text.substr(start);
    while (!tail.empty() && (tail.back() == ' ' || tail.back() == '\n')) tail.remove_suffix(1);
    if (!tail.empty()) sentences.emplace_back(tail);
  }
  return sentences;
}

} // namespace norllm::preprocess
