#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "norllm/errors.hpp"
#include "norllm/utf8.hpp"

namespace norllm::preprocess {

inline constexpr int kLangIdMinN = 1;
inline constexpr int kLangIdMaxN = 4;

// Character n-gram multinomial classifier (n = 1..4, add-alpha smoothing).
// Counts are kept alongside the log probabilities so models merge and
// serialize exactly; log probabilities are rebuilt deterministically.
struct LangIdModel {
  std::vector<std::string> classes;                          // sorted, unique
  std::vector<std::map<std::string, double>> ngram_log_probs;  // per class
  std::vector<std::map<std::string, int64_t>> ngram_counts;    // per class
  double smoothing_alpha = 0.5;

  // per (class, n): log prob of an n-gram unseen in that class
  std::vector<std::array<double, kLangIdMaxN + 1>> unseen_log_prob;

  size_t class_index(std::string_view lang) const {
    auto it = std::lower_bound(classes.begin(), classes.end(), lang);
    if (it == classes.end() || *it != lang)
      throw PreconditionError("unknown language class: " + std::string(lang));
    return size_t(it - classes.begin());
  }
};

inline std::vector<std::string> extract_char_ngrams(std::string_view text) {
  std::vector<uint32_t> cps = utf8::decode_or_throw(text);
  std::vector<std::string> grams;
  grams.reserve(cps.size() * kLangIdMaxN);
  for (size_t i = 0; i < cps.size(); ++i) {
    std::string g;
    for (int n = 0; n < kLangIdMaxN && i + size_t(n) < cps.size(); ++n) {
      utf8::append(g, cps[i + size_t(n)]);
      grams.push_back(g);
    }
  }
  return grams;
}

namespace detail_langid {

inline int gram_order(const std::string& g) {
  return int(utf8::count_scalars(g));
}

inline void rebuild_log_probs(LangIdModel& m) {
  // per n: vocabulary = distinct n-grams over all classes, plus one unseen slot
  std::array<std::set<std::string>, kLangIdMaxN + 1> vocab;
  for (const auto& counts : m.ngram_counts)
    for (const auto& [g, c] : counts) vocab[size_t(gram_order(g))].insert(g);

  m.ngram_log_probs.assign(m.classes.size(), {});
  m.unseen_log_prob.assign(m.classes.size(), {});
  for (size_t ci = 0; ci < m.classes.size(); ++ci) {
    std::array<int64_t, kLangIdMaxN + 1> totals{};
    for (const auto& [g, c] : m.ngram_counts[ci]) totals[size_t(gram_order(g))] += c;
    for (int n = kLangIdMinN; n <= kLangIdMaxN; ++n) {
      double denom = double(totals[size_t(n)]) +
                     m.smoothing_alpha * double(vocab[size_t(n)].size() + 1);
      m.unseen_log_prob[ci][size_t(n)] = std::log(m.smoothing_alpha / denom);
      for (const auto& g : vocab[size_t(n)]) {
        auto it = m.ngram_counts[ci].find(g);
        int64_t c = it == m.ngram_counts[ci].end() ? 0 : it->second;
        m.ngram_log_probs[ci][g] = std::log((double(c) + m.smoothing_alpha) / denom);
      }
    }
  }
}

} // namespace detail_langid

inline LangIdModel train_langid(const std::vector<std::pair<std::string, std::string>>& labeled,
                                double alpha = 0.5) {
  if (labeled.empty()) throw PreconditionError("train_langid: no training examples");
  LangIdModel m;
  m.smoothing_alpha = alpha;
  std::set<std::string> classes;
  for (const auto& [text, lang] : labeled) classes.insert(lang);
  m.classes.assign(classes.begin(), classes.end());
  m.ngram_counts.assign(m.classes.size(), {});

  std::vector<int64_t> examples_per_class(m.classes.size(), 0);
  for (const auto& [text, lang] : labeled) {
    size_t ci = m.class_index(lang);
    ++examples_per_class[ci];
    for (auto& g : extract_char_ngrams(text)) ++m.ngram_counts[ci][g];
  }
  for (size_t ci = 0; ci < m.classes.size(); ++ci)
    if (examples_per_class[ci] == 0)
      throw PreconditionError("train_langid: class with zero examples: " + m.classes[ci]);

  detail_langid::rebuild_log_probs(m);
  return m;
}

struct LangIdResult {
  std::string lang;
  double confidence = 0.0;           // posterior of the top class
  std::vector<double> posterior;     // aligned with model.classes
};

// Argmax posterior with lexicographic tie-break on the class code.
// Uniform class prior; confidence is uncalibrated.
inline LangIdResult identify_language(const LangIdModel& model, std::string_view text) {
  bool all_ws = true;
  for (char c : text)
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
      all_ws = false;
      break;
    }
  if (text.empty() || all_ws)
    throw PreconditionError("identify_language: empty or whitespace-only text");
  if (model.classes.empty()) throw PreconditionError("identify_language: model has no classes");

  auto grams = extract_char_ngrams(text);
  std::vector<double> loglik(model.classes.size(), 0.0);
  for (size_t ci = 0; ci < model.classes.size(); ++ci) {
    const auto& lp = model.ngram_log_probs[ci];
    for (const auto& g : grams) {
      auto it = lp.find(g);
      loglik[ci] += it != lp.end()
                        ? it->second
                        : model.unseen_log_prob[ci][size_t(detail_langid::gram_order(g))];
    }
  }

  double mx = *std::max_element(loglik.begin(), loglik.end());
  double z = 0.0;
  LangIdResult r;
  r.posterior.resize(loglik.size());
  for (size_t ci = 0; ci < loglik.size(); ++ci) {
    r.posterior[ci] = std::exp(loglik[ci] - mx);
    z += r.posterior[ci];
  }
  for (double& p : r.posterior) p /= z;
  // classes are sorted, so strict > resolves ties to the smallest code
  size_t best = 0;
  for (size_t ci = 1; ci < r.posterior.size(); ++ci)
    if (r.posterior[ci] > r.posterior[best]) best = ci;
  r.lang = model.classes[best];
  r.confidence = r.posterior[best];
  return r;
}

namespace detail_langid {

inline std::string escape_gram(const std::string& g) {
  std::string out;
  for (unsigned char c : g) {
    if (c == '\\')
      out += "\\\\";
    else if (c == '\n')
      out += "\\n";
    else if (c == '\t')
      out += "\\t";
    else if (c == '\r')
      out += "\\r";
    else if (c == ' ')
      out += "\\s";
    else if (c < 0x20 || c == 0x7F) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\x%02X", c);
      out += buf;
    } else {
      out += char(c);
    }
  }
  return out;
}

inline std::string unescape_gram(std::string_view s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (i + 1 >= s.size()) throw IoError("langid model: dangling escape");
    char c = s[++i];
    switch (c) {
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case 's': out += ' '; break;
      case 'x': {
        if (i + 2 >= s.size()) throw IoError("langid model: bad \\x escape");
        out += char(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
        i += 2;
        break;
      }
      default: throw IoError("langid model: unknown escape");
    }
  }
  return out;
}

} // namespace detail_langid

// Versioned text artifact: header, class list, then one (class, gram, count)
// line per observed n-gram.
inline void save_langid_model(const LangIdModel& m, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for write: " + path);
  f << "norllm-langid v1 alpha=" << m.smoothing_alpha << "\n";
  f << "classes";
  for (const auto& c : m.classes) f << ' ' << c;
  f << "\n";
  for (size_t ci = 0; ci < m.classes.size(); ++ci)
    for (const auto& [g, c] : m.ngram_counts[ci])
      f << m.classes[ci] << ' ' << detail_langid::escape_gram(g) << ' ' << c << "\n";
  if (!f) throw IoError("write failed: " + path);
}

inline LangIdModel load_langid_model(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(f, line) || line.rfind("norllm-langid v1 alpha=", 0) != 0)
    throw IoError("langid model: bad header in " + path);
  LangIdModel m;
  m.smoothing_alpha = std::stod(line.substr(std::string("norllm-langid v1 alpha=").size()));
  if (!std::getline(f, line) || line.rfind("classes", 0) != 0)
    throw IoError("langid model: missing class list in " + path);
  {
    std::istringstream ss(line.substr(7));
    std::string c;
    while (ss >> c) m.classes.push_back(c);
  }
  if (m.classes.empty()) throw IoError("langid model: empty class list");
  m.ngram_counts.assign(m.classes.size(), {});
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cls, gram;
    int64_t count;
    if (!(ss >> cls >> gram >> count)) throw IoError("langid model: bad line: " + line);
    m.ngram_counts[m.class_index(cls)][detail_langid::unescape_gram(gram)] += count;
  }
  detail_langid::rebuild_log_probs(m);
  return m;
}

} // namespace norllm::preprocess
