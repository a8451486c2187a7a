#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "norllm/errors.hpp"

namespace norllm::metrics {

using Tokens = std::vector<std::string>;

enum class MetricName { BLEU, ROUGE1, ROUGEL, DISTN, MAUVE, ACC, F1 };
enum class Scale { Percent, Unit };

struct MetricValue {
  MetricName name;
  double value = 0.0;
  Scale scale = Scale::Percent;
};

inline std::string_view to_string(MetricName m) {
  switch (m) {
    case MetricName::BLEU: return "BLEU";
    case MetricName::ROUGE1: return "ROUGE-1";
    case MetricName::ROUGEL: return "ROUGE-L";
    case MetricName::DISTN: return "Dist-n";
    case MetricName::MAUVE: return "MAUVE";
    case MetricName::ACC: return "Accuracy";
    case MetricName::F1: return "F1";
  }
  return "?";
}

// Default tokenization for the text metrics: whitespace split.
inline Tokens whitespace_tokens(std::string_view text) {
  Tokens out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r'))
      ++i;
    size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\n' &&
           text[i] != '\r')
      ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

namespace detail_metrics {

inline std::map<std::vector<std::string>, int64_t> ngram_counts(const Tokens& toks, size_t n) {
  std::map<std::vector<std::string>, int64_t> counts;
  if (toks.size() < n) return counts;
  for (size_t i = 0; i + n <= toks.size(); ++i)
    ++counts[std::vector<std::string>(toks.begin() + ptrdiff_t(i),
                                      toks.begin() + ptrdiff_t(i + n))];
  return counts;
}

} // namespace detail_metrics

// Corpus-style BLEU on a single pair: geometric mean of clipped n-gram
// precisions times the brevity penalty exp(min(0, 1 - r/c)). When any
// precision is zero, precisions for n >= 2 get add-1 smoothing on both
// numerator and denominator.
inline MetricValue bleu(const Tokens& candidate, const std::vector<Tokens>& references,
                        size_t max_n = 4) {
  if (max_n < 1) throw PreconditionError("bleu: max_n must be >= 1");
  if (references.empty()) throw PreconditionError("bleu: empty reference list");
  if (candidate.empty()) return {MetricName::BLEU, 0.0, Scale::Percent};

  std::vector<int64_t> matched(max_n + 1, 0), total(max_n + 1, 0);
  for (size_t n = 1; n <= max_n; ++n) {
    auto cand = detail_metrics::ngram_counts(candidate, n);
    std::map<std::vector<std::string>, int64_t> best_ref;
    for (const auto& ref : references)
      for (const auto& [gram, c] : detail_metrics::ngram_counts(ref, n))
        best_ref[gram] = std::max(best_ref[gram], c);
    for (const auto& [gram, c] : cand) {
      total[n] += c;
      auto it = best_ref.find(gram);
      if (it != best_ref.end()) matched[n] += std::min(c, it->second);
    }
  }

  bool any_zero = false;
  for (size_t n = 1; n <= max_n; ++n)
    if (total[n] == 0 || matched[n] == 0) any_zero = true;

  double log_sum = 0.0;
  for (size_t n = 1; n <= max_n; ++n) {
    double num = double(matched[n]);
    double den = double(total[n]);
    if (any_zero && n >= 2) {
      num += 1.0;
      den += 1.0;
    }
    if (num == 0.0 || den == 0.0) return {MetricName::BLEU, 0.0, Scale::Percent};
    log_sum += std::log(num / den);
  }
  double geo = std::exp(log_sum / double(max_n));

  // closest reference length (ties toward the shorter) as r
  size_t c = candidate.size();
  size_t r = references[0].size();
  for (const auto& ref : references) {
    size_t d_new = ref.size() > c ? ref.size() - c : c - ref.size();
    size_t d_old = r > c ? r - c : c - r;
    if (d_new < d_old || (d_new == d_old && ref.size() < r)) r = ref.size();
  }
  double bp = c >= r ? 1.0 : std::exp(1.0 - double(r) / double(c));
  return {MetricName::BLEU, 100.0 * geo * bp, Scale::Percent};
}

struct PrecisionRecallF {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;  // harmonic mean (beta = 1)
};

inline PrecisionRecallF rouge_n(const Tokens& candidate, const Tokens& reference, size_t n) {
  if (n < 1) throw PreconditionError("rouge_n: n must be >= 1");
  auto cand = detail_metrics::ngram_counts(candidate, n);
  auto ref = detail_metrics::ngram_counts(reference, n);
  int64_t overlap = 0, cand_total = 0, ref_total = 0;
  for (const auto& [g, c] : cand) {
    cand_total += c;
    auto it = ref.find(g);
    if (it != ref.end()) overlap += std::min(c, it->second);
  }
  for (const auto& [g, c] : ref) ref_total += c;

  PrecisionRecallF r;
  r.precision = cand_total == 0 ? 0.0 : 100.0 * double(overlap) / double(cand_total);
  r.recall = ref_total == 0 ? 0.0 : 100.0 * double(overlap) / double(ref_total);
  r.f = (r.precision + r.recall) == 0.0 ? 0.0
                                        : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

inline PrecisionRecallF rouge_l(const Tokens& candidate, const Tokens& reference) {
  size_t n = candidate.size(), m = reference.size();
  PrecisionRecallF r;
  if (n == 0 || m == 0) return r;
  std::vector<std::vector<int64_t>> dp(n + 1, std::vector<int64_t>(m + 1, 0));
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 1; j <= m; ++j)
      dp[i][j] = candidate[i - 1] == reference[j - 1] ? dp[i - 1][j - 1] + 1
                                                      : std::max(dp[i - 1][j], dp[i][j - 1]);
  double lcs = double(dp[n][m]);
  r.precision = 100.0 * lcs / double(n);
  r.recall = 100.0 * lcs / double(m);
  r.f = (r.precision + r.recall) == 0.0 ? 0.0
                                        : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

// Distinct n-gram rate over a whole corpus of outputs; texts shorter than n
// contribute no n-grams.
inline MetricValue dist_n(const std::vector<Tokens>& texts, size_t n) {
  if (n < 1) throw PreconditionError("dist_n: n must be >= 1");
  std::set<std::vector<std::string>> unique;
  int64_t total = 0;
  for (const auto& toks : texts) {
    if (toks.size() < n) continue;
    for (size_t i = 0; i + n <= toks.size(); ++i) {
      std::vector<std::string> gram(toks.begin() + ptrdiff_t(i), toks.begin() + ptrdiff_t(i + n));
      unique.insert(std::move(gram));
      ++total;
    }
  }
  if (total == 0) throw PreconditionError("dist_n: no n-grams in corpus");
  return {MetricName::DISTN, 100.0 * double(unique.size()) / double(total), Scale::Percent};
}

struct ClassificationReport {
  double accuracy = 0.0;  // percent
  double macro_f1 = 0.0;  // percent
  std::map<std::string, double> per_class_f1;
};

// Accuracy plus unweighted macro F1; classes absent from preds and golds both
// are excluded.
inline ClassificationReport classification_metrics(const std::vector<std::string>& preds,
                                                   const std::vector<std::string>& golds) {
  if (preds.size() != golds.size())
    throw PreconditionError("classification_metrics: length mismatch");
  if (preds.empty()) throw PreconditionError("classification_metrics: empty input");

  std::set<std::string> classes(preds.begin(), preds.end());
  classes.insert(golds.begin(), golds.end());

  int64_t correct = 0;
  for (size_t i = 0; i < preds.size(); ++i)
    if (preds[i] == golds[i]) ++correct;

  ClassificationReport rep;
  rep.accuracy = 100.0 * double(correct) / double(preds.size());
  double f1_sum = 0.0;
  for (const auto& cls : classes) {
    int64_t tp = 0, fp = 0, fn = 0;
    for (size_t i = 0; i < preds.size(); ++i) {
      bool p = preds[i] == cls, g = golds[i] == cls;
      tp += p && g;
      fp += p && !g;
      fn += !p && g;
    }
    double f1 = (2 * tp + fp + fn) == 0 ? 0.0 : 100.0 * 2.0 * double(tp) / double(2 * tp + fp + fn);
    rep.per_class_f1[cls] = f1;
    f1_sum += f1;
  }
  rep.macro_f1 = f1_sum / double(classes.size());
  return rep;
}

} // namespace norllm::metrics
