#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "norllm/corpus.hpp"
#include "norllm/errors.hpp"
#include "norllm/metrics.hpp"

namespace norllm::report {

// Half-away-from-zero decimal rounding, display rule only.
inline std::string format_decimal(double v, int places) {
  double scale = std::pow(10.0, places);
  long long scaled = std::llround(v * scale);
  long long unit = 1;
  for (int i = 0; i < places; ++i) unit *= 10;
  long long ip = scaled / unit;
  long long frac = scaled % unit;
  std::string s;
  if (scaled < 0 && ip == 0) s += '-';
  s += std::to_string(ip);
  if (places > 0) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%0*lld", places, frac < 0 ? -frac : frac);
    s += '.';
    s += buf;
  }
  return s;
}

struct ResultMatrix {
  std::vector<std::string> models;           // columns
  std::vector<std::string> metrics_or_tasks; // rows
  std::vector<std::vector<std::optional<double>>> values;  // [row][col]; nullopt = missing
  std::vector<metrics::Scale> row_scales;    // per row
  std::string row_axis_label = "Metrics/Models";

  void validate() const {
    if (values.size() != metrics_or_tasks.size())
      throw ValidationError("result matrix: row count mismatch");
    for (const auto& row : values)
      if (row.size() != models.size())
        throw ValidationError("result matrix: column count mismatch");
    if (!row_scales.empty() && row_scales.size() != metrics_or_tasks.size())
      throw ValidationError("result matrix: scale count mismatch");
  }
};

// Fixed-width text table, values rounded half-away-from-zero to 2 decimals,
// missing cells rendered as "-". Byte-deterministic.
inline std::string render_metric_table(const ResultMatrix& m) {
  m.validate();
  const std::string missing = "-";

  std::vector<std::vector<std::string>> cells(m.metrics_or_tasks.size());
  for (size_t i = 0; i < m.values.size(); ++i) {
    cells[i].reserve(m.models.size());
    for (const auto& v : m.values[i])
      cells[i].push_back(v.has_value() ? format_decimal(*v, 2) : missing);
  }

  size_t label_w = m.row_axis_label.size();
  for (const auto& name : m.metrics_or_tasks) label_w = std::max(label_w, name.size());
  std::vector<size_t> col_w(m.models.size());
  for (size_t j = 0; j < m.models.size(); ++j) {
    col_w[j] = m.models[j].size();
    for (size_t i = 0; i < cells.size(); ++i) col_w[j] = std::max(col_w[j], cells[i][j].size());
  }

  auto pad_left = [](const std::string& s, size_t w) {
    return std::string(w - s.size(), ' ') + s;
  };
  auto pad_right = [](const std::string& s, size_t w) {
    return s + std::string(w - s.size(), ' ');
  };

  std::string out;
  out += pad_right(m.row_axis_label, label_w);
  for (size_t j = 0; j < m.models.size(); ++j) {
    out += "  ";
    out += pad_left(m.models[j], col_w[j]);
  }
  out += '\n';
  for (size_t i = 0; i < m.metrics_or_tasks.size(); ++i) {
    out += pad_right(m.metrics_or_tasks[i], label_w);
    for (size_t j = 0; j < m.models.size(); ++j) {
      out += "  ";
      out += pad_left(cells[i][j], col_w[j]);
    }
    out += '\n';
  }
  return out;
}

// Per task the best of m models earns m-1 points down to 0; tied models share
// the mean of their positions' points. Higher score is better throughout.
inline std::map<std::string, double> borda_count(
    const std::map<std::string, std::map<std::string, double>>& scores_by_task) {
  if (scores_by_task.empty()) throw PreconditionError("borda_count: no tasks");

  std::vector<std::string> models;
  for (const auto& [task, model_scores] : scores_by_task)
    for (const auto& [model, score] : model_scores)
      if (std::find(models.begin(), models.end(), model) == models.end())
        models.push_back(model);
  if (models.size() < 2) throw PreconditionError("borda_count: need at least two models");

  std::map<std::string, double> points;
  for (const auto& model : models) points[model] = 0.0;

  for (const auto& [task, model_scores] : scores_by_task) {
    for (const auto& model : models)
      if (!model_scores.count(model))
        throw PreconditionError("borda_count: model '" + model + "' missing from task '" +
                                task + "'");
    std::vector<std::pair<double, std::string>> ranked;
    ranked.reserve(models.size());
    for (const auto& model : models) ranked.emplace_back(model_scores.at(model), model);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      return a.first > b.first || (a.first == b.first && a.second < b.second);
    });
    size_t m = ranked.size();
    size_t i = 0;
    while (i < m) {
      size_t j = i;
      while (j < m && ranked[j].first == ranked[i].first) ++j;
      // positions i..j-1 tie; mean of their points (m-1-pos)
      double mean = 0.0;
      for (size_t pos = i; pos < j; ++pos) mean += double(m - 1 - pos);
      mean /= double(j - i);
      for (size_t pos = i; pos < j; ++pos) points[ranked[pos].second] += mean;
      i = j;
    }
  }
  return points;
}

// Long-format series behind the corpus-statistics plots. Shares carry three
// decimals; the norwegian_lang dimension uses the nb+nn+sme portion as its
// denominator and appears only when that portion is nonzero.
inline std::vector<std::vector<std::string>> emit_stats_series(
    const std::vector<std::pair<std::string, corpus::CorpusStats>>& versions) {
  if (versions.empty()) throw PreconditionError("emit_stats_series: no stats");
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"version", "dimension", "key", "tokens", "share"});
  for (const auto& [version, stats] : versions) {
    for (const auto& [cls, tokens] : stats.tokens_by_source_class)
      rows.push_back({version, "source_class", std::string(corpus::to_string(cls)),
                      std::to_string(tokens),
                      format_decimal(corpus::source_class_share(stats, cls), 3)});
    int64_t total = stats.total_tokens();
    for (const auto& [lang, tokens] : stats.tokens_by_lang) {
      double share = total == 0 ? 0.0 : 100.0 * double(tokens) / double(total);
      rows.push_back({version, "lang", lang, std::to_string(tokens), format_decimal(share, 3)});
    }
    int64_t portion = stats.norwegian_portion();
    if (portion > 0) {
      for (const char* lang : {"nb", "nn", "sme"}) {
        auto it = stats.tokens_by_lang.find(lang);
        int64_t tokens = it == stats.tokens_by_lang.end() ? 0 : it->second;
        double share = 100.0 * double(tokens) / double(portion);
        rows.push_back(
            {version, "norwegian_lang", lang, std::to_string(tokens), format_decimal(share, 3)});
      }
    }
  }
  return rows;
}

} // namespace norllm::report
