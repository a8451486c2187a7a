#pragma once

// Shared fixtures: corpus-version statistics and the published result tables
// used as rendering targets, plus loaders for the on-disk fixture files.

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "norllm/corpus.hpp"
#include "norllm/metrics.hpp"
#include "norllm/report.hpp"

#ifndef NORLLM_FIXTURE_DIR
#error "NORLLM_FIXTURE_DIR must be defined"
#endif
#ifndef NORLLM_GOLDEN_DIR
#error "NORLLM_GOLDEN_DIR must be defined"
#endif

namespace fixtures {

inline std::string fixture_path(const std::string& name) {
  return std::string(NORLLM_FIXTURE_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(NORLLM_GOLDEN_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("missing fixture: " + path);
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

using norllm::corpus::CorpusStats;
using norllm::corpus::SourceClass;

inline CorpusStats stats_v1() {
  CorpusStats s;
  s.tokens_by_source_class = {{SourceClass::NationalLibrary, 3'380'000'000},
                              {SourceClass::IndustryPartner, 1'080'000'000},
                              {SourceClass::CommonCrawl, 20'410'000'000},
                              {SourceClass::Other, 130'000'000}};
  s.tokens_by_lang = {{"da", 1'200'000'000}, {"de", 400'000'000},   {"en", 200'000'000},
                      {"nb", 21'752'720'000}, {"nn", 247'280'000},  {"sme", 0},
                      {"sv", 1'200'000'000}};
  s.doc_count = 21'400'000;
  s.byte_count = 100'000'000'000;
  return s;
}

inline CorpusStats stats_v2() {
  CorpusStats s;
  s.tokens_by_source_class = {{SourceClass::NationalLibrary, 9'450'000'000},
                              {SourceClass::IndustryPartner, 2'220'000'000},
                              {SourceClass::CommonCrawl, 36'000'000'000},
                              {SourceClass::Other, 3'330'000'000}};
  s.tokens_by_lang = {{"da", 2'000'000'000},  {"de", 600'000'000},  {"en", 400'000'000},
                      {"nb", 44'620'000'000}, {"nn", 1'334'000'000}, {"sme", 46'000'000},
                      {"sv", 2'000'000'000}};
  s.doc_count = 43'000'000;
  s.byte_count = 204'000'000'000;
  return s;
}

inline CorpusStats stats_v3() {
  CorpusStats s;
  s.tokens_by_source_class = {{SourceClass::NationalLibrary, 21'880'000'000},
                              {SourceClass::IndustryPartner, 5'760'000'000},
                              {SourceClass::CommonCrawl, 51'780'000'000},
                              {SourceClass::Other, 8'580'000'000}};
  s.tokens_by_lang = {{"da", 3'500'000'000},  {"de", 1'000'000'000}, {"en", 500'000'000},
                      {"nb", 75'702'400'000}, {"nn", 4'173'600'000}, {"sme", 124'000'000},
                      {"sv", 3'000'000'000}};
  s.doc_count = 74'000'000;
  s.byte_count = 352'000'000'000;
  return s;
}

inline norllm::report::ResultMatrix conversation_table() {
  norllm::report::ResultMatrix m;
  m.models = {"NorGPT-369M", "NorGPT-3B",   "NorLlama-3B", "NorGPT-3B-continue",
              "NorGPT-23B",  "NB-GPT-J-6B", "GPT-3.5"};
  m.metrics_or_tasks = {"BLEU", "ROUGE-1", "ROUGE-L", "Dist-4", "MAUVE"};
  auto row = [](std::initializer_list<double> vals) {
    std::vector<std::optional<double>> r;
    for (double v : vals) r.emplace_back(v);
    return r;
  };
  m.values = {row({3.37, 4.14, 3.82, 3.63, 4.28, 3.87, 2.14}),
              row({16.94, 17.09, 15.20, 16.47, 16.72, 17.05, 10.82}),
              row({16.21, 16.33, 14.53, 15.73, 15.95, 16.26, 9.96}),
              row({86.54, 84.68, 82.47, 86.33, 84.41, 85.83, 85.80}),
              row({0.56, 0.87, 0.61, 0.71, 0.64, 0.68, 0.72})};
  m.row_scales = {norllm::metrics::Scale::Percent, norllm::metrics::Scale::Percent,
                  norllm::metrics::Scale::Percent, norllm::metrics::Scale::Percent,
                  norllm::metrics::Scale::Unit};
  return m;
}

inline norllm::report::ResultMatrix summarization_table() {
  norllm::report::ResultMatrix m;
  m.models = {"NorGPT-369M", "NorGPT-3B",      "NorLlama-3B", "NorGPT-3B-continue",
              "NorGPT-23B",  "NorGPT-3B-RLHF", "NB-GPT-J-6B", "GPT-3.5"};
  m.metrics_or_tasks = {"BLEU", "ROUGE-1", "ROUGE-L", "Dist-4", "MAUVE"};
  auto row = [](std::initializer_list<double> vals) {
    std::vector<std::optional<double>> r;
    for (double v : vals) r.emplace_back(v);
    return r;
  };
  m.values = {row({2.38, 2.61, 0.68, 2.72, 1.90, 5.41, 4.35, 4.38}),
              row({20.97, 20.31, 12.32, 20.53, 22.44, 23.01, 25.64, 26.00}),
              row({19.68, 19.05, 11.56, 19.26, 21.13, 21.63, 24.25, 24.28}),
              row({95.32, 94.43, 92.62, 94.35, 97.66, 92.18, 96.41, 97.13}),
              row({0.57, 0.62, 0.75, 0.64, 0.50, 21.03, 0.65, 4.38})};
  m.row_scales = {norllm::metrics::Scale::Percent, norllm::metrics::Scale::Percent,
                  norllm::metrics::Scale::Percent, norllm::metrics::Scale::Percent,
                  norllm::metrics::Scale::Unit};
  return m;
}

inline norllm::report::ResultMatrix nlu_table() {
  norllm::report::ResultMatrix m;
  m.row_axis_label = "Datasets/Metrics";
  m.models = {"NorGPT-369M", "NorGPT-3B", "NorLlama-3B", "NorGPT-3B-continue", "NorGPT-23B",
              "NB-GPT-J-6B"};
  m.metrics_or_tasks = {"NO-BoolQ Accuracy", "NO-BoolQ F1", "NO-QNLI Accuracy",
                        "NO-QNLI F1",        "NO-MRPC Accuracy", "NO-MRPC F1"};
  auto row = [](std::initializer_list<double> vals) {
    std::vector<std::optional<double>> r;
    for (double v : vals) r.emplace_back(v);
    return r;
  };
  m.values = {row({58.6, 60.6, 56.2, 58.5, 63.2, 56.7}),
              row({47.8, 50.3, 49.0, 46.7, 52.5, 52.5}),
              row({75.8, 76.4, 61.7, 76.9, 79.7, 84.1}),
              row({75.7, 76.3, 61.7, 76.8, 79.7, 84.1}),
              row({71.0, 68.8, 66.8, 69.5, 73.7, 71.7}),
              row({54.5, 46.1, 52.0, 55.1, 64.4, 66.6})};
  m.row_scales.assign(6, norllm::metrics::Scale::Percent);
  return m;
}

// language-id sentence corpus: one sentence per line, held-out = every 4th
struct LangIdSplit {
  std::vector<std::pair<std::string, std::string>> train;  // (text, lang)
  std::vector<std::pair<std::string, std::string>> held_out;
};

inline LangIdSplit load_langid_split(const std::vector<std::string>& langs) {
  LangIdSplit split;
  for (const auto& lang : langs) {
    std::ifstream f(fixture_path("langid/" + lang + ".txt"), std::ios::binary);
    if (!f) throw std::runtime_error("missing langid fixture for " + lang);
    std::string line;
    size_t i = 0;
    while (std::getline(f, line)) {
      if (line.empty()) continue;
      if (i % 4 == 3)
        split.held_out.emplace_back(line, lang);
      else
        split.train.emplace_back(line, lang);
      ++i;
    }
  }
  return split;
}

} // namespace fixtures
