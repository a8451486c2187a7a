#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "norllm/csv.hpp"
#include "norllm/errors.hpp"

namespace norllm::corpus {

// Order fixed to the source-class column order of the corpus overview.
enum class SourceClass { NationalLibrary, IndustryPartner, CommonCrawl, Other };

inline constexpr std::array<std::string_view, 4> kSourceClassNames = {
    "NationalLibrary", "IndustryPartner", "CommonCrawl", "Other"};

inline std::string_view to_string(SourceClass c) { return kSourceClassNames[size_t(c)]; }

inline SourceClass source_class_from_string(std::string_view s) {
  for (size_t i = 0; i < kSourceClassNames.size(); ++i)
    if (kSourceClassNames[i] == s) return SourceClass(i);
  throw ValidationError("unknown source_class: " + std::string(s));
}

inline constexpr std::array<std::string_view, 7> kSupportedLangs = {"da", "de", "en",
                                                                    "nb", "nn", "sme", "sv"};

inline bool is_supported_lang(std::string_view lang) {
  for (auto l : kSupportedLangs)
    if (l == lang) return true;
  return false;
}

// nb + nn + sme: the denominator for Norwegian-portion language shares
inline bool is_norwegian_lang(std::string_view lang) {
  return lang == "nb" || lang == "nn" || lang == "sme";
}

struct SourceId {
  std::string name;
  SourceClass source_class = SourceClass::Other;

  friend bool operator==(const SourceId&, const SourceId&) = default;
};

struct Document {
  std::string id;
  std::string text;
  SourceId source;
  std::optional<std::string> lang;
  std::optional<std::string> timestamp;  // ISO-8601, opaque here
  std::map<std::string, std::string> meta;
};

struct CorpusManifest {
  std::string version_tag;
  std::vector<SourceId> sources;
  std::vector<std::string> shard_paths;
  std::optional<std::string> tokenizer_ref;
};

// Idempotent; re-registering an existing name with a different class is rejected.
inline CorpusManifest register_source(CorpusManifest manifest, const SourceId& src) {
  if (src.name.empty()) throw PreconditionError("register_source: empty source name");
  for (const auto& existing : manifest.sources) {
    if (existing.name != src.name) continue;
    if (existing.source_class != src.source_class)
      throw ValidationError("register_source: source '" + src.name +
                            "' already registered with class " +
                            std::string(to_string(existing.source_class)));
    return manifest;
  }
  manifest.sources.push_back(src);
  return manifest;
}

inline void add_shard(CorpusManifest& manifest, const std::string& path) {
  for (const auto& p : manifest.shard_paths)
    if (p == path) throw ValidationError("add_shard: shard listed twice: " + path);
  manifest.shard_paths.push_back(path);
}

struct CorpusStats {
  std::map<SourceClass, int64_t> tokens_by_source_class;
  std::map<std::string, int64_t> tokens_by_lang;
  int64_t doc_count = 0;
  int64_t byte_count = 0;

  int64_t total_tokens() const {
    int64_t t = 0;
    for (auto& [k, v] : tokens_by_source_class) t += v;
    return t;
  }

  int64_t norwegian_portion() const {
    int64_t t = 0;
    for (auto& [lang, v] : tokens_by_lang)
      if (is_norwegian_lang(lang)) t += v;
    return t;
  }

  // associative merge; shard-parallel aggregation reduces with this
  CorpusStats& operator+=(const CorpusStats& o) {
    for (auto& [k, v] : o.tokens_by_source_class) tokens_by_source_class[k] += v;
    for (auto& [k, v] : o.tokens_by_lang) tokens_by_lang[k] += v;
    doc_count += o.doc_count;
    byte_count += o.byte_count;
    return *this;
  }
  friend CorpusStats operator+(CorpusStats a, const CorpusStats& b) { return a += b; }
};

// Token counts always take an explicit vocab; Vocab must expose an ADL-visible
// encode(vocab, text) returning a token-id sequence.
template <class Vocab>
CorpusStats corpus_stats(const std::vector<Document>& docs, const Vocab& vocab) {
  CorpusStats stats;
  for (const auto& doc : docs) {
    if (!doc.lang.has_value())
      throw PreconditionError("corpus_stats: document missing lang: " + doc.id);
    int64_t tokens = int64_t(encode(vocab, doc.text).size());
    stats.tokens_by_source_class[doc.source.source_class] += tokens;
    stats.tokens_by_lang[*doc.lang] += tokens;
    stats.doc_count += 1;
    stats.byte_count += int64_t(doc.text.size());
  }
  return stats;
}

// Share conventions: source classes over total tokens; nb/nn/sme over the
// Norwegian portion; remaining languages over total tokens. Percent units.
inline double source_class_share(const CorpusStats& s, SourceClass c) {
  int64_t total = s.total_tokens();
  if (total == 0) return 0.0;
  auto it = s.tokens_by_source_class.find(c);
  int64_t v = it == s.tokens_by_source_class.end() ? 0 : it->second;
  return 100.0 * double(v) / double(total);
}

inline double lang_share(const CorpusStats& s, const std::string& lang) {
  int64_t denom = is_norwegian_lang(lang) ? s.norwegian_portion() : s.total_tokens();
  if (denom == 0) return 0.0;
  auto it = s.tokens_by_lang.find(lang);
  int64_t v = it == s.tokens_by_lang.end() ? 0 : it->second;
  return 100.0 * double(v) / double(denom);
}

struct StatsDelta {
  struct Entry {
    int64_t tokens = 0;        // absolute token delta (b - a)
    double share_points = 0.0; // percentage-point share delta
  };
  std::map<SourceClass, Entry> by_source_class;
  std::map<std::string, Entry> by_lang;
};

inline StatsDelta compare_versions(const CorpusStats& a, const CorpusStats& b) {
  StatsDelta d;
  for (auto& s : {std::cref(a), std::cref(b)}) {
    for (auto& [k, v] : s.get().tokens_by_source_class) d.by_source_class[k];
    for (auto& [k, v] : s.get().tokens_by_lang) d.by_lang[k];
  }
  auto at = [](const auto& m, const auto& k) -> int64_t {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  };
  for (auto& [k, e] : d.by_source_class) {
    e.tokens = at(b.tokens_by_source_class, k) - at(a.tokens_by_source_class, k);
    e.share_points = source_class_share(b, k) - source_class_share(a, k);
  }
  for (auto& [k, e] : d.by_lang) {
    e.tokens = at(b.tokens_by_lang, k) - at(a.tokens_by_lang, k);
    e.share_points = lang_share(b, k) - lang_share(a, k);
  }
  return d;
}

// ---- JSON Lines document store ----
// One object per line; fields exactly: id, text, source, source_class,
// lang (nullable), timestamp (nullable), meta (object).

inline nlohmann::json to_json(const Document& d) {
  nlohmann::json j;
  j["id"] = d.id;
  j["text"] = d.text;
  j["source"] = d.source.name;
  j["source_class"] = std::string(to_string(d.source.source_class));
  j["lang"] = d.lang.has_value() ? nlohmann::json(*d.lang) : nlohmann::json(nullptr);
  j["timestamp"] =
      d.timestamp.has_value() ? nlohmann::json(*d.timestamp) : nlohmann::json(nullptr);
  j["meta"] = nlohmann::json::object();
  for (auto& [k, v] : d.meta) j["meta"][k] = v;
  return j;
}

inline Document document_from_json(const nlohmann::json& j) {
  Document d;
  d.id = j.at("id").get<std::string>();
  if (d.id.empty()) throw ValidationError("document with empty id");
  d.text = j.at("text").get<std::string>();
  d.source.name = j.at("source").get<std::string>();
  d.source.source_class = source_class_from_string(j.at("source_class").get<std::string>());
  if (j.contains("lang") && !j.at("lang").is_null()) {
    d.lang = j.at("lang").get<std::string>();
    if (!is_supported_lang(*d.lang))
      throw ValidationError("document " + d.id + ": unsupported lang '" + *d.lang + "'");
  }
  if (j.contains("timestamp") && !j.at("timestamp").is_null())
    d.timestamp = j.at("timestamp").get<std::string>();
  if (j.contains("meta") && j.at("meta").is_object())
    for (auto& [k, v] : j.at("meta").items()) d.meta[k] = v.get<std::string>();
  return d;
}

inline void for_each_document(const std::string& path,
                              const std::function<void(Document&&)>& fn) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::string line;
  size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      fn(document_from_json(j));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

inline void ensure_unique_ids(const std::vector<Document>& docs) {
  std::set<std::string_view> seen;
  for (const auto& d : docs)
    if (!seen.insert(d.id).second) throw ValidationError("duplicate document id: " + d.id);
}

inline std::vector<Document> read_documents(const std::string& path) {
  std::vector<Document> docs;
  for_each_document(path, [&](Document&& d) { docs.push_back(std::move(d)); });
  ensure_unique_ids(docs);
  return docs;
}

inline void write_documents(const std::string& path, const std::vector<Document>& docs) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for write: " + path);
  for (const auto& d : docs) f << to_json(d).dump() << "\n";
  if (!f) throw IoError("write failed: " + path);
}

// ---- stats CSV ----
// Header: version,source_class_or_lang,kind,tokens
// kind is one of source_class | lang | docs | bytes; the docs/bytes rows use
// "total" as the key so every row fits the same four columns.

inline std::vector<std::vector<std::string>> stats_to_csv_rows(const CorpusStats& s,
                                                               const std::string& version) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"version", "source_class_or_lang", "kind", "tokens"});
  for (auto& [k, v] : s.tokens_by_source_class)
    rows.push_back({version, std::string(to_string(k)), "source_class", std::to_string(v)});
  for (auto& [k, v] : s.tokens_by_lang)
    rows.push_back({version, k, "lang", std::to_string(v)});
  rows.push_back({version, "total", "docs", std::to_string(s.doc_count)});
  rows.push_back({version, "total", "bytes", std::to_string(s.byte_count)});
  return rows;
}

inline std::pair<std::string, CorpusStats> stats_from_csv(const std::string& path) {
  auto rows = csv::read_file(path);
  if (rows.empty() || rows[0] != std::vector<std::string>{"version", "source_class_or_lang",
                                                          "kind", "tokens"})
    throw IoError("stats csv: bad header in " + path);
  CorpusStats s;
  std::string version;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 4) throw IoError("stats csv: bad row in " + path);
    if (version.empty()) version = r[0];
    int64_t v = std::stoll(r[3]);
    if (r[2] == "source_class")
      s.tokens_by_source_class[source_class_from_string(r[1])] += v;
    else if (r[2] == "lang")
      s.tokens_by_lang[r[1]] += v;
    else if (r[2] == "docs")
      s.doc_count += v;
    else if (r[2] == "bytes")
      s.byte_count += v;
    else
      throw IoError("stats csv: unknown kind '" + r[2] + "' in " + path);
  }
  return {version, s};
}

} // namespace norllm::corpus
