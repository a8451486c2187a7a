#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <random>

#include "fixtures.hpp"
#include "norllm/bpe.hpp"
#include "norllm/corpus.hpp"

using namespace norllm;
using namespace norllm::corpus;

static Document make_doc(std::string id, std::string text, SourceClass cls = SourceClass::Other,
                         std::string lang = "nb") {
  Document d;
  d.id = std::move(id);
  d.text = std::move(text);
  d.source = {"test", cls};
  d.lang = std::move(lang);
  return d;
}

TEST_CASE("register_source basics") {
  CorpusManifest m;
  m.version_tag = "V1";
  m = register_source(m, {"NRK", SourceClass::IndustryPartner});
  CHECK(m.sources.size() == 1);
  m = register_source(m, {"NRK", SourceClass::IndustryPartner});
  CHECK(m.sources.size() == 1);
  CHECK_THROWS_AS(register_source(m, {"NRK", SourceClass::CommonCrawl}), ValidationError);
  CHECK_THROWS_AS(register_source(m, {"", SourceClass::Other}), PreconditionError);
}

TEST_CASE("shard paths are unique") {
  CorpusManifest m;
  add_shard(m, "shards/a.jsonl");
  CHECK_THROWS_AS(add_shard(m, "shards/a.jsonl"), ValidationError);
}

TEST_CASE("corpus_stats on empty corpus is all zeros") {
  auto vocab = bpe::make_byte_vocab({});
  auto stats = corpus_stats(std::vector<Document>{}, vocab);
  CHECK(stats.total_tokens() == 0);
  CHECK(stats.doc_count == 0);
  CHECK(stats.byte_count == 0);
  CHECK(stats.tokens_by_lang.empty());
}

TEST_CASE("corpus_stats equals the sum of per-document encodings") {
  auto vocab = bpe::train_bpe(std::vector<std::string>{"aaab aaab aaab bbbb"}, 262, {});
  std::vector<Document> docs = {
      make_doc("d1", "aaab aaab", SourceClass::NationalLibrary, "nb"),
      make_doc("d2", "bbbb", SourceClass::NationalLibrary, "nn"),
      make_doc("d3", "ny tekst her", SourceClass::CommonCrawl, "nb"),
  };
  int64_t expected = 0;
  for (const auto& d : docs) expected += int64_t(bpe::encode(vocab, d.text).size());
  auto stats = corpus_stats(docs, vocab);
  CHECK(stats.total_tokens() == expected);
  CHECK(stats.doc_count == 3);
  int64_t by_lang = 0;
  for (auto& [k, v] : stats.tokens_by_lang) by_lang += v;
  CHECK(by_lang == expected);
}

TEST_CASE("corpus_stats names the document missing lang") {
  auto vocab = bpe::make_byte_vocab({});
  std::vector<Document> docs = {make_doc("ok", "abc")};
  docs.push_back(make_doc("nolang", "x"));
  docs[1].lang.reset();
  try {
    corpus_stats(docs, vocab);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("nolang") != std::string::npos);
  }
}

TEST_CASE("stats additivity over disjoint shards", "[property]") {
  auto vocab = bpe::make_byte_vocab({});
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 20; ++iter) {
    std::vector<Document> a, b;
    for (int i = 0; i < 8; ++i) {
      std::string text;
      for (size_t k = 0; k < 1 + rng() % 30; ++k) text += char('a' + rng() % 26);
      auto cls = SourceClass(rng() % 4);
      auto lang = std::vector<std::string>{"nb", "nn", "da", "en"}[rng() % 4];
      auto d = make_doc("d" + std::to_string(iter) + "_" + std::to_string(i), text, cls, lang);
      (rng() % 2 ? a : b).push_back(d);
    }
    auto sa = corpus_stats(a, vocab);
    auto sb = corpus_stats(b, vocab);
    std::vector<Document> both = a;
    both.insert(both.end(), b.begin(), b.end());
    auto sboth = corpus_stats(both, vocab);
    auto merged = sa + sb;
    CHECK(merged.tokens_by_source_class == sboth.tokens_by_source_class);
    CHECK(merged.tokens_by_lang == sboth.tokens_by_lang);
    CHECK(merged.doc_count == sboth.doc_count);
    CHECK(merged.byte_count == sboth.byte_count);
  }
}

TEST_CASE("source-class and language partitions agree on fixture stats") {
  for (const auto& s : {fixtures::stats_v1(), fixtures::stats_v2(), fixtures::stats_v3()}) {
    int64_t by_lang = 0;
    for (auto& [k, v] : s.tokens_by_lang) by_lang += v;
    CHECK(s.total_tokens() == by_lang);
  }
}

TEST_CASE("corpus version fixtures reproduce the published totals") {
  CHECK(fixtures::stats_v1().total_tokens() == 25'000'000'000);
  // published totals for the later versions carry rounding; gap stays under 0.6%
  double v2_gap = std::abs(double(fixtures::stats_v2().total_tokens()) - 51.15e9) / 51.15e9;
  double v3_gap = std::abs(double(fixtures::stats_v3().total_tokens()) - 88.45e9) / 88.45e9;
  CHECK(v2_gap < 0.006);
  CHECK(v3_gap < 0.006);
}

TEST_CASE("compare_versions identity is all zeros") {
  auto s = fixtures::stats_v1();
  auto d = compare_versions(s, s);
  for (auto& [k, e] : d.by_source_class) {
    CHECK(e.tokens == 0);
    CHECK(e.share_points == 0.0);
  }
  for (auto& [k, e] : d.by_lang) {
    CHECK(e.tokens == 0);
    CHECK(e.share_points == 0.0);
  }
}

TEST_CASE("nynorsk share rises by 4.093 points between fixture versions") {
  auto d = compare_versions(fixtures::stats_v1(), fixtures::stats_v3());
  CHECK(d.by_lang.at("nn").share_points == Catch::Approx(4.093).margin(5e-4));
  CHECK(d.by_lang.at("sme").share_points == Catch::Approx(0.155).margin(5e-4));
}

TEST_CASE("hand-computed share delta on synthetic corpora") {
  CorpusStats a, b;
  a.tokens_by_lang = {{"nn", 10}, {"nb", 990}};
  a.tokens_by_source_class = {{SourceClass::Other, 1000}};
  b.tokens_by_lang = {{"nn", 50}, {"nb", 950}};
  b.tokens_by_source_class = {{SourceClass::Other, 1000}};
  CHECK(lang_share(a, "nn") == Catch::Approx(1.0));
  CHECK(lang_share(b, "nn") == Catch::Approx(5.0));
  auto d = compare_versions(a, b);
  CHECK(d.by_lang.at("nn").share_points == Catch::Approx(4.0));
  CHECK(d.by_lang.at("nn").tokens == 40);
}

TEST_CASE("documents round-trip through JSON Lines") {
  std::vector<Document> docs;
  auto d = make_doc("a1", "Hei verden", SourceClass::NationalLibrary, "nb");
  d.timestamp = "2024-01-01T00:00:00Z";
  d.meta["origin"] = "unit-test";
  docs.push_back(d);
  auto d2 = make_doc("a2", "uten språk");
  d2.lang.reset();
  docs.push_back(d2);

  std::string path = "docs_roundtrip.jsonl";
  write_documents(path, docs);
  auto loaded = read_documents(path);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].id == "a1");
  CHECK(loaded[0].text == "Hei verden");
  CHECK(loaded[0].source.source_class == SourceClass::NationalLibrary);
  CHECK(loaded[0].lang == "nb");
  CHECK(loaded[0].timestamp == "2024-01-01T00:00:00Z");
  CHECK(loaded[0].meta.at("origin") == "unit-test");
  CHECK_FALSE(loaded[1].lang.has_value());
  std::remove(path.c_str());
}

TEST_CASE("duplicate document ids are rejected on read") {
  std::string path = "dup_ids.jsonl";
  write_documents(path, {make_doc("same", "a"), make_doc("same", "b")});
  CHECK_THROWS_AS(read_documents(path), ValidationError);
  std::remove(path.c_str());
}

TEST_CASE("document parsing rejects unsupported languages and empty ids") {
  CHECK_THROWS_AS(document_from_json(nlohmann::json::parse(
                      R"({"id":"x","text":"t","source":"s","source_class":"Other","lang":"fr"})")),
                  ValidationError);
  CHECK_THROWS_AS(document_from_json(nlohmann::json::parse(
                      R"({"id":"","text":"t","source":"s","source_class":"Other"})")),
                  ValidationError);
}

TEST_CASE("stats CSV round-trips against the fixture files") {
  auto [version, stats] = stats_from_csv(fixtures::fixture_path("stats_v1.csv"));
  CHECK(version == "V1");
  CHECK(stats.tokens_by_source_class == fixtures::stats_v1().tokens_by_source_class);
  CHECK(stats.tokens_by_lang == fixtures::stats_v1().tokens_by_lang);
  CHECK(stats.doc_count == fixtures::stats_v1().doc_count);
  CHECK(stats.byte_count == fixtures::stats_v1().byte_count);

  auto rows = stats_to_csv_rows(stats, version);
  std::string rendered;
  for (const auto& r : rows) rendered += csv::make_row(r);
  CHECK(rendered == fixtures::read_file(fixtures::fixture_path("stats_v1.csv")));
}
