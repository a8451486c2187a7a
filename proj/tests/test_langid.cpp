#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include "fixtures.hpp"
#include "norllm/langid.hpp"
#include "norllm/preprocess.hpp"

using namespace norllm;
using preprocess::identify_language;
using preprocess::train_langid;

TEST_CASE("single-class model classifies everything to that class") {
  auto m = train_langid({{"hei på deg", "nb"}, {"god morgen", "nb"}});
  auto r = identify_language(m, "noe helt annet");
  CHECK(r.lang == "nb");
  CHECK(r.confidence == Catch::Approx(1.0));
}

TEST_CASE("disjoint alphabets separate with confidence above 0.99") {
  std::vector<std::pair<std::string, std::string>> labeled = {
      {"abab baba abba", "aa"}, {"aabb bbaa", "aa"}, {"xyxy yxyx xxyy", "xx"}, {"yyxx xyyx", "xx"}};
  auto m = train_langid(labeled);
  for (const auto& [text, lang] : labeled) {
    auto r = identify_language(m, text);
    CHECK(r.lang == lang);
    CHECK(r.confidence > 0.99);
  }
}

TEST_CASE("training sentences classify to their own label") {
  auto split = fixtures::load_langid_split({"nb", "en"});
  auto m = train_langid(split.train);
  for (size_t i = 0; i < split.train.size(); i += 7) {
    auto r = identify_language(m, split.train[i].first);
    CHECK(r.lang == split.train[i].second);
  }
}

TEST_CASE("english sentence against en/nb model") {
  auto split = fixtures::load_langid_split({"nb", "en"});
  auto m = train_langid(split.train);
  CHECK(identify_language(m, "The quick brown fox jumps over the lazy dog").lang == "en");
}

TEST_CASE("posterior sums to one and argmax survives text repetition") {
  auto split = fixtures::load_langid_split({"nb", "en", "de"});
  auto m = train_langid(split.train);
  std::string text = "katten sover på kjøkkenet hele dagen";
  auto r1 = identify_language(m, text);
  double sum = 0.0;
  for (double p : r1.posterior) sum += p;
  CHECK(sum == Catch::Approx(1.0).margin(1e-9));
  std::string repeated;
  for (int k = 0; k < 5; ++k) repeated += text + " ";
  CHECK(identify_language(m, repeated).lang == r1.lang);
}

TEST_CASE("empty or whitespace-only text is rejected") {
  auto m = train_langid({{"abc", "aa"}, {"xyz", "xx"}});
  CHECK_THROWS_AS(identify_language(m, ""), PreconditionError);
  CHECK_THROWS_AS(identify_language(m, "  \t\n"), PreconditionError);
}

TEST_CASE("class with zero examples is rejected") {
  CHECK_THROWS_AS(train_langid({}), PreconditionError);
}

TEST_CASE("training is order-insensitive") {
  std::vector<std::pair<std::string, std::string>> labeled = {
      {"hei på deg", "nb"}, {"hello there", "en"}, {"god kveld alle", "nb"}, {"good day", "en"}};
  auto m1 = train_langid(labeled);
  std::reverse(labeled.begin(), labeled.end());
  auto m2 = train_langid(labeled);
  auto r1 = identify_language(m1, "hei there");
  auto r2 = identify_language(m2, "hei there");
  CHECK(r1.lang == r2.lang);
  CHECK(r1.confidence == Catch::Approx(r2.confidence).margin(1e-12));
}

TEST_CASE("smoothing mass completes each per-order distribution") {
  auto m = train_langid({{"abc abc", "aa"}, {"xyz xyz", "xx"}});
  for (size_t ci = 0; ci < m.classes.size(); ++ci) {
    std::array<double, preprocess::kLangIdMaxN + 1> sums{};
    for (const auto& [gram, lp] : m.ngram_log_probs[ci])
      sums[size_t(utf8::count_scalars(gram))] += std::exp(lp);
    for (int n = preprocess::kLangIdMinN; n <= preprocess::kLangIdMaxN; ++n) {
      double total = sums[size_t(n)] + std::exp(m.unseen_log_prob[ci][size_t(n)]);
      CHECK(total == Catch::Approx(1.0).margin(1e-9));
    }
  }
}

TEST_CASE("model artifact round-trips through save/load") {
  auto split = fixtures::load_langid_split({"nb", "sv"});
  auto m = train_langid(split.train);
  std::string path = "langid_roundtrip.model";
  preprocess::save_langid_model(m, path);
  auto loaded = preprocess::load_langid_model(path);
  REQUIRE(loaded.classes == m.classes);
  CHECK(loaded.smoothing_alpha == m.smoothing_alpha);
  for (const auto& [text, lang] : split.held_out) {
    auto a = identify_language(m, text);
    auto b = identify_language(loaded, text);
    CHECK(a.lang == b.lang);
    CHECK(a.confidence == Catch::Approx(b.confidence).margin(1e-12));
  }
  std::remove(path.c_str());
}
