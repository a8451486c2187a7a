#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "norllm/dedup.hpp"
#include "norllm/preprocess.hpp"
#include "oracles.hpp"

using namespace norllm;
using namespace norllm::dedup;

static corpus::Document doc(std::string id, std::string text) {
  corpus::Document d;
  d.id = std::move(id);
  d.text = std::move(text);
  d.source = {"t", corpus::SourceClass::Other};
  d.lang = "nb";
  return d;
}

// random word text over a numbered vocabulary
static std::string random_text(std::mt19937_64& rng, size_t words, int vocab = 500) {
  std::string s;
  for (size_t i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += "w" + std::to_string(rng() % uint64_t(vocab));
  }
  return s;
}

TEST_CASE("exact_key is deterministic and collision-sensitive") {
  auto a = exact_key(doc("a", "Hei verden her"));
  auto b = exact_key(doc("b", "Hei verden her"));
  CHECK(a == b);
  auto c = exact_key(doc("c", "Hei verden hen"));
  CHECK_FALSE(a == c);
}

TEST_CASE("normalization-equal texts share a key") {
  auto n1 = preprocess::normalize_text("Hei   verden");
  auto n2 = preprocess::normalize_text("Hei \t verden");
  CHECK(exact_key(doc("a", n1)) == exact_key(doc("b", n2)));
}

TEST_CASE("minhash signatures are deterministic and self-similar") {
  MinHashParams p;
  auto s1 = minhash_signature(doc("a", "en to tre fire fem seks sju"), p);
  auto s2 = minhash_signature(doc("b", "en to tre fire fem seks sju"), p);
  CHECK(s1.minima == s2.minima);
  CHECK(estimate_jaccard(s1, s2) == 1.0);
}

TEST_CASE("estimate_jaccard rejects parameter mismatches") {
  MinHashParams p128;
  MinHashParams p64;
  p64.num_perms = 64;
  p64.lsh_bands = 8;
  auto a = minhash_signature(doc("a", "en to tre fire fem"), p128);
  auto b = minhash_signature(doc("b", "en to tre fire fem"), p64);
  CHECK_THROWS_AS(estimate_jaccard(a, b), PreconditionError);
}

TEST_CASE("params invariants are enforced") {
  MinHashParams p;
  p.num_perms = 120;  // 16*8 != 120
  CHECK_THROWS_AS(p.validate(), PreconditionError);
  p.num_perms = 8;
  p.lsh_bands = 2;
  p.rows_per_band = 4;
  CHECK_THROWS_AS(p.validate(), PreconditionError);
}

TEST_CASE("estimate tracks exact jaccard within 0.03 on average", "[property]") {
  MinHashParams p;
  std::mt19937_64 rng(1234);
  double total_err = 0.0;
  int n_pairs = 200;
  for (int i = 0; i < n_pairs; ++i) {
    // overlap comes from a shared word prefix
    size_t total = 40 + rng() % 60;
    size_t shared = rng() % total;
    std::string common = random_text(rng, shared, 5000);
    std::string ta = common + (shared ? " " : "") + random_text(rng, total - shared, 5000);
    std::string tb = common + (shared ? " " : "") + random_text(rng, total - shared, 5000);
    auto sa = minhash_signature(doc("a", ta), p);
    auto sb = minhash_signature(doc("b", tb), p);
    auto shingles_a = word_shingles(ta, p.shingle_n);
    auto shingles_b = word_shingles(tb, p.shingle_n);
    double exact =
        oracles::exact_jaccard(std::set<std::string>(shingles_a.begin(), shingles_a.end()),
                               std::set<std::string>(shingles_b.begin(), shingles_b.end()));
    total_err += std::abs(estimate_jaccard(sa, sb) - exact);
  }
  CHECK(total_err / n_pairs <= 0.03);
}

TEST_CASE("estimator is unbiased within 3 sigma over 1000 pairs", "[property]") {
  MinHashParams p;
  std::mt19937_64 rng(31337);
  double err_sum = 0.0, var_sum = 0.0;
  int n_pairs = 1000;
  for (int i = 0; i < n_pairs; ++i) {
    size_t total = 50 + rng() % 70;
    size_t shared = rng() % (total + 1);
    std::string common = random_text(rng, shared, 2000000);
    std::string ta = common + (shared ? " " : "") + random_text(rng, total - shared, 2000000);
    std::string tb = common + (shared ? " " : "") + random_text(rng, total - shared, 2000000);
    auto sa = minhash_signature(doc("a", ta), p);
    auto sb = minhash_signature(doc("b", tb), p);
    auto sha = word_shingles(ta, p.shingle_n);
    auto shb = word_shingles(tb, p.shingle_n);
    double exact =
        oracles::exact_jaccard(std::set<std::string>(sha.begin(), sha.end()),
                               std::set<std::string>(shb.begin(), shb.end()));
    err_sum += estimate_jaccard(sa, sb) - exact;
    var_sum += exact * (1.0 - exact) / double(p.num_perms);
  }
  double mean_err = err_sum / n_pairs;
  double sigma_of_mean = std::sqrt(var_sum) / n_pairs;
  CHECK(std::abs(mean_err) <= 3.0 * sigma_of_mean + 1e-12);
}

TEST_CASE("disjoint shingle sets estimate near zero") {
  MinHashParams p;
  std::string ta, tb;
  for (int i = 0; i < 50; ++i) {
    ta += "a" + std::to_string(i) + " ";
    tb += "b" + std::to_string(i) + " ";
  }
  auto sa = minhash_signature(doc("a", ta), p);
  auto sb = minhash_signature(doc("b", tb), p);
  CHECK(estimate_jaccard(sa, sb) <= 0.05);
}

TEST_CASE("constructed one-third overlap estimates within 0.10") {
  MinHashParams p;
  p.shingle_n = 1;  // single-word shingles make the set construction exact
  // |A|=|B|=20, |A∩B|=10 -> J = 10/30 = 1/3
  std::string ta, tb;
  for (int i = 0; i < 10; ++i) ta += "c" + std::to_string(i) + " ";
  for (int i = 0; i < 10; ++i) tb += "c" + std::to_string(i) + " ";
  for (int i = 0; i < 10; ++i) ta += "a" + std::to_string(i) + " ";
  for (int i = 0; i < 10; ++i) tb += "b" + std::to_string(i) + " ";
  auto sa = minhash_signature(doc("a", ta), p);
  auto sb = minhash_signature(doc("b", tb), p);
  CHECK(estimate_jaccard(sa, sb) == Catch::Approx(1.0 / 3.0).margin(0.10));
}

TEST_CASE("dedup keeps distinct docs untouched") {
  MinHashParams p;
  std::mt19937_64 rng(5);
  std::vector<corpus::Document> docs;
  for (int i = 0; i < 20; ++i)
    docs.push_back(doc("d" + std::to_string(i), random_text(rng, 30, 100000)));
  auto [kept, report] = dedup_corpus(docs, p, 0.8);
  CHECK(kept.size() == 20);
  CHECK(report.drops.empty());
}

TEST_CASE("exact triplicates collapse to the earliest") {
  MinHashParams p;
  std::vector<corpus::Document> docs = {doc("a", "same text here for all"),
                                        doc("b", "same text here for all"),
                                        doc("c", "same text here for all")};
  auto [kept, report] = dedup_corpus(docs, p, 0.8);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].id == "a");
  REQUIRE(report.drops.size() == 2);
  for (const auto& d : report.drops) {
    CHECK(d.kept_id == "a");
    CHECK(d.reason == "exact");
    CHECK(d.estimate == 1.0);
  }
}

TEST_CASE("near duplicates collapse to the longest") {
  MinHashParams p;
  std::mt19937_64 rng(17);
  std::string base = random_text(rng, 120);
  std::string longer = base + " ekstra hale med mer innhold";
  std::vector<corpus::Document> docs = {doc("short", base), doc("long", longer)};
  auto [kept, report] = dedup_corpus(docs, p, 0.8);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].id == "long");
  REQUIRE(report.drops.size() == 1);
  CHECK(report.drops[0].dropped_id == "short");
  CHECK(report.drops[0].reason == "near");
  CHECK(report.drops[0].estimate >= 0.8);
}

TEST_CASE("kept-set size is stable under input permutation", "[property]") {
  MinHashParams p;
  std::mt19937_64 rng(23);
  std::vector<corpus::Document> docs;
  for (int i = 0; i < 15; ++i) {
    std::string text = random_text(rng, 40, 100000);
    docs.push_back(doc("o" + std::to_string(i), text));
    if (i % 3 == 0) docs.push_back(doc("dup" + std::to_string(i), text));
  }
  auto [kept1, r1] = dedup_corpus(docs, p, 0.8);
  std::shuffle(docs.begin(), docs.end(), rng);
  auto [kept2, r2] = dedup_corpus(docs, p, 0.8);
  CHECK(kept1.size() == kept2.size());
  // no two kept docs share an exact key
  std::set<std::pair<uint64_t, uint64_t>> keys;
  for (const auto& d : kept1) {
    auto k = exact_key(d);
    keys.emplace(k.lo, k.hi);
  }
  CHECK(keys.size() == kept1.size());
}

TEST_CASE("drop report serializes as JSON lines") {
  DropReport rep;
  rep.seed = 7;
  rep.drops.push_back({"x", "y", "near", 0.91});
  std::string path = "drops_test.jsonl";
  rep.write_jsonl(path);
  std::ifstream f(path);
  std::string line;
  REQUIRE(std::getline(f, line));
  auto j = nlohmann::json::parse(line);
  CHECK(j["dropped_id"] == "x");
  CHECK(j["kept_id"] == "y");
  CHECK(j["reason"] == "near");
  CHECK(j["estimate"] == Catch::Approx(0.91));
  CHECK(j["seed"] == 7);
  std::remove(path.c_str());
}

TEST_CASE("near_threshold bounds are enforced") {
  MinHashParams p;
  std::vector<corpus::Document> docs = {doc("a", "x y z")};
  CHECK_THROWS_AS(dedup_corpus(docs, p, 0.0), PreconditionError);
  CHECK_THROWS_AS(dedup_corpus(docs, p, 1.0), PreconditionError);
}
