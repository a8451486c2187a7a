#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "norllm/metrics.hpp"
#include "oracles.hpp"

using namespace norllm::metrics;

static Tokens toks(const std::string& s) { return whitespace_tokens(s); }

static Tokens random_tokens(std::mt19937_64& rng, size_t max_len, int vocab = 12) {
  Tokens t;
  size_t n = 1 + rng() % max_len;
  for (size_t i = 0; i < n; ++i) t.push_back("t" + std::to_string(rng() % uint64_t(vocab)));
  return t;
}

TEST_CASE("bleu identity and empty cases") {
  auto c = toks("a b c d");
  CHECK(bleu(c, {c}).value == Catch::Approx(100.0));
  CHECK(bleu({}, {c}).value == 0.0);
  CHECK_THROWS_AS(bleu(c, {}), norllm::PreconditionError);
}

TEST_CASE("bleu brevity penalty hand case") {
  auto c = toks("a b c d");
  auto r = toks("a b c d e f g h");
  CHECK(bleu(c, {r}).value == Catch::Approx(100.0 * std::exp(-1.0)).margin(0.01));
  CHECK(bleu(c, {r}).value == Catch::Approx(36.79).margin(0.01));
}

TEST_CASE("rouge_n unigram hand case") {
  auto got = rouge_n(toks("the cat sat"), toks("the cat ate"), 1);
  CHECK(got.precision == Catch::Approx(100.0 * 2 / 3));
  CHECK(got.recall == Catch::Approx(100.0 * 2 / 3));
  CHECK(got.f == Catch::Approx(66.67).margin(0.01));
  auto ident = rouge_n(toks("x y"), toks("x y"), 1);
  CHECK(ident.f == Catch::Approx(100.0));
  CHECK(rouge_n(toks("a b"), toks("c d"), 1).f == 0.0);
}

TEST_CASE("rouge_l LCS hand case") {
  auto got = rouge_l(toks("a b c d"), toks("a c b d"));
  CHECK(got.precision == Catch::Approx(75.0));
  CHECK(got.recall == Catch::Approx(75.0));
  CHECK(got.f == Catch::Approx(75.0));
  CHECK(rouge_l(toks("a a"), toks("a a")).f == Catch::Approx(100.0));
  CHECK(rouge_l({}, toks("a")).f == 0.0);
}

TEST_CASE("rouge precision and recall swap with arguments") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto a = random_tokens(rng, 12);
    auto b = random_tokens(rng, 12);
    auto ab1 = rouge_n(a, b, 2);
    auto ba1 = rouge_n(b, a, 2);
    CHECK(ab1.precision == Catch::Approx(ba1.recall).margin(1e-12));
    CHECK(ab1.recall == Catch::Approx(ba1.precision).margin(1e-12));
    auto ab2 = rouge_l(a, b);
    auto ba2 = rouge_l(b, a);
    CHECK(ab2.precision == Catch::Approx(ba2.recall).margin(1e-12));
    CHECK(ab2.f == Catch::Approx(ba2.f).margin(1e-12));
  }
}

TEST_CASE("dist_n hand cases") {
  CHECK(dist_n({toks("a a a a a")}, 4).value == Catch::Approx(50.0));
  CHECK(dist_n({toks("a b c d")}, 4).value == Catch::Approx(100.0));
  CHECK_THROWS_AS(dist_n({toks("a b")}, 4), norllm::PreconditionError);
  // duplicating a corpus doubles totals but not uniques
  auto one = dist_n({toks("p q r s t")}, 2).value;
  auto two = dist_n({toks("p q r s t"), toks("p q r s t")}, 2).value;
  CHECK(two == Catch::Approx(one / 2.0));
}

TEST_CASE("corpus duplication never raises dist_n", "[property]") {
  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Tokens> corpus;
    size_t m = 1 + rng() % 6;
    for (size_t i = 0; i < m; ++i) corpus.push_back(random_tokens(rng, 10, 6));
    size_t n = 1 + rng() % 3;
    bool any = false;
    for (const auto& t : corpus) any |= t.size() >= n;
    if (!any) continue;
    auto once = dist_n(corpus, n).value;
    auto doubled_corpus = corpus;
    doubled_corpus.insert(doubled_corpus.end(), corpus.begin(), corpus.end());
    CHECK(dist_n(doubled_corpus, n).value <= once + 1e-12);
  }
}

TEST_CASE("bleu and rouge agree with the brute-force oracle", "[oracle]") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 60; ++i) {
    auto cand = random_tokens(rng, 15);
    auto ref = random_tokens(rng, 15);
    CHECK(bleu(cand, {ref}).value ==
          Catch::Approx(oracles::bleu_percent(cand, {ref})).margin(1e-6));
    auto r1 = rouge_n(cand, ref, 1);
    auto o1 = oracles::rouge_n_percent(cand, ref, 1);
    CHECK(r1.f == Catch::Approx(o1.f).margin(1e-6));
    auto rl = rouge_l(cand, ref);
    auto ol = oracles::rouge_l_percent(cand, ref);
    CHECK(rl.f == Catch::Approx(ol.f).margin(1e-6));
  }
}

TEST_CASE("multi-reference bleu clips against the best reference") {
  auto cand = toks("the cat sat on the mat");
  auto ref1 = toks("the cat sat on a mat");
  auto ref2 = toks("a dog ran in the park today ok");
  CHECK(bleu(cand, {ref1, ref2}).value ==
        Catch::Approx(oracles::bleu_percent(cand, {ref1, ref2})).margin(1e-6));
}

TEST_CASE("classification metrics hand cases") {
  std::vector<std::string> golds = {"p", "p", "p", "n", "n"};
  std::vector<std::string> preds = {"p", "p", "n", "p", "n"};
  auto rep = classification_metrics(preds, golds);
  CHECK(rep.accuracy == Catch::Approx(60.0));
  CHECK(rep.per_class_f1.at("p") == Catch::Approx(66.67).margin(0.01));
  CHECK(rep.per_class_f1.at("n") == Catch::Approx(50.0));
  CHECK(rep.macro_f1 == Catch::Approx(58.33).margin(0.01));

  auto perfect = classification_metrics(golds, golds);
  CHECK(perfect.accuracy == Catch::Approx(100.0));
  CHECK(perfect.macro_f1 == Catch::Approx(100.0));

  std::vector<std::string> all_one = {"a", "a", "a", "a"};
  std::vector<std::string> balanced = {"a", "b", "a", "b"};
  CHECK(classification_metrics(all_one, balanced).accuracy == Catch::Approx(50.0));

  CHECK_THROWS_AS(classification_metrics({"a"}, {"a", "b"}), norllm::PreconditionError);
  CHECK_THROWS_AS(classification_metrics({}, {}), norllm::PreconditionError);
}

TEST_CASE("pair order does not change per-pair values", "[property]") {
  std::mt19937_64 rng(41);
  std::vector<std::pair<Tokens, Tokens>> pairs;
  for (int i = 0; i < 20; ++i) pairs.emplace_back(random_tokens(rng, 10), random_tokens(rng, 10));
  std::vector<double> values;
  for (auto& [c, r] : pairs) values.push_back(bleu(c, {r}).value);
  std::vector<size_t> perm(pairs.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (size_t k = 0; k < perm.size(); ++k) {
    auto& [c, r] = pairs[perm[k]];
    CHECK(bleu(c, {r}).value == values[perm[k]]);
  }
}
