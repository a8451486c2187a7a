// Acceptance suite: one check per release criterion, one PASS/FAIL line each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "norllm/norllm.hpp"
#include "oracles.hpp"

using namespace norllm;
namespace fs = std::filesystem;

namespace {

struct Checker {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void within(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol))
      failures.push_back(what + ": got " + std::to_string(got) + ", want " +
                         std::to_string(want) + " +/- " + std::to_string(tol));
  }
  void at_most(double got, double bound, const std::string& what) {
    if (!(got <= bound))
      failures.push_back(what + ": got " + std::to_string(got) + ", bound " +
                         std::to_string(bound));
  }
  void at_least(double got, double bound, const std::string& what) {
    if (!(got >= bound))
      failures.push_back(what + ": got " + std::to_string(got) + ", bound " +
                         std::to_string(bound));
  }
};

int g_failed_criteria = 0;

void criterion(int number, const std::string& name, double time_limit_s,
               const std::function<void(Checker&)>& body) {
  Checker c;
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0 && elapsed > time_limit_s)
    c.failures.push_back("runtime " + std::to_string(elapsed) + "s exceeds " +
                         std::to_string(time_limit_s) + "s");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%6.2fs", elapsed);
  if (c.failures.empty()) {
    std::cout << "PASS  criterion " << number << "  " << name << "  [" << buf << "]\n";
  } else {
    ++g_failed_criteria;
    std::cout << "FAIL  criterion " << number << "  " << name << "  [" << buf << "]\n";
    for (const auto& f : c.failures) std::cout << "      - " << f << "\n";
  }
  std::cout.flush();
}

metrics::Tokens random_tokens(std::mt19937_64& rng, size_t max_len, int vocab = 12) {
  metrics::Tokens t;
  size_t n = 1 + rng() % max_len;
  for (size_t i = 0; i < n; ++i) t.push_back("t" + std::to_string(rng() % uint64_t(vocab)));
  return t;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string s;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) s += ' ';
    s += words[i];
  }
  return s;
}

std::vector<std::string> fixture_texts(const std::string& lang) {
  std::ifstream f(fixtures::fixture_path("langid/" + lang + ".txt"));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(f, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

// --- criteria ---

void metric_oracle_suite(Checker& c) {
  std::mt19937_64 rng(20250810);
  for (int i = 0; i < 50; ++i) {
    auto cand = random_tokens(rng, 18);
    auto ref = random_tokens(rng, 18);
    double lib_bleu = metrics::bleu(cand, {ref}).value;
    double orc_bleu = oracles::bleu_percent(cand, {ref});
    c.within(lib_bleu, orc_bleu, 1e-6, "BLEU pair " + std::to_string(i));
    auto lib_r1 = metrics::rouge_n(cand, ref, 1);
    auto orc_r1 = oracles::rouge_n_percent(cand, ref, 1);
    c.within(lib_r1.precision, orc_r1.p, 1e-6, "ROUGE-1 P pair " + std::to_string(i));
    c.within(lib_r1.recall, orc_r1.r, 1e-6, "ROUGE-1 R pair " + std::to_string(i));
    c.within(lib_r1.f, orc_r1.f, 1e-6, "ROUGE-1 F pair " + std::to_string(i));
    auto lib_rl = metrics::rouge_l(cand, ref);
    auto orc_rl = oracles::rouge_l_percent(cand, ref);
    c.within(lib_rl.f, orc_rl.f, 1e-6, "ROUGE-L F pair " + std::to_string(i));
  }
}

void bleu_hand_case(Checker& c) {
  auto cand = metrics::whitespace_tokens("a b c d");
  auto ref = metrics::whitespace_tokens("a b c d e f g h");
  c.within(metrics::bleu(cand, {ref}).value, 36.79, 0.01, "BLEU brevity-penalty hand case");
}

void dist_n_criterion(Checker& c) {
  auto v = metrics::dist_n({metrics::whitespace_tokens("a a a a a")}, 4).value;
  c.require(v == 50.0, "dist-4 of five identical tokens must be exactly 50.0");

  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<metrics::Tokens> corpus;
    size_t m = 1 + rng() % 6;
    for (size_t i = 0; i < m; ++i) corpus.push_back(random_tokens(rng, 12, 6));
    size_t n = 1 + rng() % 3;
    bool any = false;
    for (const auto& t : corpus) any |= t.size() >= n;
    if (!any) continue;
    double once = metrics::dist_n(corpus, n).value;
    auto doubled = corpus;
    doubled.insert(doubled.end(), corpus.begin(), corpus.end());
    double twice = metrics::dist_n(doubled, n).value;
    c.require(twice <= once + 1e-12,
              "duplication raised dist_n at iteration " + std::to_string(iter));
  }
}

void mauve_criterion(Checker& c) {
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto cloud = [&](size_t n, size_t dim, double center) {
    metrics::EmbeddingSet s;
    for (size_t i = 0; i < n; ++i) {
      std::vector<double> v(dim);
      for (auto& x : v) x = center + gauss(rng);
      s.vectors.push_back(std::move(v));
    }
    return s;
  };

  auto p = cloud(1000, 64, 0.0);
  c.at_least(metrics::mauve(p, p, 16, 5.0, 25, 1).value, 0.99, "identical multisets");

  auto far = cloud(1000, 64, 100.0);  // 100 sigma separation
  c.at_most(metrics::mauve(p, far, 2, 5.0, 25, 1).value, 0.05, "separated clouds");

  auto q = cloud(900, 64, 0.8);
  double pq = metrics::mauve(p, q, 12, 5.0, 25, 9).value;
  double qp = metrics::mauve(q, p, 12, 5.0, 25, 9).value;
  c.at_most(std::abs(pq - qp), 1e-9, "symmetry gap");
}

void minhash_criterion(Checker& c) {
  dedup::MinHashParams params;  // 128 perms, 16x8
  std::mt19937_64 rng(1717);

  // 1000 random set pairs with overlap spread over [0, 1]
  double total_err = 0.0;
  int pairs = 1000;
  for (int i = 0; i < pairs; ++i) {
    size_t total = 60 + rng() % 80;
    size_t shared = rng() % (total + 1);
    std::vector<std::string> common, wa, wb;
    for (size_t w = 0; w < shared; ++w)
      common.push_back("c" + std::to_string(rng() % 1000000));
    wa = common;
    wb = common;
    for (size_t w = shared; w < total; ++w) wa.push_back("a" + std::to_string(rng() % 1000000));
    for (size_t w = shared; w < total; ++w) wb.push_back("b" + std::to_string(rng() % 1000000));
    std::string ta = join_words(wa), tb = join_words(wb);
    auto sa = dedup::minhash_signature("a", ta, params);
    auto sb = dedup::minhash_signature("b", tb, params);
    auto sha = dedup::word_shingles(ta, params.shingle_n);
    auto shb = dedup::word_shingles(tb, params.shingle_n);
    double exact = oracles::exact_jaccard(std::set<std::string>(sha.begin(), sha.end()),
                                          std::set<std::string>(shb.begin(), shb.end()));
    total_err += std::abs(dedup::estimate_jaccard(sa, sb) - exact);
  }
  c.at_most(total_err / pairs, 0.03, "mean |estimate - exact jaccard| over 1000 pairs");

  // 10k-document corpus with planted near-duplicates
  auto make_doc = [](std::string id, std::string text) {
    corpus::Document d;
    d.id = std::move(id);
    d.text = std::move(text);
    d.source = {"synthetic", corpus::SourceClass::Other};
    d.lang = "nb";
    return d;
  };
  std::vector<corpus::Document> docs;
  int n_unrelated = 9000, n_pairs = 500;
  for (int i = 0; i < n_unrelated; ++i) {
    std::vector<std::string> words;
    size_t len = 120 + rng() % 60;
    for (size_t w = 0; w < len; ++w) words.push_back("u" + std::to_string(rng() % 50000000));
    docs.push_back(make_doc("plain" + std::to_string(i), join_words(words)));
  }
  std::set<std::string> planted_pair_ids;
  int planted_verified = 0;
  for (int i = 0; i < n_pairs; ++i) {
    std::vector<std::string> words;
    size_t len = 140 + rng() % 40;
    for (size_t w = 0; w < len; ++w) words.push_back("p" + std::to_string(rng() % 50000000));
    auto variant = words;
    variant[rng() % variant.size()] = "swap" + std::to_string(i);  // one-word substitution
    std::string ta = join_words(words), tb = join_words(variant);
    auto sha = dedup::word_shingles(ta, params.shingle_n);
    auto shb = dedup::word_shingles(tb, params.shingle_n);
    double exact = oracles::exact_jaccard(std::set<std::string>(sha.begin(), sha.end()),
                                          std::set<std::string>(shb.begin(), shb.end()));
    if (exact < 0.9) continue;  // construction guarantees this in practice
    ++planted_verified;
    docs.push_back(make_doc("orig" + std::to_string(i), ta));
    docs.push_back(make_doc("var" + std::to_string(i), tb));
    planted_pair_ids.insert("orig" + std::to_string(i));
    planted_pair_ids.insert("var" + std::to_string(i));
  }
  c.at_least(planted_verified, 450, "planted pairs passing the exact-jaccard gate");

  std::mt19937_64 shuffle_rng(5);
  std::shuffle(docs.begin(), docs.end(), shuffle_rng);
  auto [kept, report] = dedup::dedup_corpus(std::move(docs), params, 0.8);

  int pairs_collapsed = 0, false_drops = 0;
  std::set<std::string> dropped;
  for (const auto& d : report.drops) dropped.insert(d.dropped_id);
  for (int i = 0; i < n_pairs; ++i) {
    std::string o = "orig" + std::to_string(i), v = "var" + std::to_string(i);
    if (!planted_pair_ids.count(o)) continue;
    if (dropped.count(o) ^ dropped.count(v)) ++pairs_collapsed;
  }
  for (const auto& d : report.drops)
    if (d.dropped_id.rfind("plain", 0) == 0) ++false_drops;

  c.at_least(100.0 * pairs_collapsed / planted_verified, 95.0, "near-duplicate recall %");
  c.at_most(100.0 * false_drops / n_unrelated, 1.0, "false drop rate % on unrelated docs");
}

void tokenizer_criterion(Checker& c) {
  auto nb = fixture_texts("nb");
  auto en = fixture_texts("en");

  // two runs, byte-identical artifacts
  auto v1 = bpe::train_bpe(nb, 600, bpe::default_specials());
  auto v2 = bpe::train_bpe(nb, 600, bpe::default_specials());
  bpe::save_vocab(v1, "acc_vocab_run1.txt");
  bpe::save_vocab(v2, "acc_vocab_run2.txt");
  c.require(fixtures::read_file("acc_vocab_run1.txt") == fixtures::read_file("acc_vocab_run2.txt"),
            "two training runs must produce byte-identical vocab files");
  std::remove("acc_vocab_run1.txt");
  std::remove("acc_vocab_run2.txt");

  // roundtrip identity on 10k random unicode strings
  std::mt19937_64 rng(99);
  std::vector<uint32_t> pool;
  for (uint32_t cp = 1; cp < 0x500; ++cp)
    if (!(cp >= 0xD800 && cp <= 0xDFFF)) pool.push_back(cp);
  for (uint32_t cp : {0x1F600u, 0x10348u, 0x4E2Du, 0xFFFDu, 0x2028u, 0xFEFFu}) pool.push_back(cp);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string s;
    size_t len = rng() % 48;
    for (size_t k = 0; k < len; ++k) utf8::append(s, pool[rng() % pool.size()]);
    if (bpe::decode(v1, bpe::encode(v1, s)) != s) ++bad;
  }
  c.require(bad == 0, std::to_string(bad) + " of 10000 roundtrips failed");

  // extension strictly lowers fertility on held-out Norwegian when merges fire
  auto base = bpe::train_bpe(en, 500, bpe::default_specials());
  std::vector<std::string> nb_train(nb.begin(), nb.begin() + 40);
  std::vector<std::string> nb_held(nb.begin() + 40, nb.end());
  auto extended = bpe::extend_vocab(base, nb_train, 700);
  bool merge_fires = false;
  bpe::Encoder enc_ext(extended);
  for (const auto& t : nb_held)
    for (auto id : enc_ext.encode(t))
      if (id >= base.tokens.size()) merge_fires = true;
  c.require(merge_fires, "no learned merge fired on the held-out sample");
  auto fert_base = bpe::fertility(base, nb_held);
  auto fert_ext = bpe::fertility(extended, nb_held);
  c.require(fert_ext.tokens_per_word < fert_base.tokens_per_word,
            "extended fertility must be strictly lower than base");

  // monotone extension on 1000 random texts
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    size_t words = 1 + rng() % 14;
    for (size_t w = 0; w < words; ++w) {
      if (w) s += ' ';
      const auto& src = (rng() % 2) ? nb : en;
      const auto& line = src[rng() % src.size()];
      auto toks = metrics::whitespace_tokens(line);
      s += toks[rng() % toks.size()];
    }
    if (bpe::encode(extended, s).size() > bpe::encode(base, s).size()) ++violations;
  }
  c.require(violations == 0,
            std::to_string(violations) + " of 1000 texts got longer under the extended vocab");
}

void langid_criterion(Checker& c) {
  auto all = fixtures::load_langid_split({"nb", "nn", "da", "sv", "de", "en", "sme"});
  auto model = preprocess::train_langid(all.train);

  // macro accuracy: {en, de} vs the Scandinavian group {nb, nn, da, sv}
  auto group_of = [](const std::string& lang) {
    return (lang == "en" || lang == "de") ? 0 : 1;
  };
  int correct[2] = {0, 0}, total[2] = {0, 0};
  for (const auto& [text, lang] : all.held_out) {
    if (lang == "sme") continue;
    int g = group_of(lang);
    ++total[g];
    auto r = preprocess::identify_language(model, text);
    if (group_of(r.lang) == g) ++correct[g];
  }
  double macro =
      50.0 * (double(correct[0]) / total[0]) + 50.0 * (double(correct[1]) / total[1]);
  c.at_least(macro, 95.0, "macro accuracy % separating {en,de} from Scandinavian");

  // pairwise discrimination inside {nb, nn, da, sv}
  std::vector<std::string> scand = {"nb", "nn", "da", "sv"};
  for (size_t i = 0; i < scand.size(); ++i) {
    for (size_t j = i + 1; j < scand.size(); ++j) {
      auto split = fixtures::load_langid_split({scand[i], scand[j]});
      auto pair_model = preprocess::train_langid(split.train);
      int ok = 0;
      for (const auto& [text, lang] : split.held_out)
        if (preprocess::identify_language(pair_model, text).lang == lang) ++ok;
      double acc = 100.0 * ok / double(split.held_out.size());
      c.at_least(acc, 85.0, "pairwise accuracy % for " + scand[i] + "/" + scand[j]);
    }
  }
}

void instruct_criterion(Checker& c) {
  // build a dataset with the published marginals: 4623/220/101 by task type,
  // 3611/974/351/8 by category, both summing to 4944
  using instruct::InstructionRecord;
  using instruct::Kategori;
  using instruct::Oppgavetype;
  std::vector<std::pair<Oppgavetype, int>> types = {{Oppgavetype::Tekstsvar, 4623},
                                                    {Oppgavetype::Flervalg, 220},
                                                    {Oppgavetype::Oppsummering, 101}};
  std::vector<std::pair<Kategori, int>> cats = {{Kategori::NorskKultur, 3611},
                                                {Kategori::OrdOgUttrykk, 974},
                                                {Kategori::Leseforstaelse, 351},
                                                {Kategori::Other, 8}};
  std::vector<InstructionRecord> records;
  size_t cat_idx = 0;
  int cat_left = cats[0].second;
  for (const auto& [type, count] : types) {
    for (int k = 0; k < count; ++k) {
      InstructionRecord r;
      r.instruksjon = "Instruksjon " + std::to_string(records.size());
      r.output = "Svar";
      r.oppgavetype = type;
      if (type == Oppgavetype::Flervalg) {
        r.input = "A. alternativ en\nB. alternativ to";
        r.output = "A";
      }
      while (cat_left == 0 && cat_idx + 1 < cats.size()) {
        ++cat_idx;
        cat_left = cats[cat_idx].second;
      }
      r.kategori = cats[cat_idx].first;
      --cat_left;
      r.domene = "Annet";
      records.push_back(std::move(r));
    }
  }
  c.require(records.size() == 4944, "constructed dataset must have 4944 records");

  // exercise the JSONL path end to end
  std::string path = "acc_instruct.jsonl";
  instruct::write_records(path, records);
  auto loaded = instruct::read_records(path);
  std::remove(path.c_str());
  auto t = instruct::tally(loaded);
  c.require(t.by_oppgavetype.at(Oppgavetype::Tekstsvar) == 4623, "Tekstsvar tally must be 4623");
  c.require(t.by_oppgavetype.at(Oppgavetype::Flervalg) == 220, "Flervalg tally must be 220");
  c.require(t.by_oppgavetype.at(Oppgavetype::Oppsummering) == 101, "Oppsummering tally must be 101");
  c.require(t.by_kategori.at(Kategori::NorskKultur) == 3611, "NorskKultur tally must be 3611");
  c.require(t.by_kategori.at(Kategori::OrdOgUttrykk) == 974, "OrdOgUttrykk tally must be 974");
  c.require(t.by_kategori.at(Kategori::Leseforstaelse) == 351, "Leseforstaelse tally must be 351");
  c.require(t.by_kategori.at(Kategori::Other) == 8, "Other tally must be 8");
  int64_t sum_types = 0, sum_cats = 0;
  for (auto& [k, v] : t.by_oppgavetype) sum_types += v;
  for (auto& [k, v] : t.by_kategori) sum_cats += v;
  c.require(sum_types == 4944 && sum_cats == 4944, "both tallies must sum to 4944");

  // template rendering, byte-exact on the appendix records
  auto appendix = instruct::read_records(fixtures::fixture_path("instruct_appendix.jsonl"));
  c.require(appendix.size() == 4, "appendix fixture must hold 4 records");
  for (const auto& r : appendix) {
    std::string expect = r.has_input() ? r.instruksjon + "\n\n" + *r.input + "\nAnswer:"
                                       : r.instruksjon + "\n\nAnswer:";
    c.require(instruct::render_prompt(r) == expect, "prompt bytes for: " + r.instruksjon);
  }
  c.require(!appendix[3].has_input(), "record with literal N/A input must use the no-input form");
}

void reward_criterion(Checker& c) {
  c.within(reward::reward_score({0.3, -0.7, 2.0}, {0.3, -0.7, 2.0}), 1.0, 1e-12, "identity");
  c.within(reward::reward_score({1.0, 0.0}, {0.0, 1.0}), 0.0, 1e-12, "orthogonality");
  c.within(reward::reward_score({1.0, 0.0}, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}),
           std::sqrt(2.0) / 2.0, 1e-12, "hand vector");

  std::mt19937_64 rng(135);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int mismatches = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<double> golden(6);
    for (auto& x : golden) x = gauss(rng);
    golden[0] += 2.0;  // keep away from the zero vector
    std::vector<std::pair<std::string, std::vector<double>>> cands;
    size_t n = 2 + rng() % 8;
    for (size_t i = 0; i < n; ++i) {
      std::vector<double> v(6);
      for (auto& x : v) x = gauss(rng);
      v[1] += 1.5;
      cands.emplace_back("c" + std::to_string(i), v);
    }
    auto before = reward::select_best(cands, golden);
    double scale = std::exp(gauss(rng) * 4.0);  // positive, spans many magnitudes
    for (auto& [id, v] : cands)
      for (auto& x : v) x *= scale;
    auto scaled_golden = golden;
    for (auto& x : scaled_golden) x *= scale;
    if (reward::select_best(cands, scaled_golden) != before) ++mismatches;
  }
  c.require(mismatches == 0,
            std::to_string(mismatches) + " of 1000 scaled candidate sets changed their argmax");
}

void corpus_stats_criterion(Checker& c) {
  c.require(fixtures::stats_v1().total_tokens() == 25'000'000'000,
            "V1 fixture must sum to exactly 25.00B");
  double v2_gap =
      std::abs(double(fixtures::stats_v2().total_tokens()) - 51.15e9) / 51.15e9 * 100.0;
  double v3_gap =
      std::abs(double(fixtures::stats_v3().total_tokens()) - 88.45e9) / 88.45e9 * 100.0;
  c.at_most(v2_gap, 0.6, "V2 gap to published 51.15B in %");
  c.at_most(v3_gap, 0.6, "V3 gap to published 88.45B in %");

  auto vocab = bpe::make_byte_vocab({});
  std::mt19937_64 rng(2468);
  for (int iter = 0; iter < 30; ++iter) {
    std::vector<corpus::Document> a, b;
    for (int i = 0; i < 12; ++i) {
      corpus::Document d;
      d.id = "d" + std::to_string(iter) + "_" + std::to_string(i);
      size_t len = 1 + rng() % 40;
      for (size_t k = 0; k < len; ++k) d.text += char('a' + rng() % 26);
      d.source = {"s", corpus::SourceClass(rng() % 4)};
      d.lang = std::vector<std::string>{"nb", "nn", "sme", "da", "sv", "de", "en"}[rng() % 7];
      (rng() % 2 ? a : b).push_back(std::move(d));
    }
    auto sa = corpus::corpus_stats(a, vocab);
    auto sb = corpus::corpus_stats(b, vocab);
    std::vector<corpus::Document> both = a;
    both.insert(both.end(), b.begin(), b.end());
    auto merged = sa + sb;
    auto direct = corpus::corpus_stats(both, vocab);
    c.require(merged.tokens_by_source_class == direct.tokens_by_source_class &&
                  merged.tokens_by_lang == direct.tokens_by_lang &&
                  merged.doc_count == direct.doc_count && merged.byte_count == direct.byte_count,
              "additivity failed at iteration " + std::to_string(iter));
    int64_t by_class = direct.total_tokens(), by_lang = 0;
    for (auto& [k, v] : direct.tokens_by_lang) by_lang += v;
    c.require(by_class == by_lang, "partition sums diverged at iteration " + std::to_string(iter));
  }
}

void report_criterion(Checker& c) {
  c.require(report::render_metric_table(fixtures::conversation_table()) ==
                fixtures::read_file(fixtures::golden_path("table_conversation.txt")),
            "conversation table bytes");
  c.require(report::render_metric_table(fixtures::summarization_table()) ==
                fixtures::read_file(fixtures::golden_path("table_summarization.txt")),
            "summarization table bytes");
  c.require(report::render_metric_table(fixtures::nlu_table()) ==
                fixtures::read_file(fixtures::golden_path("table_nlu.txt")),
            "NLU table bytes");

  auto rows = report::emit_stats_series(
      {{"V1", fixtures::stats_v1()}, {"V2", fixtures::stats_v2()}, {"V3", fixtures::stats_v3()}});
  std::string rendered;
  for (const auto& r : rows) rendered += csv::make_row(r);
  c.require(rendered == fixtures::read_file(fixtures::golden_path("fig1b_series.csv")),
            "share series bytes");

  auto points = report::borda_count({{"task1", {{"A", 3.0}, {"B", 2.0}, {"C", 1.0}}},
                                     {"task2", {{"A", 5.0}, {"B", 9.0}, {"C", 1.0}}}});
  c.within(points.at("A"), 3.0, 1e-12, "borda A");
  c.within(points.at("B"), 3.0, 1e-12, "borda B");
  c.within(points.at("C"), 0.0, 1e-12, "borda C");
  auto tied = report::borda_count({{"t", {{"A", 1.0}, {"B", 1.0}}}});
  c.within(tied.at("A"), 0.5, 1e-12, "borda tie A");
  c.within(tied.at("B"), 0.5, 1e-12, "borda tie B");
}

} // namespace

int main() {
  std::cout << "norllm acceptance suite\n";
  criterion(1, "metric-oracle-suite", 5.0, metric_oracle_suite);
  criterion(2, "bleu-hand-case", 0.0, bleu_hand_case);
  criterion(3, "dist-n", 0.0, dist_n_criterion);
  criterion(4, "mauve-sanity", 10.0, mauve_criterion);
  criterion(5, "minhash-dedup", 60.0, minhash_criterion);
  criterion(6, "tokenizer", 0.0, tokenizer_criterion);
  criterion(7, "language-id", 120.0, langid_criterion);
  criterion(8, "instruction-tallies", 0.0, instruct_criterion);
  criterion(9, "reward", 0.0, reward_criterion);
  criterion(10, "corpus-stats", 0.0, corpus_stats_criterion);
  criterion(11, "report-rendering", 0.0, report_criterion);
  if (g_failed_criteria == 0)
    std::cout << "all criteria passed\n";
  else
    std::cout << g_failed_criteria << " criteria failed\n";
  return g_failed_criteria;
}
