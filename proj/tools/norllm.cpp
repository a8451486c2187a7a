// norllm: corpus curation, tokenizer, and evaluation toolkit CLI.
//
// Exit codes: 0 success, 1 validation failure, 2 I/O error, 3 precondition
// violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "norllm/norllm.hpp"

namespace fs = std::filesystem;
using namespace norllm;

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for write: " + path);
  f << content;
  if (!f) throw IoError("write failed: " + path);
}

void write_csv_or_stdout(const std::string& path,
                         const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& r : rows) out += csv::make_row(r);
  if (path.empty() || path == "-")
    std::cout << out;
  else
    write_text_file(path, out);
}

std::vector<corpus::Document> read_document_files(const std::vector<std::string>& paths) {
  std::vector<corpus::Document> docs;
  for (const auto& p : paths)
    corpus::for_each_document(p, [&](corpus::Document&& d) { docs.push_back(std::move(d)); });
  corpus::ensure_unique_ids(docs);
  return docs;
}

// ---- subcommand runners ----

int run_ingest(const std::vector<std::string>& files, const std::string& source,
               const std::string& source_class, const std::string& lang,
               const std::string& id_prefix, bool normalize, const std::string& out) {
  corpus::SourceId src{source, corpus::source_class_from_string(source_class)};
  std::vector<corpus::Document> docs;
  size_t index = 0;
  for (const auto& path : files) {
    corpus::Document d;
    d.id = id_prefix.empty() ? fs::path(path).filename().string()
                             : id_prefix + std::to_string(index);
    d.text = read_text_file(path);
    if (!utf8::is_valid(d.text)) throw ValidationError(path + ": not valid UTF-8");
    if (normalize) d.text = preprocess::normalize_text(d.text);
    d.source = src;
    if (!lang.empty()) d.lang = lang;
    docs.push_back(std::move(d));
    ++index;
  }
  corpus::write_documents(out, docs);
  std::cerr << "ingested " << docs.size() << " documents -> " << out << "\n";
  return 0;
}

int run_stats(const std::vector<std::string>& inputs, const std::string& vocab_path,
              const std::string& version, const std::string& out) {
  auto vocab = bpe::load_vocab(vocab_path);
  bpe::Encoder enc(vocab);
  auto docs = read_document_files(inputs);
  auto stats = corpus::corpus_stats(docs, enc);
  write_csv_or_stdout(out, corpus::stats_to_csv_rows(stats, version));
  return 0;
}

int run_preprocess(const std::vector<std::string>& inputs, const std::string& out,
                   const std::string& langid_model, bool train_langid_mode,
                   const std::string& model_out, const std::string& abbreviations,
                   const std::string& segment_out, double min_confidence, double alpha) {
  auto docs = read_document_files(inputs);

  if (train_langid_mode) {
    std::vector<std::pair<std::string, std::string>> labeled;
    for (const auto& d : docs) {
      if (!d.lang.has_value())
        throw PreconditionError("train-langid: document missing lang: " + d.id);
      labeled.emplace_back(preprocess::normalize_text(d.text), *d.lang);
    }
    auto model = preprocess::train_langid(labeled, alpha);
    if (model_out.empty()) throw PreconditionError("train-langid requires --model-out");
    preprocess::save_langid_model(model, model_out);
    std::cerr << "trained langid model on " << labeled.size() << " documents ("
              << model.classes.size() << " classes) -> " << model_out << "\n";
    return 0;
  }

  for (auto& d : docs) d.text = preprocess::normalize_text(d.text);

  if (!langid_model.empty()) {
    auto model = preprocess::load_langid_model(langid_model);
    for (auto& d : docs) {
      if (d.text.empty()) continue;
      auto r = preprocess::identify_language(model, d.text);
      if (r.confidence >= min_confidence) d.lang = r.lang;
    }
  }

  if (!segment_out.empty()) {
    auto rules = preprocess::default_rules();
    if (!abbreviations.empty()) {
      rules.abbreviation_list.clear();
      std::ifstream f(abbreviations, std::ios::binary);
      if (!f) throw IoError("cannot open: " + abbreviations);
      std::string line;
      while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) rules.abbreviation_list.insert(line);
      }
    }
    std::string sentences;
    for (const auto& d : docs)
      for (const auto& s : preprocess::segment_sentences(d.text, rules)) {
        sentences += s;
        sentences += '\n';
      }
    write_text_file(segment_out, sentences);
  }

  corpus::write_documents(out, docs);
  std::cerr << "preprocessed " << docs.size() << " documents -> " << out << "\n";
  return 0;
}

int run_dedup(const std::vector<std::string>& inputs, const dedup::MinHashParams& params,
              double near_threshold, const std::string& out, const std::string& report_path) {
  auto docs = read_document_files(inputs);
  size_t before = docs.size();
  auto [kept, report] = dedup::dedup_corpus(std::move(docs), params, near_threshold);
  corpus::write_documents(out, kept);
  if (!report_path.empty()) report.write_jsonl(report_path);
  std::cerr << "kept " << kept.size() << "/" << before << " documents; dropped "
            << report.drops.size() << " -> " << out << "\n";
  return 0;
}

int run_tokenizer_train(const std::vector<std::string>& inputs, size_t target_size,
                        const std::vector<std::string>& specials, const std::string& out) {
  auto docs = read_document_files(inputs);
  auto vocab = bpe::train_bpe(docs, target_size, specials);
  bpe::save_vocab(vocab, out);
  std::cerr << "trained vocab of " << vocab.tokens.size() << " tokens (" << vocab.merges.size()
            << " merges) -> " << out << "\n";
  return 0;
}

int run_tokenizer_extend(const std::vector<std::string>& inputs, const std::string& base_path,
                         size_t target_size, const std::string& out) {
  auto base = bpe::load_vocab(base_path);
  auto docs = read_document_files(inputs);
  auto vocab = bpe::extend_vocab(base, docs, target_size);
  bpe::save_vocab(vocab, out);
  std::cerr << "extended vocab " << base.tokens.size() << " -> " << vocab.tokens.size()
            << " tokens -> " << out << "\n";
  return 0;
}

int run_tokenizer_encode(const std::string& vocab_path, const std::string& text,
                         const std::string& input, bool roundtrip) {
  auto vocab = bpe::load_vocab(vocab_path);
  std::string payload = !input.empty() ? read_text_file(input) : text;
  auto ids = bpe::encode(vocab, payload);
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) std::cout << ' ';
    std::cout << ids[i];
  }
  std::cout << "\n";
  if (roundtrip) {
    if (bpe::decode(vocab, ids) != payload) throw ValidationError("roundtrip mismatch");
    std::cerr << "roundtrip ok (" << ids.size() << " tokens)\n";
  }
  return 0;
}

int run_tokenizer_fertility(const std::vector<std::string>& inputs, const std::string& vocab_path,
                            const std::string& out) {
  auto vocab = bpe::load_vocab(vocab_path);
  auto docs = read_document_files(inputs);
  auto rep = bpe::fertility(vocab, docs);
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"measure", "value"});
  rows.push_back({"tokens_per_word", report::format_decimal(rep.tokens_per_word, 4)});
  rows.push_back({"tokens_per_char", report::format_decimal(rep.tokens_per_char, 4)});
  rows.push_back({"docs", std::to_string(rep.docs)});
  rows.push_back({"words", std::to_string(rep.words)});
  rows.push_back({"chars", std::to_string(rep.chars)});
  rows.push_back({"tokens", std::to_string(rep.tokens)});
  write_csv_or_stdout(out, rows);
  return 0;
}

int run_instruct_validate(const std::string& input) {
  size_t warn_count = 0;
  auto records = instruct::read_records(input, [&](std::string_view label) {
    std::cerr << "warning: unknown kategori '" << label << "' mapped to Other\n";
    ++warn_count;
  });
  size_t bad = 0;
  for (size_t i = 0; i < records.size(); ++i) {
    for (const auto& v : instruct::validate_record(records[i])) {
      std::cout << input << ":" << (i + 1) << ": " << v.field << ": " << v.rule << "\n";
      ++bad;
    }
  }
  std::cerr << records.size() << " records, " << bad << " violations, " << warn_count
            << " category warnings\n";
  return bad == 0 ? 0 : 1;
}

int run_instruct_render(const std::string& input, int index, const std::string& out) {
  auto records = instruct::read_records(input);
  std::string rendered;
  if (index >= 0) {
    if (size_t(index) >= records.size())
      throw PreconditionError("record index out of range: " + std::to_string(index));
    rendered = instruct::render_prompt(records[size_t(index)]);
  } else {
    for (size_t i = 0; i < records.size(); ++i) {
      if (i) rendered += "\n\x1E\n";  // record separator line
      rendered += instruct::render_prompt(records[i]);
    }
  }
  if (out.empty() || out == "-")
    std::cout << rendered;
  else
    write_text_file(out, rendered);
  return 0;
}

int run_instruct_tally(const std::string& input, const std::string& out) {
  auto records = instruct::read_records(input);
  auto t = instruct::tally(records);
  write_csv_or_stdout(out, instruct::tally_to_csv_rows(t));
  return 0;
}

int run_eval_score(const std::string& input, size_t dist_order, const std::string& out) {
  std::ifstream f(input, std::ios::binary);
  if (!f) throw IoError("cannot open: " + input);
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"id", "metric", "value", "scale"});

  std::vector<metrics::Tokens> all_candidates;
  std::vector<std::string> preds, golds;
  std::string line;
  size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(input + ":" + std::to_string(lineno) + ": " + e.what());
    }
    std::string id = j.contains("id") ? j.at("id").get<std::string>() : std::to_string(lineno);
    if (j.contains("candidate")) {
      auto cand = metrics::whitespace_tokens(j.at("candidate").get<std::string>());
      std::vector<metrics::Tokens> refs;
      for (const auto& r : j.at("references"))
        refs.push_back(metrics::whitespace_tokens(r.get<std::string>()));
      if (refs.empty())
        throw ValidationError(input + ":" + std::to_string(lineno) + ": no references");
      auto b = metrics::bleu(cand, refs);
      rows.push_back({id, "BLEU", report::format_decimal(b.value, 2), "percent"});
      auto r1 = metrics::rouge_n(cand, refs[0], 1);
      rows.push_back({id, "ROUGE-1", report::format_decimal(r1.f, 2), "percent"});
      auto rl = metrics::rouge_l(cand, refs[0]);
      rows.push_back({id, "ROUGE-L", report::format_decimal(rl.f, 2), "percent"});
      all_candidates.push_back(std::move(cand));
    } else if (j.contains("pred")) {
      preds.push_back(j.at("pred").get<std::string>());
      golds.push_back(j.at("gold").get<std::string>());
    } else {
      throw ValidationError(input + ":" + std::to_string(lineno) +
                            ": record needs candidate/references or pred/gold");
    }
  }

  if (!all_candidates.empty()) {
    bool any = false;
    for (const auto& t : all_candidates) any |= t.size() >= dist_order;
    if (any) {
      auto d = metrics::dist_n(all_candidates, dist_order);
      rows.push_back({"corpus", "Dist-" + std::to_string(dist_order),
                      report::format_decimal(d.value, 2), "percent"});
    }
  }
  if (!preds.empty()) {
    auto rep = metrics::classification_metrics(preds, golds);
    rows.push_back({"corpus", "Accuracy", report::format_decimal(rep.accuracy, 2), "percent"});
    rows.push_back({"corpus", "F1", report::format_decimal(rep.macro_f1, 2), "percent"});
  }
  write_csv_or_stdout(out, rows);
  return 0;
}

int run_eval_mauve(const std::string& p_path, const std::string& q_path, size_t k, double c,
                   size_t grid, uint64_t seed, const std::string& out) {
  auto p = metrics::read_embeddings_csv(p_path);
  auto q = metrics::read_embeddings_csv(q_path);
  auto v = metrics::mauve(p, q, k, c, grid, seed);
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"metric", "value", "scale"});
  rows.push_back({"MAUVE", report::format_decimal(v.value, 4), "unit"});
  write_csv_or_stdout(out, rows);
  return 0;
}

int run_eval_reward(const std::string& candidates_path, const std::string& golden_path,
                    const std::string& out) {
  auto cands = metrics::read_embeddings_csv(candidates_path);
  auto golden = metrics::read_embeddings_csv(golden_path);
  if (golden.vectors.size() != 1)
    throw PreconditionError("golden embedding file must contain exactly one row");
  std::vector<std::pair<std::string, std::vector<double>>> pairs;
  for (size_t i = 0; i < cands.vectors.size(); ++i) {
    std::string id = cands.labels.empty() ? "cand" + std::to_string(i) : cands.labels[i];
    pairs.emplace_back(id, cands.vectors[i]);
  }
  auto ranked = reward::rank_candidates(pairs, golden.vectors[0]);
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"rank", "candidate_id", "reward"});
  for (size_t i = 0; i < ranked.size(); ++i)
    rows.push_back({std::to_string(i + 1), ranked[i].candidate_id,
                    report::format_decimal(ranked[i].reward, 6)});
  write_csv_or_stdout(out, rows);
  return 0;
}

int run_report_table(const std::string& input, const std::string& out) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(input));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(input + ": " + e.what());
  }
  report::ResultMatrix m;
  if (j.contains("row_axis_label")) m.row_axis_label = j.at("row_axis_label").get<std::string>();
  for (const auto& name : j.at("models")) m.models.push_back(name.get<std::string>());
  for (const auto& row : j.at("rows")) {
    m.metrics_or_tasks.push_back(row.at("name").get<std::string>());
    m.row_scales.push_back(row.value("scale", "percent") == "unit" ? metrics::Scale::Unit
                                                                   : metrics::Scale::Percent);
    std::vector<std::optional<double>> vals;
    for (const auto& v : row.at("values"))
      vals.push_back(v.is_null() ? std::optional<double>{}
                                 : std::optional<double>{v.get<double>()});
    m.values.push_back(std::move(vals));
  }
  std::string text = report::render_metric_table(m);
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text_file(out, text);
  return 0;
}

int run_report_borda(const std::string& input, const std::string& out) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(input));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(input + ": " + e.what());
  }
  std::map<std::string, std::map<std::string, double>> scores;
  for (const auto& [task, model_scores] : j.items())
    for (const auto& [model, score] : model_scores.items())
      scores[task][model] = score.get<double>();
  auto points = report::borda_count(scores);
  std::vector<std::pair<std::string, double>> order(points.begin(), points.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.second > b.second || (a.second == b.second && a.first < b.first);
  });
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"model", "points"});
  for (const auto& [model, pts] : order) rows.push_back({model, report::format_decimal(pts, 1)});
  write_csv_or_stdout(out, rows);
  return 0;
}

int run_report_series(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<std::pair<std::string, corpus::CorpusStats>> versions;
  for (const auto& path : inputs) versions.push_back(corpus::stats_from_csv(path));
  write_csv_or_stdout(out, report::emit_stats_series(versions));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"NorLLM corpus curation, tokenizer, and evaluation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "workspace config file (key = value lines)");

  // config supplies defaults, so it is read before CLI11 parses the full line
  config::Config cfg;
  try {
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--config") cfg = config::load_config(argv[i + 1]);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  int rc = 0;
  auto wrap = [&rc](auto fn) {
    return [fn, &rc]() { rc = fn(); };
  };

  // ingest
  auto* ingest = app.add_subcommand("ingest", "wrap raw text files as JSONL documents");
  std::vector<std::string> ingest_files;
  std::string ingest_source = cfg.get("ingest.source", "unknown");
  std::string ingest_class = cfg.get("ingest.source_class", "Other");
  std::string ingest_lang = cfg.get("ingest.lang", "");
  std::string ingest_prefix, ingest_out;
  bool ingest_normalize = false;
  ingest->add_option("files", ingest_files, "input text files")->required();
  ingest->add_option("--source", ingest_source, "source name");
  ingest->add_option("--source-class", ingest_class,
                     "NationalLibrary|IndustryPartner|CommonCrawl|Other");
  ingest->add_option("--lang", ingest_lang, "language code to assign");
  ingest->add_option("--id-prefix", ingest_prefix, "id prefix (default: file names)");
  ingest->add_flag("--normalize", ingest_normalize, "normalize text while ingesting");
  ingest->add_option("-o,--out", ingest_out, "output JSONL")->required();
  ingest->callback(wrap([&]() {
    return run_ingest(ingest_files, ingest_source, ingest_class, ingest_lang, ingest_prefix,
                      ingest_normalize, ingest_out);
  }));

  // stats
  auto* stats = app.add_subcommand("stats", "token accounting per source class and language");
  std::vector<std::string> stats_inputs;
  std::string stats_vocab = cfg.get("paths.vocab", "");
  std::string stats_version = cfg.get("stats.version", "V1");
  std::string stats_out;
  stats->add_option("inputs", stats_inputs, "document JSONL files")->required();
  stats->add_option("--vocab", stats_vocab, "vocab file for token counting")
      ->required(stats_vocab.empty());
  stats->add_option("--version", stats_version, "corpus version tag");
  stats->add_option("-o,--out", stats_out, "output CSV (default stdout)");
  stats->callback(
      wrap([&]() { return run_stats(stats_inputs, stats_vocab, stats_version, stats_out); }));

  // preprocess
  auto* prep =
      app.add_subcommand("preprocess", "normalize, segment, and identify document language");
  std::vector<std::string> prep_inputs;
  std::string prep_out, prep_model, prep_model_out, prep_abbrev, prep_segment_out;
  bool prep_train = false;
  double prep_min_conf = cfg.get_double("langid.min_confidence", 0.0);
  double prep_alpha = cfg.get_double("langid.alpha", 0.5);
  prep->add_option("inputs", prep_inputs, "document JSONL files")->required();
  prep->add_option("-o,--out", prep_out, "output JSONL");
  prep->add_option("--langid-model", prep_model, "identify language with this model");
  prep->add_flag("--train-langid", prep_train, "train a langid model from labeled documents");
  prep->add_option("--model-out", prep_model_out, "where to write the trained model");
  prep->add_option("--abbreviations", prep_abbrev, "abbreviation list, one entry per line");
  prep->add_option("--segment-out", prep_segment_out, "write segmented sentences here");
  prep->add_option("--min-confidence", prep_min_conf, "minimum posterior to assign lang");
  prep->add_option("--alpha", prep_alpha, "langid smoothing alpha");
  prep->callback(wrap([&]() {
    if (!prep_train && prep_out.empty())
      throw PreconditionError("preprocess: -o/--out is required unless --train-langid");
    return run_preprocess(prep_inputs, prep_out, prep_model, prep_train, prep_model_out,
                          prep_abbrev, prep_segment_out, prep_min_conf, prep_alpha);
  }));

  // dedup
  auto* dd = app.add_subcommand("dedup", "exact and near-duplicate removal");
  std::vector<std::string> dd_inputs;
  std::string dd_out, dd_report;
  dedup::MinHashParams params;
  params.num_perms = int(cfg.get_int("dedup.perms", 128));
  params.shingle_n = int(cfg.get_int("dedup.shingle_n", 5));
  params.lsh_bands = int(cfg.get_int("dedup.bands", 16));
  params.rows_per_band = int(cfg.get_int("dedup.rows_per_band", 8));
  params.seed = uint64_t(cfg.get_int("dedup.seed", 0));
  double near_threshold = cfg.get_double("dedup.near_threshold", 0.8);
  dd->add_option("inputs", dd_inputs, "document JSONL files")->required();
  dd->add_option("-o,--out", dd_out, "kept documents JSONL")->required();
  dd->add_option("--report", dd_report, "drop report JSONL");
  dd->add_option("--near-threshold", near_threshold, "jaccard estimate threshold");
  dd->add_option("--perms", params.num_perms, "minhash permutations");
  dd->add_option("--shingle-n", params.shingle_n, "words per shingle");
  dd->add_option("--bands", params.lsh_bands, "LSH bands");
  dd->add_option("--rows-per-band", params.rows_per_band, "rows per band");
  dd->add_option("--seed", params.seed, "hash seed");
  dd->callback(
      wrap([&]() { return run_dedup(dd_inputs, params, near_threshold, dd_out, dd_report); }));

  // tokenizer
  auto* tok = app.add_subcommand("tokenizer", "subword vocabulary operations");
  tok->require_subcommand(1);

  auto* tok_train = tok->add_subcommand("train", "train a byte-level BPE vocab");
  std::vector<std::string> tt_inputs;
  size_t tt_target = size_t(cfg.get_int("tokenizer.target_size", 4096));
  std::vector<std::string> tt_specials = bpe::default_specials();
  std::string tt_out;
  tok_train->add_option("inputs", tt_inputs, "document JSONL files")->required();
  tok_train->add_option("--target-size", tt_target, "total vocab size");
  tok_train->add_option("--specials", tt_specials, "reserved special tokens");
  tok_train->add_option("-o,--out", tt_out, "vocab file")->required();
  tok_train->callback(
      wrap([&]() { return run_tokenizer_train(tt_inputs, tt_target, tt_specials, tt_out); }));

  auto* tok_ext = tok->add_subcommand("extend", "extend a base vocab on new text");
  std::vector<std::string> te_inputs;
  std::string te_base, te_out;
  size_t te_target = 0;
  tok_ext->add_option("inputs", te_inputs, "document JSONL files")->required();
  tok_ext->add_option("--base", te_base, "base vocab file")->required();
  tok_ext->add_option("--target-size", te_target, "total vocab size after extension")->required();
  tok_ext->add_option("-o,--out", te_out, "vocab file")->required();
  tok_ext->callback(
      wrap([&]() { return run_tokenizer_extend(te_inputs, te_base, te_target, te_out); }));

  auto* tok_enc = tok->add_subcommand("encode", "encode text to token ids");
  std::string tenc_vocab, tenc_text, tenc_input;
  bool tenc_roundtrip = false;
  tok_enc->add_option("--vocab", tenc_vocab, "vocab file")->required();
  tok_enc->add_option("--text", tenc_text, "inline text");
  tok_enc->add_option("--input", tenc_input, "read text from file");
  tok_enc->add_flag("--check-roundtrip", tenc_roundtrip, "verify decode(encode(x)) == x");
  tok_enc->callback(wrap(
      [&]() { return run_tokenizer_encode(tenc_vocab, tenc_text, tenc_input, tenc_roundtrip); }));

  auto* tok_fert = tok->add_subcommand("fertility", "tokens per word and per character");
  std::vector<std::string> tf_inputs;
  std::string tf_vocab, tf_out;
  tok_fert->add_option("inputs", tf_inputs, "document JSONL files")->required();
  tok_fert->add_option("--vocab", tf_vocab, "vocab file")->required();
  tok_fert->add_option("-o,--out", tf_out, "output CSV (default stdout)");
  tok_fert->callback(wrap([&]() { return run_tokenizer_fertility(tf_inputs, tf_vocab, tf_out); }));

  // instruct
  auto* ins = app.add_subcommand("instruct", "instruction dataset operations");
  ins->require_subcommand(1);

  auto* ins_val = ins->add_subcommand("validate", "check records against the format rules");
  std::string iv_input;
  ins_val->add_option("input", iv_input, "records JSONL")->required();
  ins_val->callback(wrap([&]() { return run_instruct_validate(iv_input); }));

  auto* ins_ren = ins->add_subcommand("render", "render fine-tuning prompts");
  std::string ir_input, ir_out;
  int ir_index = -1;
  ins_ren->add_option("input", ir_input, "records JSONL")->required();
  ins_ren->add_option("--index", ir_index, "render only this record (0-based)");
  ins_ren->add_option("-o,--out", ir_out, "output file (default stdout)");
  ins_ren->callback(wrap([&]() { return run_instruct_render(ir_input, ir_index, ir_out); }));

  auto* ins_tal = ins->add_subcommand("tally", "counts by task type and category");
  std::string it_input, it_out;
  ins_tal->add_option("input", it_input, "records JSONL")->required();
  ins_tal->add_option("-o,--out", it_out, "output CSV (default stdout)");
  ins_tal->callback(wrap([&]() { return run_instruct_tally(it_input, it_out); }));

  // eval
  auto* ev = app.add_subcommand("eval", "metric evaluation");
  ev->require_subcommand(1);

  auto* ev_score = ev->add_subcommand("score", "BLEU/ROUGE/Dist or Accuracy/F1 batch scoring");
  std::string es_input, es_out;
  size_t es_dist = size_t(cfg.get_int("eval.dist_n", 4));
  ev_score->add_option("input", es_input, "JSONL with candidate/references or pred/gold")
      ->required();
  ev_score->add_option("--dist-n", es_dist, "n for the corpus Dist-n row");
  ev_score->add_option("-o,--out", es_out, "output CSV (default stdout)");
  ev_score->callback(wrap([&]() { return run_eval_score(es_input, es_dist, es_out); }));

  auto* ev_mauve = ev->add_subcommand("mauve", "divergence-frontier score of two embedding sets");
  std::string em_p, em_q, em_out;
  size_t em_k = size_t(cfg.get_int("mauve.k", 16));
  double em_c = cfg.get_double("mauve.c", 5.0);
  size_t em_grid = size_t(cfg.get_int("mauve.grid", 25));
  uint64_t em_seed = uint64_t(cfg.get_int("mauve.seed", 0));
  ev_mauve->add_option("--p", em_p, "embedding CSV for set P")->required();
  ev_mauve->add_option("--q", em_q, "embedding CSV for set Q")->required();
  ev_mauve->add_option("--k", em_k, "k-means cluster count");
  ev_mauve->add_option("--c", em_c, "scaling constant");
  ev_mauve->add_option("--grid", em_grid, "lambda grid size");
  ev_mauve->add_option("--seed", em_seed, "k-means seed");
  ev_mauve->add_option("-o,--out", em_out, "output CSV (default stdout)");
  ev_mauve->callback(wrap(
      [&]() { return run_eval_mauve(em_p, em_q, em_k, em_c, em_grid, em_seed, em_out); }));

  auto* ev_rew = ev->add_subcommand("reward", "rank candidates by cosine to a golden embedding");
  std::string er_cands, er_golden, er_out;
  ev_rew->add_option("--candidates", er_cands, "candidate embedding CSV (id,v1..vd)")->required();
  ev_rew->add_option("--golden", er_golden, "golden embedding CSV (one row)")->required();
  ev_rew->add_option("-o,--out", er_out, "ranking CSV (default stdout)");
  ev_rew->callback(wrap([&]() { return run_eval_reward(er_cands, er_golden, er_out); }));

  // report
  auto* rep = app.add_subcommand("report", "tables, Borda aggregation, statistics series");
  rep->require_subcommand(1);

  auto* rep_table = rep->add_subcommand("table", "render a metric table from matrix JSON");
  std::string rt_input, rt_out;
  rep_table->add_option("input", rt_input, "matrix JSON")->required();
  rep_table->add_option("-o,--out", rt_out, "output file (default stdout)");
  rep_table->callback(wrap([&]() { return run_report_table(rt_input, rt_out); }));

  auto* rep_borda = rep->add_subcommand("borda", "Borda points from per-task scores JSON");
  std::string rb_input, rb_out;
  rep_borda->add_option("input", rb_input, "scores JSON: {task: {model: score}}")->required();
  rep_borda->add_option("-o,--out", rb_out, "output CSV (default stdout)");
  rep_borda->callback(wrap([&]() { return run_report_borda(rb_input, rb_out); }));

  auto* rep_series = rep->add_subcommand("series", "long-format series from stats CSVs");
  std::vector<std::string> rs_inputs;
  std::string rs_out;
  rep_series->add_option("inputs", rs_inputs, "stats CSV files")->required();
  rep_series->add_option("-o,--out", rs_out, "output CSV (default stdout)");
  rep_series->callback(wrap([&]() { return run_report_series(rs_inputs, rs_out); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
