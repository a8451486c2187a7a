#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "norllm/corpus.hpp"
#include "norllm/errors.hpp"
#include "norllm/utf8.hpp"

namespace norllm::bpe {

using TokenId = uint32_t;

// Byte-level BPE vocabulary. Token ids are dense: specials first, then the
// 256 single-byte tokens, then one token per learned merge, in merge order.
// Extension appends merges only, so ids 0..base_size-1 of an extended vocab
// are identical to the base.
struct SubwordVocab {
  std::vector<std::string> tokens;
  std::vector<std::pair<TokenId, TokenId>> merges;
  size_t base_size = 0;  // tokens inherited from a base vocab, 0 when trained from scratch
  std::vector<std::string> specials;

  size_t byte_offset() const { return specials.size(); }
  size_t merge_offset() const { return specials.size() + 256; }
  TokenId merge_result_id(size_t merge_index) const {
    return TokenId(merge_offset() + merge_index);
  }
  bool is_special(TokenId id) const { return id < specials.size(); }

  void validate() const {
    if (tokens.size() < merge_offset())
      throw ValidationError("vocab: missing byte-level tokens");
    for (size_t b = 0; b < 256; ++b)
      if (tokens[byte_offset() + b] != std::string(1, char(uint8_t(b))))
        throw ValidationError("vocab: byte token " + std::to_string(b) + " out of place");
    if (tokens.size() != merge_offset() + merges.size())
      throw ValidationError("vocab: token/merge count mismatch");
    for (size_t m = 0; m < merges.size(); ++m) {
      auto [l, r] = merges[m];
      TokenId res = merge_result_id(m);
      if (l >= res || r >= res || l < byte_offset() || r < byte_offset())
        throw ValidationError("vocab: merge " + std::to_string(m) + " references bad ids");
      if (tokens[res] != tokens[l] + tokens[r])
        throw ValidationError("vocab: merge " + std::to_string(m) + " result mismatch");
    }
  }
};

inline SubwordVocab make_byte_vocab(const std::vector<std::string>& specials) {
  SubwordVocab v;
  v.specials = specials;
  v.tokens = specials;
  for (int b = 0; b < 256; ++b) v.tokens.push_back(std::string(1, char(uint8_t(b))));
  return v;
}

inline std::vector<std::string> default_specials() { return {"<unk>", "<bos>", "<eos>", "<pad>"}; }

// Reversible pre-tokenization: a single space attaches to the following word;
// other whitespace bytes stand alone; words are maximal non-whitespace runs.
inline std::vector<std::string_view> split_pieces(std::string_view text) {
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  std::vector<std::string_view> pieces;
  size_t i = 0, n = text.size();
  while (i < n) {
    char c = text[i];
    if (c == ' ' && i + 1 < n && !is_ws(text[i + 1])) {
      size_t j = i + 1;
      while (j < n && !is_ws(text[j])) ++j;
      pieces.push_back(text.substr(i, j - i));
      i = j;
    } else if (is_ws(c)) {
      pieces.push_back(text.substr(i, 1));
      ++i;
    } else {
      size_t j = i;
      while (j < n && !is_ws(text[j])) ++j;
      pieces.push_back(text.substr(i, j - i));
      i = j;
    }
  }
  return pieces;
}

namespace detail_bpe {

struct PairHash {
  size_t operator()(const std::pair<TokenId, TokenId>& p) const {
    return size_t(p.first) * 0x9E3779B9u + p.second;
  }
};

using IdSeq = std::vector<TokenId>;

inline void apply_merge(IdSeq& seq, TokenId l, TokenId r, TokenId result) {
  size_t w = 0, rd = 0;
  while (rd < seq.size()) {
    if (rd + 1 < seq.size() && seq[rd] == l && seq[rd + 1] == r) {
      seq[w++] = result;
      rd += 2;
    } else {
      seq[w++] = seq[rd++];
    }
  }
  seq.resize(w);
}

// Greedy BPE trainer shared by scratch training and extension. Pieces enter
// already expressed as token-id sequences; merging continues to target_size.
struct Trainer {
  SubwordVocab vocab;
  std::vector<IdSeq> piece_seqs;
  std::vector<int64_t> piece_counts;

  std::unordered_map<std::pair<TokenId, TokenId>, int64_t, PairHash> pair_counts;
  std::unordered_map<std::pair<TokenId, TokenId>, std::vector<size_t>, PairHash> pair_pieces;

  void add_pair_stats(size_t piece, int sign) {
    const auto& seq = piece_seqs[piece];
    int64_t c = piece_counts[piece] * sign;
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
      auto key = std::make_pair(seq[i], seq[i + 1]);
      auto& cnt = pair_counts[key];
      cnt += c;
      if (cnt <= 0) pair_counts.erase(key);
      if (sign > 0) pair_pieces[key].push_back(piece);
    }
  }

  void build_stats() {
    pair_counts.clear();
    pair_pieces.clear();
    for (size_t i = 0; i < piece_seqs.size(); ++i) add_pair_stats(i, +1);
  }

  // highest count; ties broken by lexicographically smallest (left, right) bytes
  bool select_best(std::pair<TokenId, TokenId>& best) const {
    int64_t best_count = 0;
    bool found = false;
    for (const auto& [pair, count] : pair_counts) {
      if (count <= 0) continue;
      if (!found || count > best_count) {
        best = pair;
        best_count = count;
        found = true;
        continue;
      }
      if (count == best_count) {
        const auto& bl = vocab.tokens[best.first];
        const auto& br = vocab.tokens[best.second];
        const auto& cl = vocab.tokens[pair.first];
        const auto& cr = vocab.tokens[pair.second];
        if (std::tie(cl, cr) < std::tie(bl, br)) best = pair;
      }
    }
    return found;
  }

  void train_to(size_t target_size) {
    while (vocab.tokens.size() < target_size) {
      std::pair<TokenId, TokenId> best;
      if (!select_best(best))
        throw ValidationError("train_bpe: target size unreachable; max reachable size is " +
                              std::to_string(vocab.tokens.size()));
      TokenId result = TokenId(vocab.tokens.size());
      vocab.tokens.push_back(vocab.tokens[best.first] + vocab.tokens[best.second]);
      vocab.merges.push_back(best);

      auto affected = pair_pieces[best];
      std::sort(affected.begin(), affected.end());
      affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
      pair_pieces.erase(best);
      for (size_t piece : affected) {
        bool contains = false;
        const auto& seq = piece_seqs[piece];
        for (size_t i = 0; i + 1 < seq.size(); ++i)
          if (seq[i] == best.first && seq[i + 1] == best.second) {
            contains = true;
            break;
          }
        if (!contains) continue;  // stale index entry
        add_pair_stats(piece, -1);
        apply_merge(piece_seqs[piece], best.first, best.second, result);
        add_pair_stats(piece, +1);
      }
      pair_counts.erase(best);
    }
  }
};

// Piece frequency table in sorted order so training is canonical regardless
// of container iteration order.
template <class TextRange>
inline void collect_pieces(const TextRange& texts, std::vector<std::string>& pieces,
                           std::vector<int64_t>& counts) {
  std::map<std::string, int64_t> freq;
  for (const auto& text : texts)
    for (auto piece : split_pieces(text)) ++freq[std::string(piece)];
  pieces.clear();
  counts.clear();
  pieces.reserve(freq.size());
  counts.reserve(freq.size());
  for (auto& [piece, count] : freq) {
    pieces.push_back(piece);
    counts.push_back(count);
  }
}

} // namespace detail_bpe

inline std::vector<TokenId> encode(const SubwordVocab& vocab, std::string_view text);

namespace detail_bpe {

inline IdSeq bytes_to_ids(const SubwordVocab& v, std::string_view piece) {
  IdSeq seq;
  seq.reserve(piece.size());
  for (unsigned char c : piece) seq.push_back(TokenId(v.byte_offset() + c));
  return seq;
}

} // namespace detail_bpe

template <class TextRange>
SubwordVocab train_bpe_on_texts(const TextRange& texts, size_t target_size,
                                const std::vector<std::string>& specials) {
  SubwordVocab base = make_byte_vocab(specials);
  if (target_size < base.tokens.size())
    throw PreconditionError("train_bpe: target_size below byte+special floor of " +
                            std::to_string(base.tokens.size()));

  detail_bpe::Trainer t;
  t.vocab = std::move(base);
  std::vector<std::string> pieces;
  detail_bpe::collect_pieces(texts, pieces, t.piece_counts);
  if (pieces.empty()) throw PreconditionError("train_bpe: empty corpus");
  t.piece_seqs.reserve(pieces.size());
  for (const auto& p : pieces) t.piece_seqs.push_back(detail_bpe::bytes_to_ids(t.vocab, p));
  t.build_stats();
  t.train_to(target_size);
  return std::move(t.vocab);
}

inline SubwordVocab train_bpe(const std::vector<corpus::Document>& docs, size_t target_size,
                              const std::vector<std::string>& specials = default_specials()) {
  std::vector<std::string_view> texts;
  texts.reserve(docs.size());
  for (const auto& d : docs) texts.push_back(d.text);
  return train_bpe_on_texts(texts, target_size, specials);
}

inline SubwordVocab train_bpe(const std::vector<std::string>& texts, size_t target_size,
                              const std::vector<std::string>& specials = default_specials()) {
  return train_bpe_on_texts(texts, target_size, specials);
}

// Keeps every base token and merge with unchanged ids; appends new merges
// learned on the corpus until target_size.
template <class TextRange>
SubwordVocab extend_vocab_on_texts(const SubwordVocab& base, const TextRange& texts,
                                   size_t target_size) {
  base.validate();
  if (target_size <= base.tokens.size())
    throw PreconditionError("extend_vocab: target_size must exceed base size " +
                            std::to_string(base.tokens.size()));

  detail_bpe::Trainer t;
  t.vocab = base;
  t.vocab.base_size = base.tokens.size();
  std::vector<std::string> pieces;
  detail_bpe::collect_pieces(texts, pieces, t.piece_counts);
  if (pieces.empty()) throw PreconditionError("extend_vocab: empty corpus");
  t.piece_seqs.reserve(pieces.size());
  for (const auto& p : pieces) {
    auto ids = encode(base, p);
    t.piece_seqs.push_back(detail_bpe::IdSeq(ids.begin(), ids.end()));
  }
  t.build_stats();
  t.train_to(target_size);
  return std::move(t.vocab);
}

inline SubwordVocab extend_vocab(const SubwordVocab& base,
                                 const std::vector<corpus::Document>& docs,
                                 size_t target_size) {
  std::vector<std::string_view> texts;
  texts.reserve(docs.size());
  for (const auto& d : docs) texts.push_back(d.text);
  return extend_vocab_on_texts(base, texts, target_size);
}

inline SubwordVocab extend_vocab(const SubwordVocab& base, const std::vector<std::string>& texts,
                                 size_t target_size) {
  return extend_vocab_on_texts(base, texts, target_size);
}

// Reusable encoder with precomputed merge ranks and a piece cache; prefer
// this over the free encode() when tokenizing many texts with one vocab.
class Encoder {
 public:
  explicit Encoder(const SubwordVocab& vocab) : vocab_(vocab) {
    rank_.reserve(vocab.merges.size());
    for (size_t m = 0; m < vocab.merges.size(); ++m) rank_.emplace(vocab.merges[m], m);
  }

  const SubwordVocab& vocab() const { return vocab_; }

  std::vector<TokenId> encode(std::string_view text) const {
    std::vector<TokenId> out;
    for (auto piece : split_pieces(text)) {
      auto it = cache_.find(std::string(piece));
      if (it != cache_.end()) {
        out.insert(out.end(), it->second.begin(), it->second.end());
        continue;
      }
      detail_bpe::IdSeq seq = encode_piece(piece);
      cache_.emplace(std::string(piece), seq);
      out.insert(out.end(), seq.begin(), seq.end());
    }
    return out;
  }

 private:
  detail_bpe::IdSeq encode_piece(std::string_view piece) const {
    detail_bpe::IdSeq seq = detail_bpe::bytes_to_ids(vocab_, piece);
    while (seq.size() > 1) {
      size_t best_rank = std::numeric_limits<size_t>::max();
      for (size_t i = 0; i + 1 < seq.size(); ++i) {
        auto r = rank_.find({seq[i], seq[i + 1]});
        if (r != rank_.end() && r->second < best_rank) best_rank = r->second;
      }
      if (best_rank == std::numeric_limits<size_t>::max()) break;
      auto [l, r] = vocab_.merges[best_rank];
      detail_bpe::apply_merge(seq, l, r, vocab_.merge_result_id(best_rank));
    }
    return seq;
  }

  const SubwordVocab& vocab_;
  std::unordered_map<std::pair<TokenId, TokenId>, size_t, detail_bpe::PairHash> rank_;
  mutable std::unordered_map<std::string, detail_bpe::IdSeq> cache_;
};

// Deterministic merge application in learned order; byte fallback means no OOV.
inline std::vector<TokenId> encode(const SubwordVocab& vocab, std::string_view text) {
  return Encoder(vocab).encode(text);
}

inline std::vector<TokenId> encode(const Encoder& enc, std::string_view text) {
  return enc.encode(text);
}

// Concatenates token byte sequences and validates the result as UTF-8.
// Special ids are reserved control tokens and emit nothing.
inline std::string decode(const SubwordVocab& vocab, const std::vector<TokenId>& ids) {
  std::string out;
  for (TokenId id : ids) {
    if (id >= vocab.tokens.size())
      throw ValidationError("decode: id " + std::to_string(id) + " out of range");
    if (vocab.is_special(id)) continue;
    out += vocab.tokens[id];
  }
  if (!utf8::is_valid(out)) throw ValidationError("decode: result is not valid UTF-8");
  return out;
}

struct FertilityReport {
  double tokens_per_word = 0.0;
  double tokens_per_char = 0.0;
  int64_t docs = 0;
  int64_t words = 0;
  int64_t chars = 0;
  int64_t tokens = 0;
};

template <class TextRange>
FertilityReport fertility_on_texts(const SubwordVocab& vocab, const TextRange& texts) {
  FertilityReport rep;
  Encoder enc(vocab);
  for (const auto& text : texts) {
    std::string_view sv(text);
    rep.tokens += int64_t(enc.encode(sv).size());
    rep.chars += int64_t(utf8::count_scalars(sv));
    size_t i = 0;
    while (i < sv.size()) {
      while (i < sv.size() && (sv[i] == ' ' || sv[i] == '\t' || sv[i] == '\n' || sv[i] == '\r'))
        ++i;
      if (i >= sv.size()) break;
      ++rep.words;
      while (i < sv.size() && sv[i] != ' ' && sv[i] != '\t' && sv[i] != '\n' && sv[i] != '\r')
        ++i;
    }
    ++rep.docs;
  }
  if (rep.words == 0) throw PreconditionError("fertility: corpus has no words");
  rep.tokens_per_word = double(rep.tokens) / double(rep.words);
  rep.tokens_per_char = double(rep.tokens) / double(rep.chars);
  return rep;
}

inline FertilityReport fertility(const SubwordVocab& vocab,
                                 const std::vector<corpus::Document>& docs) {
  std::vector<std::string_view> texts;
  texts.reserve(docs.size());
  for (const auto& d : docs) texts.push_back(d.text);
  return fertility_on_texts(vocab, texts);
}

inline FertilityReport fertility(const SubwordVocab& vocab, const std::vector<std::string>& texts) {
  return fertility_on_texts(vocab, texts);
}

// ---- vocab file ----
// UTF-8 text: header line (version, base_size, special count), one token per
// line (byte-escaped), a "#merges" sentinel, then one "left right" id pair
// per line in learned order.

namespace detail_bpe {

inline std::string escape_token(const std::string& t) {
  bool valid_utf8 = utf8::is_valid(t);
  std::string out;
  bool first = true;
  for (unsigned char c : t) {
    if (first && c == '#') {  // keep token lines distinct from the #merges sentinel
      out += "\\x23";
      first = false;
      continue;
    }
    first = false;
    if (c == '\\') out += "\\\\";
    else if (c == '\n') out += "\\n";
    else if (c == '\t') out += "\\t";
    else if (c == '\r') out += "\\r";
    else if (c == ' ') out += "\\s";
    else if (c < 0x20 || c == 0x7F || (c >= 0x80 && !valid_utf8)) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\x%02X", c);
      out += buf;
    } else {
      out += char(c);
    }
  }
  return out;
}

inline std::string unescape_token(std::string_view s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (i + 1 >= s.size()) throw IoError("vocab file: dangling escape");
    switch (s[++i]) {
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case 's': out += ' '; break;
      case 'x': {
        if (i + 2 >= s.size()) throw IoError("vocab file: bad \\x escape");
        out += char(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
        i += 2;
        break;
      }
      default: throw IoError("vocab file: unknown escape");
    }
  }
  return out;
}

} // namespace detail_bpe

inline void save_vocab(const SubwordVocab& v, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for write: " + path);
  f << "norllm-vocab v1 base_size=" << v.base_size << " specials=" << v.specials.size() << "\n";
  for (const auto& t : v.tokens) f << detail_bpe::escape_token(t) << "\n";
  f << "#merges\n";
  for (const auto& [l, r] : v.merges) f << l << ' ' << r << "\n";
  if (!f) throw IoError("write failed: " + path);
}

inline SubwordVocab load_vocab(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(f, line)) throw IoError("vocab file: empty: " + path);
  size_t base_size = 0, nspecials = 0;
  if (std::sscanf(line.c_str(), "norllm-vocab v1 base_size=%zu specials=%zu", &base_size,
                  &nspecials) != 2)
    throw IoError("vocab file: bad header in " + path);
  SubwordVocab v;
  v.base_size = base_size;
  bool in_merges = false;
  while (std::getline(f, line)) {
    if (line == "#merges") {
      in_merges = true;
      continue;
    }
    if (!in_merges) {
      v.tokens.push_back(detail_bpe::unescape_token(line));
    } else {
      if (line.empty()) continue;
      unsigned long l = 0, r = 0;
      if (std::sscanf(line.c_str(), "%lu %lu", &l, &r) != 2)
        throw IoError("vocab file: bad merge line in " + path);
      v.merges.emplace_back(TokenId(l), TokenId(r));
    }
  }
  if (v.tokens.size() < nspecials) throw IoError("vocab file: truncated token list in " + path);
  v.specials.assign(v.tokens.begin(), v.tokens.begin() + ptrdiff_t(nspecials));
  v.validate();
  return v;
}

} // namespace norllm::bpe
