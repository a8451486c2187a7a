#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numeric>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "norllm/corpus.hpp"
#include "norllm/errors.hpp"

namespace norllm::dedup {

// ---- platform-independent hashing ----

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline uint64_t fnv1a64(std::string_view s, uint64_t seed = 0xCBF29CE484222325ULL) {
  uint64_t h = seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

struct Key128 {
  uint64_t lo = 0, hi = 0;
  friend bool operator==(const Key128&, const Key128&) = default;
};

struct Key128Hash {
  size_t operator()(const Key128& k) const { return size_t(k.lo ^ (k.hi * 0x9E3779B97F4A7C15ULL)); }
};

namespace detail_hash {

inline uint64_t load64_le(const unsigned char* p) {
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

inline uint64_t rotl64(uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

inline uint64_t fmix64(uint64_t k) {
  k ^= k >> 33;
  k *= 0xFF51AFD7ED558CCDULL;
  k ^= k >> 33;
  k *= 0xC4CEB9FE1A85EC53ULL;
  k ^= k >> 33;
  return k;
}

} // namespace detail_hash

// MurmurHash3 x64 128-bit, bytes read little-endian so results match across
// platforms.
inline Key128 murmur3_128(std::string_view data, uint64_t seed = 0) {
  using namespace detail_hash;
  const auto* p = reinterpret_cast<const unsigned char*>(data.data());
  const size_t len = data.size();
  const size_t nblocks = len / 16;

  uint64_t h1 = seed, h2 = seed;
  const uint64_t c1 = 0x87C37B91114253D5ULL;
  const uint64_t c2 = 0x4CF5AD432745937FULL;

  for (size_t i = 0; i < nblocks; ++i) {
    uint64_t k1 = load64_le(p + i * 16);
    uint64_t k2 = load64_le(p + i * 16 + 8);
    k1 *= c1; k1 = rotl64(k1, 31); k1 *= c2; h1 ^= k1;
    h1 = rotl64(h1, 27); h1 += h2; h1 = h1 * 5 + 0x52DCE729;
    k2 *= c2; k2 = rotl64(k2, 33); k2 *= c1; h2 ^= k2;
    h2 = rotl64(h2, 31); h2 += h1; h2 = h2 * 5 + 0x38495AB5;
  }

  const unsigned char* tail = p + nblocks * 16;
  uint64_t k1 = 0, k2 = 0;
  switch (len & 15) {
    case 15: k2 ^= uint64_t(tail[14]) << 48; [[fallthrough]];
    case 14: k2 ^= uint64_t(tail[13]) << 40; [[fallthrough]];
    case 13: k2 ^= uint64_t(tail[12]) << 32; [[fallthrough]];
    case 12: k2 ^= uint64_t(tail[11]) << 24; [[fallthrough]];
    case 11: k2 ^= uint64_t(tail[10]) << 16; [[fallthrough]];
    case 10: k2 ^= uint64_t(tail[9]) << 8; [[fallthrough]];
    case 9:  k2 ^= uint64_t(tail[8]);
             k2 *= c2; k2 = rotl64(k2, 33); k2 *= c1; h2 ^= k2; [[fallthrough]];
    case 8:  k1 ^= uint64_t(tail[7]) << 56; [[fallthrough]];
    case 7:  k1 ^= uint64_t(tail[6]) << 48; [[fallthrough]];
    case 6:  k1 ^= uint64_t(tail[5]) << 40; [[fallthrough]];
    case 5:  k1 ^= uint64_t(tail[4]) << 32; [[fallthrough]];
    case 4:  k1 ^= uint64_t(tail[3]) << 24; [[fallthrough]];
    case 3:  k1 ^= uint64_t(tail[2]) << 16; [[fallthrough]];
    case 2:  k1 ^= uint64_t(tail[1]) << 8; [[fallthrough]];
    case 1:  k1 ^= uint64_t(tail[0]);
             k1 *= c1; k1 = rotl64(k1, 31); k1 *= c2; h1 ^= k1;
  }

  h1 ^= uint64_t(len);
  h2 ^= uint64_t(len);
  h1 += h2;
  h2 += h1;
  h1 = fmix64(h1);
  h2 = fmix64(h2);
  h1 += h2;
  h2 += h1;
  return {h1, h2};
}

// Exact-duplicate key over normalized text.
inline Key128 exact_key(const corpus::Document& doc) { return murmur3_128(doc.text); }

// ---- MinHash ----

struct MinHashParams {
  int num_perms = 128;
  int shingle_n = 5;   // word shingles
  int lsh_bands = 16;
  int rows_per_band = 8;
  uint64_t seed = 0;

  void validate() const {
    if (num_perms < 16) throw PreconditionError("minhash: num_perms must be >= 16");
    if (lsh_bands * rows_per_band != num_perms)
      throw PreconditionError("minhash: lsh_bands * rows_per_band must equal num_perms");
    if (shingle_n < 1) throw PreconditionError("minhash: shingle_n must be >= 1");
  }
};

struct Signature {
  std::string doc_id;
  std::vector<uint64_t> minima;
};

inline std::vector<std::string> word_shingles(std::string_view text, int n) {
  std::vector<std::string_view> words;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\n' || text[i] == '\t')) ++i;
    size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\n' && text[i] != '\t') ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  std::vector<std::string> shingles;
  if (words.size() < size_t(n)) {
    // pad policy: short documents contribute their full text as one shingle
    if (!text.empty()) shingles.emplace_back(text);
    return shingles;
  }
  shingles.reserve(words.size() - size_t(n) + 1);
  for (size_t w = 0; w + size_t(n) <= words.size(); ++w) {
    std::string s;
    for (int k = 0; k < n; ++k) {
      if (k) s += '\x1F';
      s += words[w + size_t(k)];
    }
    shingles.push_back(std::move(s));
  }
  return shingles;
}

inline Signature minhash_signature(std::string_view doc_id, std::string_view text,
                                   const MinHashParams& p) {
  p.validate();
  auto shingles = word_shingles(text, p.shingle_n);
  Signature sig;
  sig.doc_id = std::string(doc_id);
  sig.minima.assign(size_t(p.num_perms), UINT64_MAX);
  for (const auto& sh : shingles) {
    uint64_t base = fnv1a64(sh);
    for (int i = 0; i < p.num_perms; ++i) {
      uint64_t h = splitmix64(base ^ splitmix64(p.seed + uint64_t(i) + 1));
      if (h < sig.minima[size_t(i)]) sig.minima[size_t(i)] = h;
    }
  }
  return sig;
}

inline Signature minhash_signature(const corpus::Document& doc, const MinHashParams& p) {
  return minhash_signature(doc.id, doc.text, p);
}

inline double estimate_jaccard(const Signature& a, const Signature& b) {
  if (a.minima.size() != b.minima.size() || a.minima.empty())
    throw PreconditionError("estimate_jaccard: signature parameter mismatch");
  size_t match = 0;
  for (size_t i = 0; i < a.minima.size(); ++i)
    if (a.minima[i] == b.minima[i]) ++match;
  return double(match) / double(a.minima.size());
}

// ---- corpus-level dedup ----

struct DropRecord {
  std::string dropped_id;
  std::string kept_id;
  std::string reason;  // "exact" | "near"
  double estimate = 0.0;
};

struct DropReport {
  std::vector<DropRecord> drops;
  uint64_t seed = 0;

  void write_jsonl(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for write: " + path);
    for (const auto& d : drops) {
      nlohmann::json j;
      j["dropped_id"] = d.dropped_id;
      j["kept_id"] = d.kept_id;
      j["reason"] = d.reason;
      j["estimate"] = d.estimate;
      j["seed"] = seed;
      f << j.dump() << "\n";
    }
    if (!f) throw IoError("write failed: " + path);
  }
};

namespace detail_dedup {

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

} // namespace detail_dedup

// Exact duplicates first (keep earliest), then LSH near-duplicate clusters
// verified against near_threshold (keep longest text, earliest on ties).
// Output preserves input order.
inline std::pair<std::vector<corpus::Document>, DropReport> dedup_corpus(
    std::vector<corpus::Document> docs, const MinHashParams& p, double near_threshold) {
  p.validate();
  if (!(near_threshold > 0.0 && near_threshold < 1.0))
    throw PreconditionError("dedup_corpus: near_threshold must be in (0,1)");

  DropReport report;
  report.seed = p.seed;

  std::vector<size_t> survivors;
  std::unordered_map<Key128, size_t, Key128Hash> first_by_key;
  for (size_t i = 0; i < docs.size(); ++i) {
    Key128 key = exact_key(docs[i]);
    auto [it, inserted] = first_by_key.emplace(key, i);
    if (inserted) {
      survivors.push_back(i);
    } else {
      report.drops.push_back({docs[i].id, docs[it->second].id, "exact", 1.0});
    }
  }

  std::vector<Signature> sigs(survivors.size());
  for (size_t k = 0; k < survivors.size(); ++k)
    sigs[k] = minhash_signature(docs[survivors[k]], p);

  // banded LSH: candidates collide on the hash of one band of minima
  detail_dedup::UnionFind uf(survivors.size());
  std::unordered_set<uint64_t> checked_pairs;
  for (int band = 0; band < p.lsh_bands; ++band) {
    std::unordered_map<uint64_t, std::vector<size_t>> buckets;
    for (size_t k = 0; k < sigs.size(); ++k) {
      uint64_t h = splitmix64(p.seed ^ (uint64_t(band) + 1));
      for (int r = 0; r < p.rows_per_band; ++r)
        h = splitmix64(h ^ sigs[k].minima[size_t(band * p.rows_per_band + r)]);
      buckets[h].push_back(k);
    }
    for (auto& [h, members] : buckets) {
      if (members.size() < 2) continue;
      for (size_t x = 0; x + 1 < members.size(); ++x) {
        for (size_t y = x + 1; y < members.size(); ++y) {
          size_t a = members[x], b = members[y];
          uint64_t pair_key = (uint64_t(a) << 32) | uint64_t(b);
          if (!checked_pairs.insert(pair_key).second) continue;
          if (estimate_jaccard(sigs[a], sigs[b]) >= near_threshold) uf.unite(a, b);
        }
      }
    }
  }

  // keeper per cluster: longest text, earliest input position on ties
  std::unordered_map<size_t, size_t> keeper_by_root;
  for (size_t k = 0; k < survivors.size(); ++k) {
    size_t root = uf.find(k);
    auto it = keeper_by_root.find(root);
    if (it == keeper_by_root.end()) {
      keeper_by_root[root] = k;
      continue;
    }
    const auto& cur = docs[survivors[it->second]];
    const auto& cand = docs[survivors[k]];
    if (cand.text.size() > cur.text.size()) it->second = k;
  }

  std::vector<corpus::Document> kept;
  kept.reserve(survivors.size());
  for (size_t k = 0; k < survivors.size(); ++k) {
    size_t keeper = keeper_by_root[uf.find(k)];
    if (keeper == k) {
      kept.push_back(std::move(docs[survivors[k]]));
    } else {
      report.drops.push_back({docs[survivors[k]].id, docs[survivors[keeper]].id, "near",
                              estimate_jaccard(sigs[k], sigs[keeper])});
    }
  }
  return {std::move(kept), std::move(report)};
}

} // namespace norllm::dedup
