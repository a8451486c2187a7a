#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "norllm/embedding.hpp"
#include "norllm/errors.hpp"

namespace norllm::reward {

// Raw cosine similarity is the reward; no shaping, no length penalty.
inline double reward_score(const std::vector<double>& candidate_emb,
                           const std::vector<double>& golden_emb) {
  if (candidate_emb.size() != golden_emb.size())
    throw PreconditionError("reward_score: dimension mismatch");
  if (candidate_emb.empty()) throw PreconditionError("reward_score: empty vectors");
  double dot = 0.0, nc = 0.0, ng = 0.0;
  for (size_t i = 0; i < candidate_emb.size(); ++i) {
    dot += candidate_emb[i] * golden_emb[i];
    nc += candidate_emb[i] * candidate_emb[i];
    ng += golden_emb[i] * golden_emb[i];
  }
  if (nc == 0.0 || ng == 0.0) throw PreconditionError("reward_score: zero vector");
  return dot / (std::sqrt(nc) * std::sqrt(ng));
}

struct ScoredCandidate {
  std::string candidate_id;
  std::vector<double> embedding;
  double reward = 0.0;
};

// Descending reward; input order breaks ties (stable sort).
inline std::vector<ScoredCandidate> rank_candidates(
    const std::vector<std::pair<std::string, std::vector<double>>>& candidates,
    const std::vector<double>& golden) {
  if (candidates.empty()) throw PreconditionError("rank_candidates: no candidates");
  std::vector<ScoredCandidate> scored;
  scored.reserve(candidates.size());
  for (const auto& [id, emb] : candidates)
    scored.push_back({id, emb, reward_score(emb, golden)});
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredCandidate& a, const ScoredCandidate& b) {
                     return a.reward > b.reward;
                   });
  return scored;
}

inline std::string select_best(
    const std::vector<std::pair<std::string, std::vector<double>>>& candidates,
    const std::vector<double>& golden) {
  return rank_candidates(candidates, golden).front().candidate_id;
}

} // namespace norllm::reward
