#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "norllm/csv.hpp"
#include "norllm/errors.hpp"

namespace norllm::metrics {

// Externally produced embeddings; the encoder that made them is out of scope.
struct EmbeddingSet {
  std::vector<std::vector<double>> vectors;
  std::vector<std::string> labels;  // optional; empty or aligned with vectors

  size_t dim() const { return vectors.empty() ? 0 : vectors[0].size(); }

  void validate() const {
    for (const auto& v : vectors) {
      if (v.size() != dim()) throw ValidationError("embedding set: inconsistent dimensions");
      for (double x : v)
        if (!std::isfinite(x)) throw ValidationError("embedding set: non-finite entry");
    }
    if (!labels.empty() && labels.size() != vectors.size())
      throw ValidationError("embedding set: label/vector count mismatch");
  }
};

// CSV matrix: one vector per row. Rows whose first field does not parse as a
// number are treated as labeled: id,v1,...,vd.
inline EmbeddingSet read_embeddings_csv(const std::string& path) {
  EmbeddingSet set;
  auto rows = csv::read_file(path);
  for (const auto& row : rows) {
    if (row.empty()) continue;
    size_t start = 0;
    try {
      size_t pos = 0;
      (void)std::stod(row[0], &pos);
      if (pos != row[0].size()) start = 1;
    } catch (...) {
      start = 1;
    }
    if (start == 1) set.labels.push_back(row[0]);
    std::vector<double> v;
    v.reserve(row.size() - start);
    for (size_t i = start; i < row.size(); ++i) {
      try {
        v.push_back(std::stod(row[i]));
      } catch (...) {
        throw IoError(path + ": bad numeric field '" + row[i] + "'");
      }
    }
    set.vectors.push_back(std::move(v));
  }
  if (!set.labels.empty() && set.labels.size() != set.vectors.size())
    throw IoError(path + ": mixed labeled and unlabeled rows");
  set.validate();
  return set;
}

} // namespace norllm::metrics
