#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "norllm/embedding.hpp"
#include "norllm/errors.hpp"
#include "norllm/metrics.hpp"

namespace norllm::metrics {

namespace detail_mauve {

// self-contained RNG so results do not depend on the standard library's
// distribution implementations
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
};

inline double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double t = a[i] - b[i];
    d += t * t;
  }
  return d;
}

inline size_t nearest_center(const std::vector<std::vector<double>>& centers,
                             const std::vector<double>& x) {
  size_t best = 0;
  double best_d = std::numeric_limits<double>::max();
  for (size_t c = 0; c < centers.size(); ++c) {
    double d = sq_dist(centers[c], x);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

// k-means++ init then Lloyd iterations (bounded), on a canonically sorted
// point list so the quantization is invariant to the order of the inputs.
inline std::vector<std::vector<double>> kmeans(std::vector<std::vector<double>> points, size_t k,
                                               uint64_t seed, size_t max_iters = 100) {
  std::sort(points.begin(), points.end());
  Rng rng(seed ^ 0xA0761D6478BD642FULL);

  std::vector<std::vector<double>> centers;
  centers.reserve(k);
  centers.push_back(points[size_t(rng.uniform() * double(points.size())) % points.size()]);
  std::vector<double> d2(points.size());
  while (centers.size() < k) {
    double sum = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
      double d = sq_dist(centers.back(), points[i]);
      if (centers.size() == 1 || d < d2[i]) d2[i] = d;
      sum += d2[i];
    }
    size_t chosen = 0;
    if (sum > 0.0) {
      double target = rng.uniform() * sum;
      double acc = 0.0;
      for (size_t i = 0; i < points.size(); ++i) {
        acc += d2[i];
        if (acc >= target) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = size_t(rng.uniform() * double(points.size())) % points.size();
    }
    centers.push_back(points[chosen]);
  }

  std::vector<size_t> assign(points.size(), 0);
  for (size_t iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (size_t i = 0; i < points.size(); ++i) {
      size_t a = nearest_center(centers, points[i]);
      if (a != assign[i]) {
        assign[i] = a;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    std::vector<std::vector<double>> sums(k, std::vector<double>(points[0].size(), 0.0));
    std::vector<size_t> counts(k, 0);
    for (size_t i = 0; i < points.size(); ++i) {
      ++counts[assign[i]];
      for (size_t d = 0; d < points[i].size(); ++d) sums[assign[i]][d] += points[i][d];
    }
    for (size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its old center
      for (size_t d = 0; d < sums[c].size(); ++d) centers[c][d] = sums[c][d] / double(counts[c]);
    }
  }
  return centers;
}

inline std::vector<double> histogram(const std::vector<std::vector<double>>& centers,
                                     const std::vector<std::vector<double>>& points) {
  std::vector<double> h(centers.size(), 0.0);
  for (const auto& x : points) h[nearest_center(centers, x)] += 1.0;
  for (double& v : h) v /= double(points.size());
  return h;
}

inline double kl_divergence(const std::vector<double>& p, const std::vector<double>& r) {
  double kl = 0.0;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) kl += p[i] * std::log(p[i] / r[i]);
  return kl;
}

} // namespace detail_mauve

// Divergence-frontier area between the k-means-quantized distributions of two
// embedding sets. Quantization uses k-means++ on the union; the frontier is
// traced over a uniform lambda grid and closed with the (0,1)/(1,0) endpoints;
// the area comes from the trapezoid rule. Result lies in [0,1].
inline MetricValue mauve(const EmbeddingSet& p, const EmbeddingSet& q, size_t k, double c = 5.0,
                         size_t grid = 25, uint64_t seed = 0) {
  p.validate();
  q.validate();
  if (p.vectors.empty() || q.vectors.empty()) throw PreconditionError("mauve: empty embedding set");
  if (p.dim() != q.dim()) throw PreconditionError("mauve: dimension mismatch");
  if (k < 1 || k > std::min(p.vectors.size(), q.vectors.size()))
    throw PreconditionError("mauve: k must satisfy 1 <= k <= min(|p|, |q|)");
  if (grid < 1) throw PreconditionError("mauve: empty lambda grid");

  std::vector<std::vector<double>> all = p.vectors;
  all.insert(all.end(), q.vectors.begin(), q.vectors.end());
  auto centers = detail_mauve::kmeans(std::move(all), k, seed);

  std::vector<double> ph = detail_mauve::histogram(centers, p.vectors);
  std::vector<double> qh = detail_mauve::histogram(centers, q.vectors);

  // both mixture weights come off the same grid so that swapping p and q
  // produces the bitwise-identical point set with axes exchanged
  std::vector<std::pair<double, double>> pts;
  pts.reserve(grid + 2);
  pts.emplace_back(0.0, 1.0);
  pts.emplace_back(1.0, 0.0);
  for (size_t i = 1; i <= grid; ++i) {
    double wp = double(i) / double(grid + 1);
    double wq = double(grid + 1 - i) / double(grid + 1);
    std::vector<double> r(ph.size());
    for (size_t b = 0; b < r.size(); ++b) r[b] = wp * ph[b] + wq * qh[b];
    double x = std::exp(-c * detail_mauve::kl_divergence(qh, r));
    double y = std::exp(-c * detail_mauve::kl_divergence(ph, r));
    pts.emplace_back(x, y);
  }

  // area under the upper frontier (max y per distinct x), trapezoid rule;
  // averaging with the axis-swapped run keeps the score exactly symmetric
  auto frontier_area = [](std::vector<std::pair<double, double>> v) {
    std::sort(v.begin(), v.end());
    std::vector<std::pair<double, double>> fr;
    for (const auto& pt : v) {
      if (!fr.empty() && fr.back().first == pt.first)
        fr.back().second = std::max(fr.back().second, pt.second);
      else
        fr.push_back(pt);
    }
    double area = 0.0;
    for (size_t i = 0; i + 1 < fr.size(); ++i)
      area += (fr[i + 1].first - fr[i].first) * (fr[i].second + fr[i + 1].second) * 0.5;
    return area;
  };
  std::vector<std::pair<double, double>> swapped;
  swapped.reserve(pts.size());
  for (const auto& [x, y] : pts) swapped.emplace_back(y, x);
  double area = 0.5 * (frontier_area(pts) + frontier_area(swapped));
  area = std::clamp(area, 0.0, 1.0);
  return {MetricName::MAUVE, area, Scale::Unit};
}

} // namespace norllm::metrics
