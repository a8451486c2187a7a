#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "norllm/mauve.hpp"

using namespace norllm::metrics;

static EmbeddingSet gaussian_cloud(std::mt19937_64& rng, size_t n, size_t dim, double center,
                                   double sigma) {
  EmbeddingSet s;
  std::normal_distribution<double> gauss(0.0, sigma);
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> v(dim);
    for (auto& x : v) x = center + gauss(rng);
    s.vectors.push_back(std::move(v));
  }
  return s;
}

TEST_CASE("identical embedding multisets score at least 0.99") {
  std::mt19937_64 rng(1);
  auto p = gaussian_cloud(rng, 200, 16, 0.0, 1.0);
  auto score = mauve(p, p, 8, 5.0, 25, 3);
  CHECK(score.value >= 0.99);
  CHECK(score.scale == Scale::Unit);
}

TEST_CASE("well-separated clouds score at most 0.05") {
  std::mt19937_64 rng(2);
  auto p = gaussian_cloud(rng, 150, 8, 0.0, 1.0);
  auto q = gaussian_cloud(rng, 150, 8, 100.0, 1.0);
  CHECK(mauve(p, q, 2, 5.0, 25, 3).value <= 0.05);
}

TEST_CASE("mauve is symmetric within 1e-9") {
  std::mt19937_64 rng(3);
  auto p = gaussian_cloud(rng, 120, 12, 0.0, 1.0);
  auto q = gaussian_cloud(rng, 130, 12, 1.5, 1.2);
  auto pq = mauve(p, q, 10, 5.0, 25, 11).value;
  auto qp = mauve(q, p, 10, 5.0, 25, 11).value;
  CHECK(std::abs(pq - qp) <= 1e-9);
}

TEST_CASE("mauve is deterministic for a fixed seed") {
  std::mt19937_64 rng(4);
  auto p = gaussian_cloud(rng, 80, 6, 0.0, 1.0);
  auto q = gaussian_cloud(rng, 90, 6, 0.5, 1.0);
  CHECK(mauve(p, q, 6, 5.0, 25, 5).value == mauve(p, q, 6, 5.0, 25, 5).value);
}

TEST_CASE("partial overlap lands strictly between the extremes") {
  std::mt19937_64 rng(6);
  auto p = gaussian_cloud(rng, 200, 4, 0.0, 1.0);
  auto q = gaussian_cloud(rng, 200, 4, 1.0, 1.0);
  double v = mauve(p, q, 8, 5.0, 25, 7).value;
  CHECK(v > 0.05);
  CHECK(v < 0.999);
}

TEST_CASE("invalid inputs are rejected") {
  std::mt19937_64 rng(5);
  auto p = gaussian_cloud(rng, 10, 4, 0.0, 1.0);
  auto q = gaussian_cloud(rng, 12, 4, 0.0, 1.0);
  CHECK_THROWS_AS(mauve(p, q, 11, 5.0, 25, 0), norllm::PreconditionError);  // k > min
  CHECK_THROWS_AS(mauve(p, q, 0, 5.0, 25, 0), norllm::PreconditionError);
  EmbeddingSet empty;
  CHECK_THROWS_AS(mauve(empty, q, 2, 5.0, 25, 0), norllm::PreconditionError);
  auto r = gaussian_cloud(rng, 12, 5, 0.0, 1.0);
  CHECK_THROWS_AS(mauve(p, r, 2, 5.0, 25, 0), norllm::PreconditionError);
  EmbeddingSet bad = p;
  bad.vectors[0][0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(mauve(bad, q, 2, 5.0, 25, 0), norllm::ValidationError);
}

TEST_CASE("embedding csv loader handles labeled and plain rows") {
  {
    std::ofstream f("emb_plain.csv");
    f << "0.5,1.5\n-1.0,2.0\n";
  }
  auto plain = read_embeddings_csv("emb_plain.csv");
  REQUIRE(plain.vectors.size() == 2);
  CHECK(plain.labels.empty());
  CHECK(plain.vectors[1][0] == Catch::Approx(-1.0));
  std::remove("emb_plain.csv");

  {
    std::ofstream f("emb_labeled.csv");
    f << "cand1,0.5,1.5\ncand2,-1.0,2.0\n";
  }
  auto labeled = read_embeddings_csv("emb_labeled.csv");
  REQUIRE(labeled.labels.size() == 2);
  CHECK(labeled.labels[0] == "cand1");
  std::remove("emb_labeled.csv");
}
