#include <catch2/catch_amalgamated.hpp>

#include "norllm/config.hpp"

using namespace norllm;
using namespace norllm::config;

TEST_CASE("config parses key = value lines with comments") {
  auto cfg = parse_config("# workspace\n"
                          "dedup.seed = 42\n"
                          "dedup.near_threshold = 0.8   # default\n"
                          "paths.workdir = /tmp/work dir\n"
                          "\n"
                          "tokenizer.target_size=5000\n");
  CHECK(cfg.get_int("dedup.seed", 0) == 42);
  CHECK(cfg.get_double("dedup.near_threshold", 0.0) == Catch::Approx(0.8));
  CHECK(cfg.get("paths.workdir") == "/tmp/work dir");
  CHECK(cfg.get_int("tokenizer.target_size", 0) == 5000);
  CHECK(cfg.get("absent", "fallback") == "fallback");
  CHECK_FALSE(cfg.has("absent"));
}

TEST_CASE("config rejects malformed lines") {
  CHECK_THROWS_AS(parse_config("just words\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("= value\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("a = b\nnot a pair\n"), ValidationError);
}

TEST_CASE("config type errors carry the key name") {
  auto cfg = parse_config("k = abc\n");
  try {
    cfg.get_int("k", 0);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("'k'") != std::string::npos);
  }
}
