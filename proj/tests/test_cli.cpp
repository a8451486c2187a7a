// End-to-end checks of the norllm binary: subcommand wiring, file formats,
// and exit codes.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "norllm/csv.hpp"
#include "norllm/instruct.hpp"

namespace fs = std::filesystem;

#ifndef NORLLM_CLI_PATH
#error "NORLLM_CLI_PATH must be defined"
#endif

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("norllm_cli_" + std::to_string(std::rand()));
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run_cli(const std::string& args) {
  std::string cmd = std::string(NORLLM_CLI_PATH) + " " + args + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

void write(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
}

} // namespace

TEST_CASE("ingest, preprocess, dedup, tokenizer, stats pipeline") {
  Sandbox sb;
  write(sb.path("a.txt"), "Hei  verden. Dette er en liten test. Hei  verden.\n");
  write(sb.path("b.txt"), "Hei verden. Dette er en liten test. Hei verden.\n");
  write(sb.path("c.txt"), "Noe helt annet innhold om fjell og vidde og hav.\n");

  REQUIRE(run_cli("ingest --source NRK --source-class IndustryPartner --lang nb --normalize -o " +
                  sb.path("docs.jsonl") + " " + sb.path("a.txt") + " " + sb.path("b.txt") + " " +
                  sb.path("c.txt")) == 0);

  REQUIRE(run_cli("preprocess -o " + sb.path("norm.jsonl") + " " + sb.path("docs.jsonl")) == 0);

  // a and b normalize to the same text, so dedup keeps 2 of 3
  REQUIRE(run_cli("dedup -o " + sb.path("kept.jsonl") + " --report " + sb.path("drops.jsonl") +
                  " " + sb.path("norm.jsonl")) == 0);
  auto kept = norllm::corpus::read_documents(sb.path("kept.jsonl"));
  CHECK(kept.size() == 2);
  auto drops = slurp(sb.path("drops.jsonl"));
  CHECK(drops.find("\"reason\":\"exact\"") != std::string::npos);

  REQUIRE(run_cli("tokenizer train --target-size 270 -o " + sb.path("vocab.txt") + " " +
                  sb.path("kept.jsonl")) == 0);
  REQUIRE(run_cli("tokenizer encode --vocab " + sb.path("vocab.txt") +
                  " --text \"Hei verden\" --check-roundtrip") == 0);
  REQUIRE(run_cli("tokenizer fertility --vocab " + sb.path("vocab.txt") + " -o " +
                  sb.path("fert.csv") + " " + sb.path("kept.jsonl")) == 0);
  CHECK(slurp(sb.path("fert.csv")).find("tokens_per_word") != std::string::npos);

  REQUIRE(run_cli("stats --vocab " + sb.path("vocab.txt") + " --version V1 -o " +
                  sb.path("stats.csv") + " " + sb.path("kept.jsonl")) == 0);
  auto stats_rows = norllm::csv::read_file(sb.path("stats.csv"));
  CHECK(stats_rows[0] ==
        std::vector<std::string>{"version", "source_class_or_lang", "kind", "tokens"});
}

TEST_CASE("langid training and identification through the CLI") {
  Sandbox sb;
  // labeled documents from two fixture languages
  std::string docs;
  auto split = fixtures::load_langid_split({"nb", "en"});
  size_t id = 0;
  for (const auto& [text, lang] : split.train) {
    nlohmann::json j;
    j["id"] = "t" + std::to_string(id++);
    j["text"] = text;
    j["source"] = "fixture";
    j["source_class"] = "Other";
    j["lang"] = lang;
    j["timestamp"] = nullptr;
    j["meta"] = nlohmann::json::object();
    docs += j.dump() + "\n";
  }
  write(sb.path("labeled.jsonl"), docs);
  REQUIRE(run_cli("preprocess --train-langid --model-out " + sb.path("langid.model") + " " +
                  sb.path("labeled.jsonl")) == 0);

  nlohmann::json j;
  j["id"] = "q";
  j["text"] = "The quick brown fox jumps over the lazy dog";
  j["source"] = "fixture";
  j["source_class"] = "Other";
  j["lang"] = nullptr;
  j["timestamp"] = nullptr;
  j["meta"] = nlohmann::json::object();
  write(sb.path("query.jsonl"), j.dump() + "\n");
  REQUIRE(run_cli("preprocess --langid-model " + sb.path("langid.model") + " -o " +
                  sb.path("tagged.jsonl") + " " + sb.path("query.jsonl")) == 0);
  auto tagged = norllm::corpus::read_documents(sb.path("tagged.jsonl"));
  REQUIRE(tagged.size() == 1);
  CHECK(tagged[0].lang == "en");
}

TEST_CASE("instruct subcommands against the appendix fixture") {
  Sandbox sb;
  std::string fixture = fixtures::fixture_path("instruct_appendix.jsonl");

  REQUIRE(run_cli("instruct validate " + fixture) == 0);

  REQUIRE(run_cli("instruct render " + fixture + " --index 1 -o " + sb.path("p.txt")) == 0);
  auto records = norllm::instruct::read_records(fixture);
  CHECK(slurp(sb.path("p.txt")) ==
        records[1].instruksjon + "\n\n" + *records[1].input + "\nAnswer:");

  REQUIRE(run_cli("instruct tally " + fixture + " -o " + sb.path("tally.csv")) == 0);
  auto rows = norllm::csv::read_file(sb.path("tally.csv"));
  bool found = false;
  for (const auto& r : rows)
    if (r[0] == "oppgavetype" && r[1] == "Tekstsvar") {
      CHECK(r[2] == "2");
      found = true;
    }
  CHECK(found);

  // validation failure exits 1
  write(sb.path("bad.jsonl"),
        R"({"instruksjon":"x","input":null,"output":"","kategori":"Annet","domene":"d","oppgavetype":"Tekstsvar"})"
        "\n");
  CHECK(run_cli("instruct validate " + sb.path("bad.jsonl")) == 1);
}

TEST_CASE("eval score, mauve, and reward subcommands") {
  Sandbox sb;
  write(sb.path("pairs.jsonl"),
        R"({"id":"1","candidate":"a b c d","references":["a b c d e f g h"]})"
        "\n"
        R"({"id":"2","candidate":"a b c d","references":["a b c d"]})"
        "\n");
  REQUIRE(run_cli("eval score " + sb.path("pairs.jsonl") + " -o " + sb.path("m.csv")) == 0);
  auto rows = norllm::csv::read_file(sb.path("m.csv"));
  bool saw_bleu = false;
  for (const auto& r : rows)
    if (r[0] == "1" && r[1] == "BLEU") {
      CHECK(r[2] == "36.79");
      saw_bleu = true;
    }
  CHECK(saw_bleu);

  write(sb.path("preds.jsonl"),
        R"({"id":"1","pred":"p","gold":"p"})"
        "\n"
        R"({"id":"2","pred":"n","gold":"p"})"
        "\n");
  REQUIRE(run_cli("eval score " + sb.path("preds.jsonl") + " -o " + sb.path("cls.csv")) == 0);
  CHECK(slurp(sb.path("cls.csv")).find("Accuracy,50.00") != std::string::npos);

  write(sb.path("p.csv"), "0.0,0.0\n0.1,0.0\n1.0,1.0\n1.1,1.0\n");
  REQUIRE(run_cli("eval mauve --p " + sb.path("p.csv") + " --q " + sb.path("p.csv") +
                  " --k 2 -o " + sb.path("mauve.csv")) == 0);
  CHECK(slurp(sb.path("mauve.csv")).find("MAUVE,1.0000,unit") != std::string::npos);

  write(sb.path("cands.csv"), "best,1.0,0.0\nworst,0.0,1.0\n");
  write(sb.path("golden.csv"), "1.0,0.0\n");
  REQUIRE(run_cli("eval reward --candidates " + sb.path("cands.csv") + " --golden " +
                  sb.path("golden.csv") + " -o " + sb.path("rank.csv")) == 0);
  auto rank = norllm::csv::read_file(sb.path("rank.csv"));
  REQUIRE(rank.size() == 3);
  CHECK(rank[1] == std::vector<std::string>{"1", "best", "1.000000"});
}

TEST_CASE("report table renders the golden bytes from matrix JSON") {
  Sandbox sb;
  auto m = fixtures::conversation_table();
  nlohmann::json j;
  j["models"] = m.models;
  j["rows"] = nlohmann::json::array();
  const char* scales[] = {"percent", "percent", "percent", "percent", "unit"};
  for (size_t i = 0; i < m.metrics_or_tasks.size(); ++i) {
    nlohmann::json row;
    row["name"] = m.metrics_or_tasks[i];
    row["scale"] = scales[i];
    row["values"] = nlohmann::json::array();
    for (const auto& v : m.values[i]) row["values"].push_back(*v);
    j["rows"].push_back(row);
  }
  write(sb.path("matrix.json"), j.dump());
  REQUIRE(run_cli("report table " + sb.path("matrix.json") + " -o " + sb.path("table.txt")) == 0);
  CHECK(slurp(sb.path("table.txt")) ==
        fixtures::read_file(fixtures::golden_path("table_conversation.txt")));
}

TEST_CASE("report borda and series match the library results") {
  Sandbox sb;
  write(sb.path("scores.json"),
        R"({"task1":{"A":3,"B":2,"C":1},"task2":{"A":5,"B":9,"C":1}})");
  REQUIRE(run_cli("report borda " + sb.path("scores.json") + " -o " + sb.path("borda.csv")) == 0);
  auto rows = norllm::csv::read_file(sb.path("borda.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[1] == std::vector<std::string>{"A", "3.0"});
  CHECK(rows[2] == std::vector<std::string>{"B", "3.0"});
  CHECK(rows[3] == std::vector<std::string>{"C", "0.0"});

  REQUIRE(run_cli("report series " + fixtures::fixture_path("stats_v1.csv") + " " +
                  fixtures::fixture_path("stats_v2.csv") + " " +
                  fixtures::fixture_path("stats_v3.csv") + " -o " + sb.path("series.csv")) == 0);
  CHECK(slurp(sb.path("series.csv")) ==
        fixtures::read_file(fixtures::golden_path("fig1b_series.csv")));
}

TEST_CASE("config file supplies defaults") {
  Sandbox sb;
  write(sb.path("ws.conf"), "dedup.seed = 9\ndedup.near_threshold = 0.9\n");
  write(sb.path("one.jsonl"),
        R"({"id":"a","text":"litt tekst her","source":"s","source_class":"Other","lang":"nb","timestamp":null,"meta":{}})"
        "\n");
  REQUIRE(run_cli("--config " + sb.path("ws.conf") + " dedup -o " + sb.path("kept.jsonl") +
                  " --report " + sb.path("drops.jsonl") + " " + sb.path("one.jsonl")) == 0);
  CHECK(slurp(sb.path("drops.jsonl")).empty());
}

TEST_CASE("exit codes distinguish error classes") {
  Sandbox sb;
  // missing input file -> IoError -> 2
  CHECK(run_cli("instruct tally " + sb.path("absent.jsonl")) == 2);
  // malformed JSONL -> ValidationError -> 1
  write(sb.path("garbage.jsonl"), "not json\n");
  CHECK(run_cli("instruct tally " + sb.path("garbage.jsonl")) == 1);
  // precondition violation -> 3
  write(sb.path("rec.jsonl"),
        R"({"instruksjon":"x","input":null,"output":"y","kategori":"Annet","domene":"d","oppgavetype":"Tekstsvar"})"
        "\n");
  CHECK(run_cli("instruct render " + sb.path("rec.jsonl") + " --index 5") == 3);
  // bad embedding dimensions -> precondition -> 3
  write(sb.path("p.csv"), "0.0,0.0\n");
  write(sb.path("q.csv"), "0.0,0.0,0.0\n");
  CHECK(run_cli("eval mauve --p " + sb.path("p.csv") + " --q " + sb.path("q.csv") + " --k 1") ==
        3);
}
