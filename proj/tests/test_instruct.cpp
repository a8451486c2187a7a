#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "norllm/instruct.hpp"

using namespace norllm;
using namespace norllm::instruct;

static InstructionRecord flervalg_record() {
  InstructionRecord r;
  r.instruksjon = "Hvilke av disse følelsene forbindes ikke med 'å ha sommerfugler i "
                  "magen'?";
  r.input = "A. Nervøsitet\nB. Sorg\nC. Spent\nD. Sinne\nE. Glede";
  r.output = "B, D";
  r.kategori = Kategori::OrdOgUttrykk;
  r.domene = "Språk";
  r.oppgavetype = Oppgavetype::Flervalg;
  return r;
}

TEST_CASE("multiple-choice record with subset output is valid") {
  CHECK(validate_record(flervalg_record()).empty());
}

TEST_CASE("option letter outside the offered set is a violation") {
  auto r = flervalg_record();
  r.output = "F";
  auto v = validate_record(r);
  REQUIRE(v.size() == 1);
  CHECK(v[0].field == "output");
}

TEST_CASE("empty output and empty instruction are violations") {
  InstructionRecord r;
  r.instruksjon = "Spørsmål";
  r.output = "";
  auto v = validate_record(r);
  REQUIRE(v.size() == 1);
  CHECK(v[0].field == "output");
  r.instruksjon = "";
  CHECK(validate_record(r).size() == 2);
}

TEST_CASE("prompt templates are byte-exact") {
  InstructionRecord with;
  with.instruksjon = "Oppsummer følgende tekst kort.";
  with.input = "tekst";
  with.output = "x";
  CHECK(render_prompt(with) == "Oppsummer følgende tekst kort.\n\ntekst\nAnswer:");

  InstructionRecord without;
  without.instruksjon = "X";
  without.output = "y";
  CHECK(render_prompt(without) == "X\n\nAnswer:");

  without.input = "N/A";
  CHECK(render_prompt(without) == "X\n\nAnswer:");
}

TEST_CASE("rendered prompts end with Answer:") {
  for (const auto& r : read_records(fixtures::fixture_path("instruct_appendix.jsonl"))) {
    auto p = render_prompt(r);
    REQUIRE(p.size() >= 7);
    CHECK(p.substr(p.size() - 7) == "Answer:");
  }
}

TEST_CASE("appendix records parse, validate, and render with exact bytes") {
  auto records = read_records(fixtures::fixture_path("instruct_appendix.jsonl"));
  REQUIRE(records.size() == 4);

  CHECK(records[0].kategori == Kategori::Leseforstaelse);
  CHECK(records[0].oppgavetype == Oppgavetype::Tekstsvar);
  CHECK(records[1].oppgavetype == Oppgavetype::Oppsummering);
  CHECK(records[2].kategori == Kategori::OrdOgUttrykk);
  CHECK(records[2].oppgavetype == Oppgavetype::Flervalg);
  CHECK(records[3].kategori == Kategori::NorskKultur);
  CHECK_FALSE(records[3].has_input());  // literal N/A input

  for (const auto& r : records) CHECK(validate_record(r).empty());

  // with-input template, byte for byte
  auto p0 = render_prompt(records[0]);
  CHECK(p0 == records[0].instruksjon + "\n\n" + *records[0].input + "\nAnswer:");
  // no-input template for the N/A record
  auto p3 = render_prompt(records[3]);
  CHECK(p3 == records[3].instruksjon + "\n\nAnswer:");
}

TEST_CASE("kategori parsing is case- and diacritic-insensitive") {
  CHECK(parse_kategori("Norsk kultur") == Kategori::NorskKultur);
  CHECK(parse_kategori("NORSK KULTUR") == Kategori::NorskKultur);
  CHECK(parse_kategori("Ord og uttrykk") == Kategori::OrdOgUttrykk);
  CHECK(parse_kategori("Leseforståelse") == Kategori::Leseforstaelse);
  CHECK(parse_kategori("leseforstaelse") == Kategori::Leseforstaelse);
  bool warned = false;
  CHECK(parse_kategori("Helt ukjent", [&](std::string_view) { warned = true; }) ==
        Kategori::Other);
  CHECK(warned);
  CHECK(parse_oppgavetype("flervalg") == Oppgavetype::Flervalg);
  CHECK_THROWS_AS(parse_oppgavetype("essay"), ValidationError);
}

TEST_CASE("tally counts both groupings to the record total") {
  CHECK(tally({}).total == 0);

  std::vector<InstructionRecord> records;
  for (int i = 0; i < 2; ++i) {
    InstructionRecord r;
    r.instruksjon = "sp";
    r.output = "svar";
    r.oppgavetype = Oppgavetype::Tekstsvar;
    r.kategori = Kategori::NorskKultur;
    records.push_back(r);
  }
  auto f = flervalg_record();
  records.push_back(f);
  auto t = tally(records);
  CHECK(t.by_oppgavetype.at(Oppgavetype::Tekstsvar) == 2);
  CHECK(t.by_oppgavetype.at(Oppgavetype::Flervalg) == 1);
  CHECK(t.by_oppgavetype.at(Oppgavetype::Oppsummering) == 0);
  CHECK(t.total == 3);
  int64_t sum_type = 0, sum_kat = 0;
  for (auto& [k, v] : t.by_oppgavetype) sum_type += v;
  for (auto& [k, v] : t.by_kategori) sum_kat += v;
  CHECK(sum_type == t.total);
  CHECK(sum_kat == t.total);
}

TEST_CASE("records round-trip through JSON lines") {
  auto records = read_records(fixtures::fixture_path("instruct_appendix.jsonl"));
  write_records("instruct_rt.jsonl", records);
  auto loaded = read_records("instruct_rt.jsonl");
  REQUIRE(loaded.size() == records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    CHECK(loaded[i].instruksjon == records[i].instruksjon);
    CHECK(loaded[i].input == records[i].input);
    CHECK(loaded[i].output == records[i].output);
    CHECK(loaded[i].kategori == records[i].kategori);
    CHECK(loaded[i].oppgavetype == records[i].oppgavetype);
  }
  std::remove("instruct_rt.jsonl");
}
