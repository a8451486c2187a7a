#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "norllm/errors.hpp"
#include "norllm/utf8.hpp"

namespace norllm::instruct {

enum class Kategori { NorskKultur, OrdOgUttrykk, Leseforstaelse, Other };
enum class Oppgavetype { Tekstsvar, Flervalg, Oppsummering };

inline constexpr std::array<std::string_view, 4> kKategoriNames = {
    "NorskKultur", "OrdOgUttrykk", "Leseforstaelse", "Other"};
inline constexpr std::array<std::string_view, 3> kOppgavetypeNames = {"Tekstsvar", "Flervalg",
                                                                      "Oppsummering"};

inline std::string_view to_string(Kategori k) { return kKategoriNames[size_t(k)]; }
inline std::string_view to_string(Oppgavetype t) { return kOppgavetypeNames[size_t(t)]; }

namespace detail_instruct {

// case- and diacritic-insensitive key: lowercase ASCII, å->a ø->o æ->ae,
// spaces and punctuation dropped
inline std::string fold_label(std::string_view s) {
  std::string out;
  auto cps = utf8::decode_or_throw(s);
  for (uint32_t cp : cps) {
    if (cp >= 'A' && cp <= 'Z') cp = cp - 'A' + 'a';
    switch (cp) {
      case 0xE5: case 0xC5: out += 'a'; continue;          // å Å
      case 0xF8: case 0xD8: out += 'o'; continue;          // ø Ø
      case 0xE6: case 0xC6: out += "ae"; continue;         // æ Æ
      case 0xE4: case 0xC4: out += 'a'; continue;          // ä Ä
      case 0xF6: case 0xD6: out += 'o'; continue;          // ö Ö
      case 0xE9: case 0xC9: case 0xE8: case 0xC8: out += 'e'; continue;
    }
    if (cp >= 'a' && cp <= 'z') out += char(cp);
  }
  return out;
}

} // namespace detail_instruct

// Unknown category strings map to Other; a warning callback can observe them.
inline Kategori parse_kategori(std::string_view s,
                               const std::function<void(std::string_view)>& warn = {}) {
  std::string key = detail_instruct::fold_label(s);
  if (key == "norskkultur") return Kategori::NorskKultur;
  if (key == "ordoguttrykk") return Kategori::OrdOgUttrykk;
  if (key == "leseforstaelse") return Kategori::Leseforstaelse;
  if (key == "other" || key == "annet") return Kategori::Other;
  if (warn) warn(s);
  return Kategori::Other;
}

inline Oppgavetype parse_oppgavetype(std::string_view s) {
  std::string key = detail_instruct::fold_label(s);
  if (key == "tekstsvar") return Oppgavetype::Tekstsvar;
  if (key == "flervalg") return Oppgavetype::Flervalg;
  if (key == "oppsummering") return Oppgavetype::Oppsummering;
  throw ValidationError("unknown oppgavetype: " + std::string(s));
}

struct InstructionRecord {
  std::string instruksjon;
  std::optional<std::string> input;  // absent or literal "N/A" means no input
  std::string output;
  Kategori kategori = Kategori::Other;
  std::string domene;
  Oppgavetype oppgavetype = Oppgavetype::Tekstsvar;

  bool has_input() const { return input.has_value() && *input != "N/A"; }
};

struct Violation {
  std::string field;
  std::string rule;
};

// Letters offered by a multiple-choice input: uppercase A-Z followed by '.'
// at the start of the input or after whitespace.
inline std::set<char> option_letters(std::string_view input) {
  std::set<char> letters;
  for (size_t i = 0; i + 1 < input.size(); ++i) {
    char c = input[i];
    if (c < 'A' || c > 'Z' || input[i + 1] != '.') continue;
    if (i == 0 || input[i - 1] == ' ' || input[i - 1] == '\n' || input[i - 1] == '\t')
      letters.insert(c);
  }
  return letters;
}

inline std::vector<Violation> validate_record(const InstructionRecord& r) {
  std::vector<Violation> v;
  if (r.instruksjon.empty()) v.push_back({"instruksjon", "must be non-empty"});
  if (r.output.empty()) v.push_back({"output", "must be non-empty"});
  if (r.oppgavetype == Oppgavetype::Flervalg) {
    if (!r.has_input()) {
      v.push_back({"input", "Flervalg requires answer options in input"});
    } else if (!r.output.empty()) {
      auto offered = option_letters(*r.input);
      // output: comma-separated option letters
      std::string_view out = r.output;
      size_t pos = 0;
      while (pos <= out.size()) {
        size_t comma = out.find(',', pos);
        std::string_view part =
            out.substr(pos, comma == std::string_view::npos ? out.size() - pos : comma - pos);
        while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
        if (part.size() != 1 || !offered.count(part[0]))
          v.push_back({"output", "Flervalg output must be a comma-separated subset of offered "
                                 "option letters; got '" +
                                     std::string(part) + "'"});
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    }
  }
  return v;
}

// Verbatim fine-tuning templates; the trailing "Answer:" is byte-exact.
inline std::string render_prompt(const InstructionRecord& r) {
  if (r.has_input()) return r.instruksjon + "\n\n" + *r.input + "\nAnswer:";
  return r.instruksjon + "\n\nAnswer:";
}

struct Tally {
  std::map<Oppgavetype, int64_t> by_oppgavetype;
  std::map<Kategori, int64_t> by_kategori;
  int64_t total = 0;
};

inline Tally tally(const std::vector<InstructionRecord>& records) {
  Tally t;
  for (auto type : {Oppgavetype::Tekstsvar, Oppgavetype::Flervalg, Oppgavetype::Oppsummering})
    t.by_oppgavetype[type] = 0;
  for (auto kat : {Kategori::NorskKultur, Kategori::OrdOgUttrykk, Kategori::Leseforstaelse,
                   Kategori::Other})
    t.by_kategori[kat] = 0;
  for (const auto& r : records) {
    ++t.by_oppgavetype[r.oppgavetype];
    ++t.by_kategori[r.kategori];
    ++t.total;
  }
  return t;
}

// Two-section CSV: oppgavetype rows, then kategori rows.
inline std::vector<std::vector<std::string>> tally_to_csv_rows(const Tally& t) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"section", "key", "count"});
  for (const auto& [k, c] : t.by_oppgavetype)
    rows.push_back({"oppgavetype", std::string(to_string(k)), std::to_string(c)});
  for (const auto& [k, c] : t.by_kategori)
    rows.push_back({"kategori", std::string(to_string(k)), std::to_string(c)});
  return rows;
}

// ---- JSON Lines ----
// Field names as in the annotation format: instruksjon, input, output,
// kategori, domene, oppgavetype.

inline nlohmann::json to_json(const InstructionRecord& r) {
  nlohmann::json j;
  j["instruksjon"] = r.instruksjon;
  j["input"] = r.input.has_value() ? nlohmann::json(*r.input) : nlohmann::json(nullptr);
  j["output"] = r.output;
  j["kategori"] = std::string(to_string(r.kategori));
  j["domene"] = r.domene;
  j["oppgavetype"] = std::string(to_string(r.oppgavetype));
  return j;
}

inline InstructionRecord record_from_json(const nlohmann::json& j,
                                          const std::function<void(std::string_view)>& warn = {}) {
  InstructionRecord r;
  r.instruksjon = j.at("instruksjon").get<std::string>();
  if (j.contains("input") && !j.at("input").is_null()) r.input = j.at("input").get<std::string>();
  r.output = j.at("output").get<std::string>();
  r.kategori = parse_kategori(j.at("kategori").get<std::string>(), warn);
  if (j.contains("domene") && !j.at("domene").is_null())
    r.domene = j.at("domene").get<std::string>();
  r.oppgavetype = parse_oppgavetype(j.at("oppgavetype").get<std::string>());
  return r;
}

inline std::vector<InstructionRecord> read_records(
    const std::string& path, const std::function<void(std::string_view)>& warn = {}) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::vector<InstructionRecord> records;
  std::string line;
  size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      records.push_back(record_from_json(nlohmann::json::parse(line), warn));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return records;
}

inline void write_records(const std::string& path, const std::vector<InstructionRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for write: " + path);
  for (const auto& r : records) f << to_json(r).dump() << "\n";
  if (!f) throw IoError("write failed: " + path);
}

} // namespace norllm::instruct
