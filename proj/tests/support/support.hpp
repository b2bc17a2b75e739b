#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aekg/faers.hpp"
#include "aekg/model.hpp"
#include "aekg/rdf/graph.hpp"

namespace aekg::testkit {

using Rng = std::mt19937_64;

// ---- fixtures ----------------------------------------------------------------

// One report, one drug, one reaction.
std::string minimal_faers_xml();

// Report "R1": ASPIRIN {ACETYLSALICYLIC ACID}, IBUPROFEN {IBUPROFEN}; NAUSEA.
SafetyReport one_report_two_drugs();
CanonicalBatch one_report_batch();

SafetyReport make_report(std::string id,
                         std::vector<std::pair<std::string, std::vector<std::string>>> drugs,
                         std::vector<std::string> reactions);

// Two patients (A, B) that share the symptom "Headache" and the vaccine FLU.
struct VaersFixture {
  std::string data;
  std::string symptoms;
  std::string vaccines;
};
VaersFixture vaers_shared_symptom_fixture();

// ---- generators --------------------------------------------------------------

struct GenOptions {
  double p_no_drugs = 0.15;
  double p_no_reactions = 0.15;
  double p_no_id = 0.05;
  int max_drugs = 4;
  int max_reactions = 3;
  int max_substances = 3;
  // Quotes, backslashes, markup characters and non-ASCII text in names.
  bool exotic_text = true;
  // Leading/trailing and doubled spaces in drug names and terms, which only
  // survive paths that do not trim.
  bool untrimmed_names = false;
};

std::string random_text(Rng& rng, std::size_t min_len, std::size_t max_len, bool exotic);

SafetyReport random_report(Rng& rng, std::size_t index, const GenOptions& options = {});
std::vector<SafetyReport> random_reports(Rng& rng, std::size_t n,
                                         const GenOptions& options = {});
CanonicalBatch random_batch(Rng& rng, std::size_t n, const GenOptions& options = {});

// Serializes reports as FAERS-style XML (ichicsr root).
std::string to_faers_xml(const std::vector<SafetyReport>& reports);

struct TripleGenOptions {
  std::size_t triples = 30;
  std::size_t blank_nodes = 4;
  bool control_characters = false;  // XML 1.0 cannot carry most of them
};

rdf::TripleGraph random_triple_graph(Rng& rng, const TripleGenOptions& options = {});

// ---- oracles -----------------------------------------------------------------

// True when a bijection between blank nodes maps one triple set onto the
// other. `why` receives a reason on failure.
bool isomorphic(const rdf::TripleGraph& a, const rdf::TripleGraph& b,
                std::string* why = nullptr);

// Well-formedness as judged by expat; returns the error message, if any.
std::optional<std::string> xml_well_formedness_error(const std::string& document);

// Checks that every single-quoted Cypher string literal in `script` is
// terminated on its line and uses only valid escapes. Comment lines are
// skipped. Returns the first problem found.
std::optional<std::string> cypher_literal_error(const std::string& script);

// Number of lines that begin with `prefix` after leading whitespace.
std::size_t count_lines_starting_with(const std::string& text, const std::string& prefix);

// ---- files -------------------------------------------------------------------

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Test-only ZIP writer: stored or raw-deflate entries, optional ZIP64 records.
class ZipWriter {
 public:
  void add(std::string name, std::string data, bool deflate = true);
  std::string bytes(bool zip64 = false) const;
  void write(const std::filesystem::path& path, bool zip64 = false) const;

 private:
  struct Item {
    std::string name;
    std::string data;
    bool deflate;
  };
  std::vector<Item> items_;
};

// Resident set size high-water mark of this process, in bytes.
std::uint64_t peak_rss_bytes();

}  // namespace aekg::testkit
