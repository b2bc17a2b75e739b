#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aekg {

// Field names follow the FAERS XML element names, lowercased.

struct ReactionRecord {
  std::string term;  // reactionmeddrapt

  bool operator==(const ReactionRecord&) const = default;
};

struct DrugRecord {
  std::string medicinal_product;                  // medicinalproduct
  std::optional<std::string> characterization;    // drugcharacterization
  std::vector<std::string> active_substances;     // activesubstancename*

  bool operator==(const DrugRecord&) const = default;
};

struct PatientRecord {
  std::optional<std::string> onset_age;        // patientonsetage
  std::optional<std::string> onset_age_unit;   // patientonsetageunit
  std::optional<std::string> age_group;        // patientagegroup
  std::optional<std::string> sex;              // patientsex
  std::vector<DrugRecord> drugs;
  std::vector<ReactionRecord> reactions;

  bool operator==(const PatientRecord&) const = default;
};

struct SafetyReport {
  std::string report_id;                     // safetyreportid
  std::optional<std::string> receive_date;   // receivedate, YYYYMMDD source text
  std::optional<std::string> serious;
  PatientRecord patient;

  bool operator==(const SafetyReport&) const = default;
};

// ---------------------------------------------------------------------------
// Coded vocabularies

struct VocabularyTable {
  std::string field_name;
  std::map<std::string, std::string> entries;  // code -> term

  bool operator==(const VocabularyTable&) const = default;
};

// The six patient age-group codes used by FAERS.
VocabularyTable builtin_age_group_table();

// Reads a `code<TAB>term` file; blank lines and lines starting with '#' are
// skipped. Throws Error(invalid_argument) on a malformed line or a repeated
// code.
VocabularyTable read_vocabulary(std::istream& in, std::string field_name);

class VocabularySet {
 public:
  // Seeded with the built-in age-group table.
  VocabularySet();

  static VocabularySet empty();

  // Replaces any existing table for the same field.
  void add(VocabularyTable table);

  // Loads every `<field>.tsv` file in `dir`; the file stem names the field.
  void load_directory(const std::filesystem::path& dir);

  const VocabularyTable* find(std::string_view field_name) const;
  std::size_t size() const { return tables_.size(); }

 private:
  struct Empty {};
  explicit VocabularySet(Empty) {}
  std::map<std::string, VocabularyTable, std::less<>> tables_;
};

enum class DecodeStatus { mapped, passthrough, unknown_code };

struct Decoded {
  DecodeStatus status;
  std::string value;  // the term, or the input code for passthrough/unknown
};

// Looks `code` up in the table for `field_name`. A missing table is a
// pass-through; a table that lacks the code yields unknown_code, which callers
// report as a warning.
Decoded decode_code(std::string_view field_name, std::string_view code,
                    const VocabularySet& tables);

// ---------------------------------------------------------------------------
// Completeness rule

enum class DropReason { missing_drug, missing_reaction, missing_report_id };

std::string_view to_string(DropReason reason);
std::optional<DropReason> drop_reason_from_string(std::string_view s);

struct ValidationOutcome {
  bool kept = true;
  std::vector<DropReason> reasons;

  bool operator==(const ValidationOutcome&) const = default;
};

ValidationOutcome validate_report(const SafetyReport& report);

}  // namespace aekg
