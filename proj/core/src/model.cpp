#include "aekg/model.hpp"

#include <algorithm>
#include <fstream>

#include "aekg/error.hpp"
#include "aekg/text.hpp"

namespace aekg {

VocabularyTable builtin_age_group_table() {
  return VocabularyTable{"patientagegroup",
                         {{"1", "Neonate"},
                          {"2", "Infant"},
                          {"3", "Child"},
                          {"4", "Adolescent"},
                          {"5", "Adult"},
                          {"6", "Elderly"}}};
}

VocabularyTable read_vocabulary(std::istream& in, std::string field_name) {
  VocabularyTable table{std::move(field_name), {}};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorCode::invalid_argument,
                  "vocabulary " + table.field_name + " line " +
                      std::to_string(lineno) + ": expected code<TAB>term");
    std::string code(text::trim(std::string_view(line).substr(0, tab)));
    std::string term(text::trim(std::string_view(line).substr(tab + 1)));
    if (code.empty())
      throw Error(ErrorCode::invalid_argument,
                  "vocabulary " + table.field_name + " line " +
                      std::to_string(lineno) + ": empty code");
    if (!table.entries.emplace(code, term).second)
      throw Error(ErrorCode::invalid_argument,
                  "vocabulary " + table.field_name + " line " +
                      std::to_string(lineno) + ": duplicate code '" + code +
                      "'");
  }
  return table;
}

VocabularySet::VocabularySet() { add(builtin_age_group_table()); }

VocabularySet VocabularySet::empty() { return VocabularySet(Empty{}); }

void VocabularySet::add(VocabularyTable table) {
  auto name = text::to_lower_ascii(table.field_name);
  table.field_name = name;
  tables_.insert_or_assign(std::move(name), std::move(table));
}

void VocabularySet::load_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec)
    throw Error(ErrorCode::io_error,
                "cannot read vocabulary directory " + dir.string() + ": " +
                    ec.message());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : it)
    if (entry.is_regular_file() && entry.path().extension() == ".tsv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in)
      throw Error(ErrorCode::io_error, "cannot open " + file.string());
    add(read_vocabulary(in, file.stem().string()));
  }
}

const VocabularyTable* VocabularySet::find(std::string_view field_name) const {
  auto it = tables_.find(text::to_lower_ascii(field_name));
  return it == tables_.end() ? nullptr : &it->second;
}

Decoded decode_code(std::string_view field_name, std::string_view code,
                    const VocabularySet& tables) {
  const auto* table = tables.find(field_name);
  if (!table) return {DecodeStatus::passthrough, std::string(code)};
  auto it = table->entries.find(std::string(text::trim(code)));
  if (it == table->entries.end())
    return {DecodeStatus::unknown_code, std::string(code)};
  return {DecodeStatus::mapped, it->second};
}

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::missing_drug:
      return "missing_drug";
    case DropReason::missing_reaction:
      return "missing_reaction";
    case DropReason::missing_report_id:
      return "missing_report_id";
  }
  return "unknown";
}

std::optional<DropReason> drop_reason_from_string(std::string_view s) {
  for (auto r : {DropReason::missing_drug, DropReason::missing_reaction,
                 DropReason::missing_report_id})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

ValidationOutcome validate_report(const SafetyReport& report) {
  ValidationOutcome out;
  if (report.patient.drugs.empty())
    out.reasons.push_back(DropReason::missing_drug);
  if (report.patient.reactions.empty())
    out.reasons.push_back(DropReason::missing_reaction);
  if (text::trim(report.report_id).empty())
    out.reasons.push_back(DropReason::missing_report_id);
  out.kept = out.reasons.empty();
  return out;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_xml: return "malformed-xml";
    case ErrorCode::missing_root: return "missing-root";
    case ErrorCode::malformed_json: return "malformed-json";
    case ErrorCode::schema_violation: return "schema-violation";
    case ErrorCode::missing_id_column: return "missing-id-column";
    case ErrorCode::empty_key: return "empty-key";
    case ErrorCode::dangling_endpoint: return "dangling-endpoint";
    case ErrorCode::literal_subject: return "literal-as-subject";
    case ErrorCode::non_iri_predicate: return "non-iri-predicate";
    case ErrorCode::invalid_term: return "invalid-term";
    case ErrorCode::unsplittable_predicate: return "unsplittable-predicate-iri";
    case ErrorCode::syntax_error: return "syntax-error";
    case ErrorCode::undeclared_property: return "undeclared-property";
    case ErrorCode::undeclared_filler: return "undeclared-filler";
    case ErrorCode::empty_identifier: return "empty-identifier";
    case ErrorCode::http_failure: return "http-failure";
    case ErrorCode::template_error: return "template-error";
    case ErrorCode::disk_full: return "disk-full";
    case ErrorCode::corrupt_archive: return "corrupt-archive";
    case ErrorCode::path_traversal: return "path-traversal-entry";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace aekg
