#include "aekg/vaers.hpp"

#include <map>
#include <optional>
#include <sstream>

#include "aekg/csv.hpp"
#include "aekg/text.hpp"

namespace aekg {

namespace {

std::string decode_cell(std::string_view raw, VaersEncoding enc) {
  switch (enc) {
    case VaersEncoding::latin1:
      return text::to_utf8(raw, text::SingleByteEncoding::latin1);
    case VaersEncoding::windows1252:
      return text::to_utf8(raw, text::SingleByteEncoding::windows1252);
    case VaersEncoding::utf8:
      break;
  }
  if (text::is_valid_utf8(raw)) return std::string(raw);
  return text::to_utf8(raw, text::SingleByteEncoding::windows1252);
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (text::iequals(text::trim(header[i]), name)) return i;
  return std::nullopt;
}

// Reads one file and invokes on_row(id, row) for each well-formed row.
template <typename OnRow>
void scan_file(std::istream& in, const std::string& name,
               const VaersOptions& opt, VaersFileSummary& summary,
               Diagnostics& warnings,
               std::vector<std::string>& header, OnRow on_row) {
  summary.name = name;
  CsvReader reader(in);
  if (!reader.next(header))
    throw Error(ErrorCode::missing_id_column,
                name + ": empty file, no " + opt.id_column + " column");
  // strip a UTF-8 byte order mark
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0)
    header[0].erase(0, 3);
  auto id_col = find_column(header, opt.id_column);
  if (!id_col)
    throw Error(ErrorCode::missing_id_column,
                name + ": header has no " + opt.id_column + " column");

  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;  // blank line
    ++summary.rows;
    if (row.size() != header.size()) {
      ++summary.skipped;
      warnings.push_back({"row_arity", name + " line " +
                                           std::to_string(reader.record_line()) +
                                           ": expected " +
                                           std::to_string(header.size()) +
                                           " fields, got " +
                                           std::to_string(row.size())});
      continue;
    }
    std::string id(text::trim(row[*id_col]));
    if (id.empty()) {
      ++summary.skipped;
      warnings.push_back({"blank_id", name + " line " +
                                          std::to_string(reader.record_line())});
      continue;
    }
    on_row(decode_cell(id, opt.encoding), row);
  }
}

}  // namespace

VaersEncoding parse_vaers_encoding(const std::string& name) {
  auto n = text::to_lower_ascii(text::trim(name));
  if (n == "utf-8" || n == "utf8") return VaersEncoding::utf8;
  if (n == "latin-1" || n == "latin1" || n == "iso-8859-1")
    return VaersEncoding::latin1;
  if (n == "windows-1252" || n == "cp1252") return VaersEncoding::windows1252;
  throw Error(ErrorCode::invalid_argument, "unsupported encoding '" + name + "'");
}

VaersJoin parse_vaers_files(std::istream& data_csv, std::istream& symptoms_csv,
                            std::istream& vaccine_csv,
                            const VaersOptions& opt) {
  VaersJoin out;
  std::map<std::string, VaersCase> cases;
  std::vector<std::string> header;

  scan_file(data_csv, opt.file_names[0], opt, out.data, out.warnings, header,
            [&](std::string id, const std::vector<std::string>&) {
              auto [it, inserted] = cases.try_emplace(id);
              if (!inserted)
                out.warnings.push_back({"duplicate_id", opt.file_names[0] +
                                                            ": " + id});
              it->second.vaers_id = std::move(id);
            });
  std::set<std::string> data_ids;
  for (const auto& [id, _] : cases) data_ids.insert(id);

  auto touch = [&](const std::string& id,
                   std::set<std::string>& orphans) -> VaersCase& {
    if (!data_ids.count(id)) orphans.insert(id);
    auto& c = cases[id];
    c.vaers_id = id;
    return c;
  };

  std::set<std::string> symptom_orphans;
  scan_file(symptoms_csv, opt.file_names[1], opt, out.symptoms, out.warnings,
            header, [&, cols = std::vector<std::size_t>{}](
                        std::string id, const std::vector<std::string>& row) mutable {
              if (cols.empty())
                for (const auto& name : opt.symptom_columns)
                  if (auto c = find_column(header, name)) cols.push_back(*c);
              auto& c = touch(id, symptom_orphans);
              for (auto col : cols) {
                auto cell = text::trim(row[col]);
                if (!cell.empty()) c.symptoms.insert(decode_cell(cell, opt.encoding));
              }
            });

  std::set<std::string> vaccine_orphans;
  bool vaccine_col_checked = false;
  std::optional<std::size_t> vax_col;
  scan_file(vaccine_csv, opt.file_names[2], opt, out.vaccines, out.warnings,
            header, [&](std::string id, const std::vector<std::string>& row) {
              if (!vaccine_col_checked) {
                vax_col = find_column(header, opt.vaccine_column);
                vaccine_col_checked = true;
              }
              auto& c = touch(id, vaccine_orphans);
              if (!vax_col) return;
              auto cell = text::trim(row[*vax_col]);
              if (!cell.empty()) c.vaccines.insert(decode_cell(cell, opt.encoding));
            });
  if (!find_column(header, opt.vaccine_column))
    out.warnings.push_back({"missing_column", opt.file_names[2] + ": no " +
                                                  opt.vaccine_column +
                                                  " column"});

  out.symptoms.orphan_ids.assign(symptom_orphans.begin(), symptom_orphans.end());
  out.vaccines.orphan_ids.assign(vaccine_orphans.begin(), vaccine_orphans.end());

  out.cases.reserve(cases.size());
  for (auto& [id, c] : cases) out.cases.push_back(std::move(c));
  return out;
}

std::string join_report(const VaersJoin& join) {
  std::set<std::string> orphan_union(join.symptoms.orphan_ids.begin(),
                                     join.symptoms.orphan_ids.end());
  orphan_union.insert(join.vaccines.orphan_ids.begin(),
                      join.vaccines.orphan_ids.end());
  std::size_t skipped =
      join.data.skipped + join.symptoms.skipped + join.vaccines.skipped;

  std::ostringstream os;
  os << join.cases.size() << " cases, " << orphan_union.size() << " orphans ("
     << join.symptoms.name << "=" << join.symptoms.orphan_ids.size() << ", "
     << join.vaccines.name << "=" << join.vaccines.orphan_ids.size()
     << "), skipped=" << skipped << " (" << join.data.name << "="
     << join.data.skipped << ", " << join.symptoms.name << "="
     << join.symptoms.skipped << ", " << join.vaccines.name << "="
     << join.vaccines.skipped << ")";
  for (const auto* f : {&join.symptoms, &join.vaccines}) {
    if (f->orphan_ids.empty()) continue;
    os << "\n  orphan ids in " << f->name << ":";
    for (const auto& id : f->orphan_ids) os << ' ' << id;
  }
  return os.str();
}

}  // namespace aekg
