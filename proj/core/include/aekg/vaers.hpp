#pragma once

#include <array>
#include <istream>
#include <set>
#include <string>
#include <vector>

#include "aekg/error.hpp"

namespace aekg {

// One VAERS patient record after joining the data, symptoms and vaccine files.
struct VaersCase {
  std::string vaers_id;
  std::set<std::string> symptoms;
  std::set<std::string> vaccines;

  bool operator==(const VaersCase&) const = default;
};

enum class VaersEncoding {
  utf8,         // cells that are not valid UTF-8 fall back to windows-1252
  latin1,
  windows1252,
};

struct VaersOptions {
  std::string id_column = "VAERS_ID";
  std::vector<std::string> symptom_columns = {"SYMPTOM1", "SYMPTOM2", "SYMPTOM3",
                                              "SYMPTOM4", "SYMPTOM5"};
  std::string vaccine_column = "VAX_TYPE";
  VaersEncoding encoding = VaersEncoding::utf8;
  // Names used in messages, in data/symptoms/vaccines order.
  std::array<std::string, 3> file_names = {"data", "symptoms", "vaccines"};
};

// Throws Error(invalid_argument) for an unrecognized encoding name.
VaersEncoding parse_vaers_encoding(const std::string& name);

struct VaersFileSummary {
  std::string name;
  std::size_t rows = 0;     // data rows read (header excluded)
  std::size_t skipped = 0;  // rows dropped for arity mismatch or a blank id
  std::vector<std::string> orphan_ids;  // ids absent from the data file, sorted
};

struct VaersJoin {
  std::vector<VaersCase> cases;  // sorted by vaers_id
  VaersFileSummary data;
  VaersFileSummary symptoms;
  VaersFileSummary vaccines;
  Diagnostics warnings;
};

// Outer join of the three annual files on the id column. Throws
// Error(missing_id_column) naming the file whose header lacks the id column.
VaersJoin parse_vaers_files(std::istream& data_csv, std::istream& symptoms_csv,
                            std::istream& vaccine_csv,
                            const VaersOptions& options = {});

// e.g. "2 cases, 0 orphans (symptoms=0, vaccines=0), skipped=0 (data=0, ...)"
std::string join_report(const VaersJoin& join);

}  // namespace aekg
