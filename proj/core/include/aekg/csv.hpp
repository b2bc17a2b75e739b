#pragma once

#include <istream>
#include <string>
#include <vector>

namespace aekg {

// RFC 4180 reader: comma separated, double-quoted fields with "" escapes,
// quoted fields may span lines, CRLF or LF record terminators.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next record into `fields`. Returns false at end of input.
  // Throws Error(syntax_error) on an unterminated quoted field.
  bool next(std::vector<std::string>& fields);

  // 1-based line number where the last returned record started.
  std::size_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

}  // namespace aekg
