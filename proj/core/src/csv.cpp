#include "aekg/csv.hpp"

#include "aekg/error.hpp"

namespace aekg {

bool CsvReader::next(std::vector<std::string>& fields) {
  fields.clear();
  auto buf = in_.rdbuf();
  using traits = std::istream::traits_type;
  if (traits::eq_int_type(buf->sgetc(), traits::eof())) return false;

  record_line_ = line_;
  std::string field;
  bool quoted = false;       // inside a quoted section
  bool at_field_start = true;

  while (true) {
    auto ci = buf->sbumpc();
    if (traits::eq_int_type(ci, traits::eof())) {
      if (quoted)
        throw Error(ErrorCode::syntax_error,
                    "unterminated quoted field starting on line " +
                        std::to_string(record_line_));
      fields.push_back(std::move(field));
      return true;
    }
    char c = traits::to_char_type(ci);

    if (quoted) {
      if (c == '"') {
        if (traits::eq_int_type(buf->sgetc(), traits::to_int_type('"'))) {
          buf->sbumpc();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(c);
      }
      continue;
    }

    if (c == '"' && at_field_start) {
      quoted = true;
      at_field_start = false;
      continue;
    }
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      at_field_start = true;
      continue;
    }
    if (c == '\r' || c == '\n') {
      if (c == '\r' &&
          traits::eq_int_type(buf->sgetc(), traits::to_int_type('\n')))
        buf->sbumpc();
      ++line_;
      fields.push_back(std::move(field));
      return true;
    }
    // Characters after a closing quote are kept verbatim.
    at_field_start = false;
    field.push_back(c);
  }
}

}  // namespace aekg
