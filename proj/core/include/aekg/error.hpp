#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aekg {

enum class ErrorCode {
  malformed_xml,
  missing_root,
  malformed_json,
  schema_violation,
  missing_id_column,
  empty_key,
  dangling_endpoint,
  literal_subject,
  non_iri_predicate,
  invalid_term,
  unsplittable_predicate,
  syntax_error,
  undeclared_property,
  undeclared_filler,
  empty_identifier,
  http_failure,
  template_error,
  disk_full,
  corrupt_archive,
  path_traversal,
  io_error,
  invalid_argument,
};

std::string_view to_string(ErrorCode code);

// Base of every error thrown by the library. The code is stable; the message
// is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// XML failures carry the byte offset where the parser gave up.
class XmlError : public Error {
 public:
  XmlError(ErrorCode code, const std::string& message, std::uint64_t offset)
      : Error(code, message + " at byte " + std::to_string(offset)),
        offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

// Canonical-JSON schema violations name the offending JSONPath-like location.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : Error(ErrorCode::schema_violation, path + ": " + message), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class TurtleSyntaxError : public Error {
 public:
  TurtleSyntaxError(const std::string& message, std::size_t line,
                    std::size_t column)
      : Error(ErrorCode::syntax_error,
              std::to_string(line) + ":" + std::to_string(column) + ": " +
                  message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class HttpError : public Error {
 public:
  // status == 0 means the transfer never got an HTTP response.
  HttpError(long status, const std::string& url, const std::string& detail)
      : Error(ErrorCode::http_failure,
              (status ? "HTTP " + std::to_string(status) : std::string("transfer failed")) +
                  " for " + url + (detail.empty() ? "" : ": " + detail)),
        status_(status),
        url_(url) {}

  long status() const noexcept { return status_; }
  const std::string& url() const noexcept { return url_; }

 private:
  long status_;
  std::string url_;
};

// Non-fatal findings collected while processing a batch.
struct Diagnostic {
  std::string kind;    // e.g. "unknown_code", "duplicate_report_id"
  std::string detail;

  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace aekg
