#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "aekg/model.hpp"

namespace aekg {

struct DropEntry {
  std::string report;  // report id, or "#<ordinal>" when the id is empty
  std::vector<DropReason> reasons;

  bool operator==(const DropEntry&) const = default;
};

// Filtered FAERS reports plus a record of everything that was excluded.
struct CanonicalBatch {
  std::string source_label;
  std::vector<SafetyReport> reports;
  std::vector<DropEntry> drop_log;

  bool operator==(const CanonicalBatch&) const = default;
};

struct XmlParseStats {
  std::uint64_t reports = 0;
  std::uint64_t skipped_elements = 0;  // elements with no canonical field
  std::uint64_t bytes = 0;
};

// Pull parser over a FAERS XML stream. Input is fed to the XML tokenizer in
// fixed-size chunks, so at most the reports completed inside one chunk are
// buffered at any time. Element names match case-insensitively; any
// `safetyreport` element, at any depth, is one report.
//
// Throws XmlError(malformed_xml) with the byte offset on bad input and
// XmlError(missing_root) when the stream has no document element.
class FaersXmlReader {
 public:
  explicit FaersXmlReader(std::istream& in, std::size_t chunk_size = 1 << 16);
  ~FaersXmlReader();
  FaersXmlReader(const FaersXmlReader&) = delete;
  FaersXmlReader& operator=(const FaersXmlReader&) = delete;

  // Next report in document order, or nullopt at end of input.
  std::optional<SafetyReport> next();

  const XmlParseStats& stats() const;

  // Largest number of reports held in the internal queue so far.
  std::size_t peak_buffered() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience: drains a FaersXmlReader.
std::vector<SafetyReport> parse_faers_xml(std::istream& in,
                                          XmlParseStats* stats = nullptr);

// Incremental completeness filter. Kept reports keep their input order.
class ReportFilter {
 public:
  explicit ReportFilter(std::string source_label = {});

  // Returns true when the report was kept.
  bool add(SafetyReport report);
  CanonicalBatch finish() &&;
  const CanonicalBatch& batch() const { return batch_; }

 private:
  CanonicalBatch batch_;
  std::size_t ordinal_ = 0;
};

CanonicalBatch filter_reports(std::vector<SafetyReport> raw,
                              std::string source_label = {});

// Writes the canonical JSON document. Keys come out in schema order and the
// bytes depend only on the batch. Returns the number of bytes written; throws
// Error(io_error) if the sink fails.
std::uint64_t write_canonical_json(const CanonicalBatch& batch,
                                   std::ostream& out);

// Throws SchemaError (naming a path such as "$.safetyreports[0].patient.drugs")
// or Error(malformed_json).
CanonicalBatch read_canonical_json(std::istream& in);

}  // namespace aekg
