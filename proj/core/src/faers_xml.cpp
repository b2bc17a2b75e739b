#include <expat.h>

#include <algorithm>
#include <string_view>

#include "aekg/error.hpp"
#include "aekg/faers.hpp"
#include "aekg/text.hpp"

namespace aekg {

namespace {

// Where a character-data run ends up once its element closes.
enum class Slot {
  none,
  report_id,
  receive_date,
  serious,
  onset_age,
  onset_age_unit,
  age_group,
  sex,
  medicinal_product,
  drug_characterization,
  active_substance,
  reaction_term,
};

// Frames on the element stack while inside a report.
enum class Frame {
  report,
  patient,
  drug,
  active_substance,
  reaction,
  leaf,
  skipped,
};

std::string local_lower(const XML_Char* name) {
  std::string_view n(name);
  if (auto colon = n.rfind(':'); colon != std::string_view::npos)
    n.remove_prefix(colon + 1);
  return text::to_lower_ascii(n);
}

std::optional<std::string> non_empty(std::string_view s) {
  s = text::trim(s);
  if (s.empty()) return std::nullopt;
  return std::string(s);
}

}  // namespace

struct FaersXmlReader::Impl {
  std::istream& in;
  std::size_t chunk_size;
  XML_Parser parser = nullptr;
  std::deque<SafetyReport> ready;
  XmlParseStats stats;
  std::size_t peak = 0;
  bool root_seen = false;
  bool finished = false;

  // report-in-progress state
  std::vector<Frame> frames;  // empty when outside any report
  std::size_t outside_depth = 0;
  SafetyReport current;
  DrugRecord drug;
  ReactionRecord reaction;
  Slot slot = Slot::none;
  std::string chars;

  Impl(std::istream& is, std::size_t chunk)
      : in(is), chunk_size(std::max<std::size_t>(chunk, 64)) {
    parser = XML_ParserCreate(nullptr);
    if (!parser) throw std::bad_alloc();
    XML_SetUserData(parser, this);
    XML_SetElementHandler(parser, &Impl::on_start, &Impl::on_end);
    XML_SetCharacterDataHandler(parser, &Impl::on_chars);
  }

  ~Impl() {
    if (parser) XML_ParserFree(parser);
  }

  static void on_start(void* data, const XML_Char* name, const XML_Char**) {
    static_cast<Impl*>(data)->start(local_lower(name));
  }
  static void on_end(void* data, const XML_Char*) {
    static_cast<Impl*>(data)->end();
  }
  static void on_chars(void* data, const XML_Char* s, int len) {
    auto* self = static_cast<Impl*>(data);
    if (self->slot != Slot::none) self->chars.append(s, static_cast<std::size_t>(len));
  }

  void open_leaf(Slot s) {
    frames.push_back(Frame::leaf);
    slot = s;
    chars.clear();
  }

  void skip() {
    frames.push_back(Frame::skipped);
    ++stats.skipped_elements;
  }

  void start(const std::string& name) {
    root_seen = true;
    if (frames.empty()) {
      if (name == "safetyreport") {
        current = SafetyReport{};
        frames.push_back(Frame::report);
      } else {
        ++outside_depth;
      }
      return;
    }
    switch (frames.back()) {
      case Frame::report:
        if (name == "safetyreportid") return open_leaf(Slot::report_id);
        if (name == "receivedate") return open_leaf(Slot::receive_date);
        if (name == "serious") return open_leaf(Slot::serious);
        if (name == "patient") return frames.push_back(Frame::patient);
        return skip();
      case Frame::patient:
        if (name == "patientonsetage") return open_leaf(Slot::onset_age);
        if (name == "patientonsetageunit") return open_leaf(Slot::onset_age_unit);
        if (name == "patientagegroup") return open_leaf(Slot::age_group);
        if (name == "patientsex") return open_leaf(Slot::sex);
        if (name == "drug") {
          drug = DrugRecord{};
          return frames.push_back(Frame::drug);
        }
        if (name == "reaction") {
          reaction = ReactionRecord{};
          return frames.push_back(Frame::reaction);
        }
        return skip();
      case Frame::drug:
        if (name == "medicinalproduct") return open_leaf(Slot::medicinal_product);
        if (name == "drugcharacterization")
          return open_leaf(Slot::drug_characterization);
        if (name == "activesubstancename") return open_leaf(Slot::active_substance);
        if (name == "activesubstance")
          return frames.push_back(Frame::active_substance);
        return skip();
      case Frame::active_substance:
        if (name == "activesubstancename") return open_leaf(Slot::active_substance);
        return skip();
      case Frame::reaction:
        if (name == "reactionmeddrapt") return open_leaf(Slot::reaction_term);
        return skip();
      case Frame::leaf:
      case Frame::skipped:
        return skip();
    }
  }

  void close_leaf() {
    auto value = non_empty(chars);
    switch (slot) {
      case Slot::report_id:
        current.report_id = value.value_or(std::string{});
        break;
      case Slot::receive_date: current.receive_date = value; break;
      case Slot::serious: current.serious = value; break;
      case Slot::onset_age: current.patient.onset_age = value; break;
      case Slot::onset_age_unit: current.patient.onset_age_unit = value; break;
      case Slot::age_group: current.patient.age_group = value; break;
      case Slot::sex: current.patient.sex = value; break;
      case Slot::medicinal_product:
        drug.medicinal_product = value.value_or(std::string{});
        break;
      case Slot::drug_characterization: drug.characterization = value; break;
      case Slot::active_substance:
        if (value) drug.active_substances.push_back(*value);
        break;
      case Slot::reaction_term:
        reaction.term = value.value_or(std::string{});
        break;
      case Slot::none:
        break;
    }
    slot = Slot::none;
    chars.clear();
  }

  void end() {
    if (frames.empty()) {
      if (outside_depth > 0) --outside_depth;
      return;
    }
    Frame f = frames.back();
    frames.pop_back();
    switch (f) {
      case Frame::leaf:
        close_leaf();
        break;
      case Frame::drug:
        // A drug without a product name carries no usable identity.
        if (!drug.medicinal_product.empty())
          current.patient.drugs.push_back(std::move(drug));
        break;
      case Frame::reaction:
        if (!reaction.term.empty())
          current.patient.reactions.push_back(std::move(reaction));
        break;
      case Frame::report:
        ++stats.reports;
        ready.push_back(std::move(current));
        peak = std::max(peak, ready.size());
        break;
      default:
        break;
    }
  }

  [[noreturn]] void fail() {
    auto code = XML_GetErrorCode(parser);
    std::uint64_t offset = stats.bytes;
    auto idx = XML_GetCurrentByteIndex(parser);
    if (idx >= 0) offset = static_cast<std::uint64_t>(idx);
    if (!root_seen && code == XML_ERROR_NO_ELEMENTS)
      throw XmlError(ErrorCode::missing_root, "no document element", offset);
    throw XmlError(ErrorCode::malformed_xml,
                   std::string("malformed XML: ") + XML_ErrorString(code),
                   offset);
  }

  void pump() {
    std::vector<char> buf(chunk_size);
    while (ready.empty() && !finished) {
      in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
      auto got = static_cast<std::size_t>(in.gcount());
      if (in.bad())
        throw Error(ErrorCode::io_error, "read failure on FAERS XML input");
      bool last = got < buf.size() || in.eof();
      stats.bytes += got;
      if (XML_Parse(parser, buf.data(), static_cast<int>(got), last ? 1 : 0) ==
          XML_STATUS_ERROR)
        fail();
      if (last) {
        finished = true;
        if (!root_seen)
          throw XmlError(ErrorCode::missing_root, "no document element",
                         stats.bytes);
      }
    }
  }
};

FaersXmlReader::FaersXmlReader(std::istream& in, std::size_t chunk_size)
    : impl_(std::make_unique<Impl>(in, chunk_size)) {}

FaersXmlReader::~FaersXmlReader() = default;

std::optional<SafetyReport> FaersXmlReader::next() {
  impl_->pump();
  if (impl_->ready.empty()) return std::nullopt;
  SafetyReport r = std::move(impl_->ready.front());
  impl_->ready.pop_front();
  return r;
}

const XmlParseStats& FaersXmlReader::stats() const { return impl_->stats; }

std::size_t FaersXmlReader::peak_buffered() const { return impl_->peak; }

std::vector<SafetyReport> parse_faers_xml(std::istream& in,
                                          XmlParseStats* stats) {
  FaersXmlReader reader(in);
  std::vector<SafetyReport> out;
  while (auto r = reader.next()) out.push_back(std::move(*r));
  if (stats) *stats = reader.stats();
  return out;
}

ReportFilter::ReportFilter(std::string source_label) {
  batch_.source_label = std::move(source_label);
}

bool ReportFilter::add(SafetyReport report) {
  ++ordinal_;
  auto outcome = validate_report(report);
  if (outcome.kept) {
    batch_.reports.push_back(std::move(report));
    return true;
  }
  std::string label = std::string(text::trim(report.report_id));
  if (label.empty()) label = "#" + std::to_string(ordinal_);
  batch_.drop_log.push_back({std::move(label), std::move(outcome.reasons)});
  return false;
}

CanonicalBatch ReportFilter::finish() && { return std::move(batch_); }

CanonicalBatch filter_reports(std::vector<SafetyReport> raw,
                              std::string source_label) {
  ReportFilter filter(std::move(source_label));
  for (auto& r : raw) filter.add(std::move(r));
  return std::move(filter).finish();
}

}  // namespace aekg
