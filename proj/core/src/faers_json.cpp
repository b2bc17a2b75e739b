#include <json.hpp>

#include "aekg/error.hpp"
#include "aekg/faers.hpp"

namespace aekg {

using ojson = nlohmann::ordered_json;

namespace {

void put_optional(ojson& obj, const char* key,
                  const std::optional<std::string>& value) {
  if (value) obj[key] = *value;
}

ojson report_to_json(const SafetyReport& r) {
  ojson obj = ojson::object();
  obj["safetyreportid"] = r.report_id;
  put_optional(obj, "receivedate", r.receive_date);
  put_optional(obj, "serious", r.serious);

  ojson patient = ojson::object();
  const auto& p = r.patient;
  put_optional(patient, "patientonsetage", p.onset_age);
  put_optional(patient, "patientonsetageunit", p.onset_age_unit);
  put_optional(patient, "patientagegroup", p.age_group);
  put_optional(patient, "patientsex", p.sex);

  ojson drugs = ojson::array();
  for (const auto& d : p.drugs) {
    ojson drug = ojson::object();
    drug["medicinalproduct"] = d.medicinal_product;
    put_optional(drug, "drugcharacterization", d.characterization);
    drug["activesubstances"] = d.active_substances;
    drugs.push_back(std::move(drug));
  }
  patient["drugs"] = std::move(drugs);

  ojson reactions = ojson::array();
  for (const auto& x : p.reactions)
    reactions.push_back(ojson{{"reactionmeddrapt", x.term}});
  patient["reactions"] = std::move(reactions);

  obj["patient"] = std::move(patient);
  return obj;
}

ojson drop_to_json(const DropEntry& d) {
  ojson reasons = ojson::array();
  for (auto r : d.reasons) reasons.push_back(std::string(to_string(r)));
  return ojson{{"report", d.report}, {"reasons", std::move(reasons)}};
}

// Schema checking helpers. Every accessor names the full path on failure.
class Reader {
 public:
  static const ojson& object(const ojson& v, const std::string& path) {
    if (!v.is_object()) throw SchemaError(path, "expected object");
    return v;
  }
  static const ojson& array(const ojson& v, const std::string& path) {
    if (!v.is_array()) throw SchemaError(path, "expected array");
    return v;
  }
  static std::string string(const ojson& v, const std::string& path) {
    if (!v.is_string()) throw SchemaError(path, "expected string");
    return v.get<std::string>();
  }

  static const ojson& required(const ojson& obj, const char* key,
                               const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end())
      throw SchemaError(path + "." + key, "required key missing");
    return *it;
  }

  static std::optional<std::string> optional_string(const ojson& obj,
                                                    const char* key,
                                                    const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    return string(*it, path + "." + key);
  }

  static void only_keys(const ojson& obj, std::initializer_list<const char*> keys,
                        const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool known = false;
      for (const char* k : keys)
        if (it.key() == k) known = true;
      if (!known) throw SchemaError(path + "." + it.key(), "unexpected key");
    }
  }
};

SafetyReport report_from_json(const ojson& v, const std::string& path) {
  Reader::object(v, path);
  Reader::only_keys(v, {"safetyreportid", "receivedate", "serious", "patient"},
                    path);
  SafetyReport r;
  r.report_id = Reader::string(Reader::required(v, "safetyreportid", path),
                               path + ".safetyreportid");
  r.receive_date = Reader::optional_string(v, "receivedate", path);
  r.serious = Reader::optional_string(v, "serious", path);

  const std::string ppath = path + ".patient";
  const auto& pj = Reader::object(Reader::required(v, "patient", path), ppath);
  Reader::only_keys(pj,
                    {"patientonsetage", "patientonsetageunit",
                     "patientagegroup", "patientsex", "drugs", "reactions"},
                    ppath);
  auto& p = r.patient;
  p.onset_age = Reader::optional_string(pj, "patientonsetage", ppath);
  p.onset_age_unit = Reader::optional_string(pj, "patientonsetageunit", ppath);
  p.age_group = Reader::optional_string(pj, "patientagegroup", ppath);
  p.sex = Reader::optional_string(pj, "patientsex", ppath);

  const std::string dpath = ppath + ".drugs";
  const auto& drugs = Reader::array(Reader::required(pj, "drugs", ppath), dpath);
  for (std::size_t i = 0; i < drugs.size(); ++i) {
    const std::string ipath = dpath + "[" + std::to_string(i) + "]";
    const auto& dj = Reader::object(drugs[i], ipath);
    Reader::only_keys(dj,
                      {"medicinalproduct", "drugcharacterization",
                       "activesubstances"},
                      ipath);
    DrugRecord d;
    d.medicinal_product =
        Reader::string(Reader::required(dj, "medicinalproduct", ipath),
                       ipath + ".medicinalproduct");
    d.characterization =
        Reader::optional_string(dj, "drugcharacterization", ipath);
    const std::string spath = ipath + ".activesubstances";
    const auto& subs =
        Reader::array(Reader::required(dj, "activesubstances", ipath), spath);
    for (std::size_t k = 0; k < subs.size(); ++k)
      d.active_substances.push_back(
          Reader::string(subs[k], spath + "[" + std::to_string(k) + "]"));
    p.drugs.push_back(std::move(d));
  }

  const std::string rpath = ppath + ".reactions";
  const auto& reactions =
      Reader::array(Reader::required(pj, "reactions", ppath), rpath);
  for (std::size_t i = 0; i < reactions.size(); ++i) {
    const std::string ipath = rpath + "[" + std::to_string(i) + "]";
    const auto& xj = Reader::object(reactions[i], ipath);
    Reader::only_keys(xj, {"reactionmeddrapt"}, ipath);
    p.reactions.push_back(
        {Reader::string(Reader::required(xj, "reactionmeddrapt", ipath),
                        ipath + ".reactionmeddrapt")});
  }
  return r;
}

DropEntry drop_from_json(const ojson& v, const std::string& path) {
  Reader::object(v, path);
  Reader::only_keys(v, {"report", "reasons"}, path);
  DropEntry d;
  d.report = Reader::string(Reader::required(v, "report", path), path + ".report");
  const std::string rpath = path + ".reasons";
  const auto& reasons = Reader::array(Reader::required(v, "reasons", path), rpath);
  for (std::size_t i = 0; i < reasons.size(); ++i) {
    const std::string ipath = rpath + "[" + std::to_string(i) + "]";
    auto s = Reader::string(reasons[i], ipath);
    auto reason = drop_reason_from_string(s);
    if (!reason) throw SchemaError(ipath, "unknown drop reason '" + s + "'");
    d.reasons.push_back(*reason);
  }
  return d;
}

}  // namespace

// Layout: one report or drop entry per line inside the top-level arrays, so
// large batches stream out without materializing the whole document.
std::uint64_t write_canonical_json(const CanonicalBatch& batch,
                                   std::ostream& out) {
  std::uint64_t bytes = 0;
  auto emit = [&](const std::string& s) {
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
    bytes += s.size();
  };

  try {
    emit("{\"source_label\":" + ojson(batch.source_label).dump() +
         ",\"safetyreports\":[");
    for (std::size_t i = 0; i < batch.reports.size(); ++i)
      emit((i ? ",\n" : "\n") + report_to_json(batch.reports[i]).dump());
    emit(batch.reports.empty() ? "]" : "\n]");
    emit(",\"droplog\":[");
    for (std::size_t i = 0; i < batch.drop_log.size(); ++i)
      emit((i ? ",\n" : "\n") + drop_to_json(batch.drop_log[i]).dump());
    emit(batch.drop_log.empty() ? "]}\n" : "\n]}\n");
  } catch (const nlohmann::json::type_error& e) {
    // only raised for strings that are not valid UTF-8
    throw Error(ErrorCode::invalid_argument, e.what());
  }

  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "failed writing canonical JSON");
  return bytes;
}

CanonicalBatch read_canonical_json(std::istream& in) {
  ojson doc;
  try {
    doc = ojson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::malformed_json, e.what());
  }
  const std::string root = "$";
  Reader::object(doc, root);
  Reader::only_keys(doc, {"source_label", "safetyreports", "droplog"}, root);

  CanonicalBatch batch;
  batch.source_label = Reader::string(Reader::required(doc, "source_label", root),
                                      "$.source_label");
  const auto& reports = Reader::array(
      Reader::required(doc, "safetyreports", root), "$.safetyreports");
  batch.reports.reserve(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i)
    batch.reports.push_back(report_from_json(
        reports[i], "$.safetyreports[" + std::to_string(i) + "]"));

  const auto& drops =
      Reader::array(Reader::required(doc, "droplog", root), "$.droplog");
  for (std::size_t i = 0; i < drops.size(); ++i)
    batch.drop_log.push_back(
        drop_from_json(drops[i], "$.droplog[" + std::to_string(i) + "]"));
  return batch;
}

}  // namespace aekg
