#include "aekg/graph_build.hpp"

#include <algorithm>

#include "aekg/text.hpp"

namespace aekg {

namespace {

void put_decoded(Properties& props, const char* field,
                 const std::optional<std::string>& code,
                 const VocabularySet& vocab, const std::string& report_id,
                 Diagnostics* diagnostics) {
  if (!code) return;
  auto decoded = decode_code(field, *code, vocab);
  if (decoded.status == DecodeStatus::unknown_code && diagnostics)
    diagnostics->push_back({"unknown_code", std::string(field) + "='" + *code +
                                                "' in report " + report_id});
  props[field] = decoded.value;
}

}  // namespace

const std::map<std::string, std::string>& faers_key_properties() {
  static const std::map<std::string, std::string> keys = {
      {label::safety_report, "safetyreportid"},
      {label::patient, "safetyreportid"},
      {label::drug, "medicinalproduct"},
      {label::adverse_event, "reactionmeddrapt"},
  };
  return keys;
}

const std::map<std::string, std::string>& vaers_key_properties() {
  static const std::map<std::string, std::string> keys = {
      {label::patient, "vaers_id"},
      {label::symptom, "name"},
      {label::vaccine, "name"},
  };
  return keys;
}

Properties report_properties(const SafetyReport& report,
                             const VocabularySet& vocab,
                             Diagnostics* diagnostics) {
  Properties props;
  props["safetyreportid"] = report.report_id;
  if (report.receive_date) props["receivedate"] = *report.receive_date;
  put_decoded(props, "serious", report.serious, vocab, report.report_id,
              diagnostics);
  return props;
}

Properties patient_properties(const SafetyReport& report,
                              const VocabularySet& vocab,
                              Diagnostics* diagnostics) {
  const auto& p = report.patient;
  Properties props;
  props["safetyreportid"] = report.report_id;
  put_decoded(props, "patientonsetage", p.onset_age, vocab, report.report_id,
              diagnostics);
  put_decoded(props, "patientonsetageunit", p.onset_age_unit, vocab,
              report.report_id, diagnostics);
  put_decoded(props, "patientagegroup", p.age_group, vocab, report.report_id,
              diagnostics);
  put_decoded(props, "patientsex", p.sex, vocab, report.report_id, diagnostics);
  return props;
}

std::vector<std::string> distinct_substances(const DrugRecord& drug) {
  std::vector<std::string> out;
  for (const auto& s : drug.active_substances) {
    std::string t(text::trim(s));
    if (!t.empty() && std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(std::move(t));
  }
  return out;
}

void add_faers_batch(PropertyGraph& graph, const CanonicalBatch& batch,
                     const VocabularySet& vocab, Diagnostics* diagnostics) {
  for (const auto& report : batch.reports) {
    const NodeKey report_key{label::safety_report, report.report_id};
    const NodeKey patient_key{label::patient, report.report_id};

    auto created = graph.merge_node(report_key.label, report_key.key_value,
                                    report_properties(report, vocab, diagnostics));
    if (created == MergeResult::matched && diagnostics)
      diagnostics->push_back({"duplicate_report_id", report.report_id});
    graph.merge_node(patient_key.label, patient_key.key_value,
                     patient_properties(report, vocab, diagnostics));
    graph.merge_relationship(reltype::has_patient, report_key, patient_key);

    for (const auto& drug : report.patient.drugs) {
      auto name = text::normalize_name(drug.medicinal_product);
      if (name.empty()) {
        if (diagnostics)
          diagnostics->push_back({"blank_drug_name", report.report_id});
        continue;
      }
      const NodeKey drug_key{label::drug, name};
      graph.merge_node(drug_key.label, drug_key.key_value,
                       {{"medicinalproduct", name},
                        {"activesubstances", distinct_substances(drug)}});
      graph.merge_relationship(reltype::took, patient_key, drug_key);
    }

    for (const auto& reaction : report.patient.reactions) {
      auto term = text::normalize_name(reaction.term);
      if (term.empty()) {
        if (diagnostics)
          diagnostics->push_back({"blank_reaction_term", report.report_id});
        continue;
      }
      const NodeKey event_key{label::adverse_event, term};
      graph.merge_node(event_key.label, event_key.key_value,
                       {{"reactionmeddrapt", term}});
      graph.merge_relationship(reltype::experienced, patient_key, event_key);
    }
  }
}

PropertyGraph build_faers_graph(const CanonicalBatch& batch,
                                const VocabularySet& vocab,
                                Diagnostics* diagnostics) {
  PropertyGraph graph;
  add_faers_batch(graph, batch, vocab, diagnostics);
  return graph;
}

void add_vaers_cases(PropertyGraph& graph, const std::vector<VaersCase>& cases) {
  for (const auto& c : cases) {
    const NodeKey patient_key{label::patient, c.vaers_id};
    graph.merge_node(patient_key.label, patient_key.key_value,
                     {{"vaers_id", c.vaers_id}});
    for (const auto& s : c.symptoms) {
      auto name = text::normalize_name(s);
      if (name.empty()) continue;
      graph.merge_node(label::symptom, name, {{"name", name}});
      graph.merge_relationship(reltype::experienced, patient_key,
                               {label::symptom, name});
    }
    for (const auto& v : c.vaccines) {
      auto name = text::normalize_name(v);
      if (name.empty()) continue;
      graph.merge_node(label::vaccine, name, {{"name", name}});
      graph.merge_relationship(reltype::received, patient_key,
                               {label::vaccine, name});
    }
  }
}

PropertyGraph build_vaers_graph(const std::vector<VaersCase>& cases) {
  PropertyGraph graph;
  add_vaers_cases(graph, cases);
  return graph;
}

}  // namespace aekg
