#include "aekg/ontology.hpp"

#include <cstdio>
#include <map>
#include <set>

#include "aekg/error.hpp"
#include "aekg/graph_build.hpp"
#include "aekg/text.hpp"

namespace aekg::onto {

using rdf::BlankNode;
using rdf::Iri;
using rdf::Literal;
using rdf::Term;
using rdf::TripleGraph;

namespace {

constexpr InstanceKind kKinds[] = {InstanceKind::safety_report,
                                   InstanceKind::patient, InstanceKind::drug,
                                   InstanceKind::adverse_event};

struct ObjectPropertyDecl {
  const char* name;
  InstanceKind domain;
  InstanceKind range;
};

// Name, domain, range.
constexpr ObjectPropertyDecl kObjectProperties[] = {
    {"has_patient", InstanceKind::safety_report, InstanceKind::patient},
    {"took", InstanceKind::patient, InstanceKind::drug},
    {"has_reported", InstanceKind::patient, InstanceKind::adverse_event},
    {"is_partOf_causing", InstanceKind::drug, InstanceKind::adverse_event},
};

constexpr const char* kActiveSubstance = "has_activesubstance";

const Iri& rdf_type() {
  static const Iri iri = rdf::rdf_iri("type");
  return iri;
}

// Instances of one report, independent of whether they came from a batch or a
// property graph.
struct ReportView {
  std::string report_id;
  std::vector<std::pair<std::string, std::vector<std::string>>> drugs;  // name, substances
  std::vector<std::string> events;
};

void add_report(TripleGraph& g, const OntologyConfig& config,
                const ReportView& r) {
  const Term type = rdf_type();
  const auto report = mint_instance_iri(config, InstanceKind::safety_report, r.report_id);
  const auto patient = mint_instance_iri(config, InstanceKind::patient, r.report_id);
  g.add(report, type, class_iri(config, InstanceKind::safety_report));
  g.add(patient, type, class_iri(config, InstanceKind::patient));
  g.add(report, term_iri(config, "has_patient"), patient);

  const auto took = term_iri(config, "took");
  const auto has_sub = term_iri(config, kActiveSubstance);
  const auto has_reported = term_iri(config, "has_reported");
  const auto causing = term_iri(config, "is_partOf_causing");

  std::vector<Iri> drug_iris;
  for (const auto& [name, substances] : r.drugs) {
    auto drug = mint_instance_iri(config, InstanceKind::drug, name);
    g.add(drug, type, class_iri(config, InstanceKind::drug));
    g.add(patient, took, drug);
    for (const auto& s : substances) g.add(drug, has_sub, Literal{s, {}});
    drug_iris.push_back(std::move(drug));
  }
  for (const auto& term : r.events) {
    auto event = mint_instance_iri(config, InstanceKind::adverse_event, term);
    g.add(event, type, class_iri(config, InstanceKind::adverse_event));
    g.add(patient, has_reported, event);
    if (config.causal_links == CausalLinkPolicy::pairwise)
      for (const auto& drug : drug_iris) g.add(drug, causing, event);
  }
}

void add_header_and_restrictions(TripleGraph& g, const OntologyConfig& config) {
  g.add(ontology_iri(config), rdf_type(), rdf::owl_iri("Ontology"));
  for (const auto& spec : config.restrictions)
    add_class_restriction(g, term_iri(config, spec.on_class),
                          term_iri(config, spec.property), spec.quantifier,
                          term_iri(config, spec.filler));
}

bool is_declared_class(const TripleGraph& g, const Iri& iri) {
  return g.contains(iri, rdf_type(), rdf::rdfs_iri("Class")) ||
         g.contains(iri, rdf_type(), rdf::owl_iri("Class"));
}

}  // namespace

std::string_view to_string(Quantifier q) {
  return q == Quantifier::all_values_from ? "allValuesFrom" : "someValuesFrom";
}

std::vector<RestrictionSpec> default_restrictions() {
  return {
      {"Drug", "is_partOf_causing", Quantifier::all_values_from, "AdverseEvent"},
      {"Patient", "took", Quantifier::all_values_from, "Drug"},
      {"Patient", "has_reported", Quantifier::all_values_from, "AdverseEvent"},
      {"SafetyReport", "has_patient", Quantifier::some_values_from, "Patient"},
  };
}

std::vector<RestrictionSpec> parse_restrictions(std::string_view spec_text) {
  std::vector<RestrictionSpec> out;
  auto trimmed = text::trim(spec_text);
  if (trimmed.empty() || text::iequals(trimmed, "none")) return out;
  std::string normalized(trimmed);
  for (auto& c : normalized)
    if (c == ',') c = ';';
  for (const auto& entry : text::split(normalized, ';')) {
    auto e = text::trim(entry);
    if (e.empty()) continue;
    auto parts = text::split(e, ':');
    if (parts.size() != 4)
      throw Error(ErrorCode::invalid_argument,
                  "restriction '" + std::string(e) +
                      "' must be Class:property:quantifier:Filler");
    for (auto& p : parts) p = std::string(text::trim(p));
    Quantifier q;
    if (parts[2] == "allValuesFrom") q = Quantifier::all_values_from;
    else if (parts[2] == "someValuesFrom") q = Quantifier::some_values_from;
    else
      throw Error(ErrorCode::invalid_argument,
                  "unknown quantifier '" + parts[2] + "'");
    out.push_back({parts[0], parts[1], q, parts[3]});
  }
  return out;
}

std::string format_restrictions(const std::vector<RestrictionSpec>& specs) {
  if (specs.empty()) return "none";
  std::string out;
  for (const auto& s : specs) {
    if (!out.empty()) out += "; ";
    out += s.on_class + ":" + s.property + ":" + std::string(to_string(s.quantifier)) +
           ":" + s.filler;
  }
  return out;
}

void validate(const OntologyConfig& config) {
  const auto& b = config.base_iri;
  if (!rdf::is_valid_iri(b) || (b.back() != '#' && b.back() != '/'))
    throw Error(ErrorCode::invalid_argument,
                "base IRI <" + b + "> must be absolute and end in '#' or '/'");
}

std::string_view class_name(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::safety_report: return "SafetyReport";
    case InstanceKind::patient: return "Patient";
    case InstanceKind::drug: return "Drug";
    case InstanceKind::adverse_event: return "AdverseEvent";
  }
  return "";
}

Iri class_iri(const OntologyConfig& config, InstanceKind kind) {
  return Iri{config.base_iri + std::string(class_name(kind))};
}

Iri term_iri(const OntologyConfig& config, std::string_view local_name) {
  return Iri{config.base_iri + std::string(local_name)};
}

Iri ontology_iri(const OntologyConfig& config) {
  auto iri = config.base_iri;
  if (!iri.empty() && (iri.back() == '#' || iri.back() == '/')) iri.pop_back();
  return Iri{iri};
}

std::string sanitize_identifier(std::string_view identifier) {
  std::string out;
  out.reserve(identifier.size());
  for (char ch : identifier) {
    auto c = static_cast<unsigned char>(ch);
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
        (c >= '0' && c <= '9') || c == '_' || c == '-') {
      out.push_back(ch);
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    }
  }
  return out;
}

Iri mint_instance_iri(const OntologyConfig& config, InstanceKind kind,
                      std::string_view identifier) {
  if (identifier.empty())
    throw Error(ErrorCode::empty_identifier,
                "cannot mint an IRI for an empty " + std::string(class_name(kind)) +
                    " identifier");
  return Iri{config.base_iri + std::string(class_name(kind)) + "_" +
             sanitize_identifier(identifier)};
}

TripleGraph declare_schema(const OntologyConfig& config) {
  validate(config);
  TripleGraph g;
  g.namespaces().bind(config.prefix, config.base_iri);
  const Term type = rdf_type();
  const auto domain = rdf::rdfs_iri("domain");
  const auto range = rdf::rdfs_iri("range");

  for (auto kind : kKinds) {
    g.add(class_iri(config, kind), type, rdf::rdfs_iri("Class"));
    if (config.emit_owl_class_typing)
      g.add(class_iri(config, kind), type, rdf::owl_iri("Class"));
  }
  for (const auto& p : kObjectProperties) {
    auto iri = term_iri(config, p.name);
    g.add(iri, type, rdf::owl_iri("ObjectProperty"));
    g.add(iri, domain, class_iri(config, p.domain));
    g.add(iri, range, class_iri(config, p.range));
  }
  auto sub = term_iri(config, kActiveSubstance);
  g.add(sub, type, rdf::owl_iri("DatatypeProperty"));
  g.add(sub, domain, class_iri(config, InstanceKind::drug));
  g.add(sub, range, rdf::xsd_iri("string"));
  return g;
}

TripleGraph populate_instances(TripleGraph schema, const CanonicalBatch& batch,
                               const OntologyConfig& config) {
  for (const auto& report : batch.reports) {
    ReportView view;
    view.report_id = report.report_id;
    for (const auto& drug : report.patient.drugs) {
      auto name = text::normalize_name(drug.medicinal_product);
      if (!name.empty()) view.drugs.emplace_back(std::move(name), distinct_substances(drug));
    }
    for (const auto& reaction : report.patient.reactions) {
      auto term = text::normalize_name(reaction.term);
      if (!term.empty()) view.events.push_back(std::move(term));
    }
    add_report(schema, config, view);
  }
  return schema;
}

TripleGraph populate_instances(TripleGraph schema, const PropertyGraph& graph,
                               const OntologyConfig& config) {
  for (const auto& [key, node] : graph.nodes()) {
    if (key.label != label::safety_report) continue;
    ReportView view;
    view.report_id = key.key_value;
    for (const auto& patient : graph.targets(key, reltype::has_patient)) {
      for (const auto& drug : graph.targets(patient, reltype::took)) {
        std::vector<std::string> substances;
        if (const auto* n = graph.find(drug)) {
          auto it = n->properties.find("activesubstances");
          if (it != n->properties.end())
            if (const auto* list = std::get_if<std::vector<std::string>>(&it->second))
              substances = *list;
        }
        view.drugs.emplace_back(drug.key_value, std::move(substances));
      }
      for (const auto& event : graph.targets(patient, reltype::experienced))
        view.events.push_back(event.key_value);
    }
    add_report(schema, config, view);
  }
  return schema;
}

BlankNode add_class_restriction(TripleGraph& graph, const Iri& on_class,
                                const Iri& property, Quantifier quantifier,
                                const Iri& filler) {
  if (!graph.contains(property, rdf_type(), rdf::owl_iri("ObjectProperty")) &&
      !graph.contains(property, rdf_type(), rdf::owl_iri("DatatypeProperty")))
    throw Error(ErrorCode::undeclared_property,
                "restriction property <" + property.value + "> is not declared");
  if (!is_declared_class(graph, filler))
    throw Error(ErrorCode::undeclared_filler,
                "restriction filler <" + filler.value + "> is not a declared class");
  auto b = graph.new_blank_node();
  graph.add(b, rdf_type(), rdf::owl_iri("Restriction"));
  graph.add(b, rdf::owl_iri("onProperty"), property);
  graph.add(b, rdf::owl_iri(quantifier == Quantifier::all_values_from
                                ? "allValuesFrom"
                                : "someValuesFrom"),
            filler);
  graph.add(on_class, rdf::rdfs_iri("subClassOf"), b);
  return b;
}

TripleGraph build_ontology(const CanonicalBatch& batch,
                           const OntologyConfig& config) {
  auto g = declare_schema(config);
  add_header_and_restrictions(g, config);
  return populate_instances(std::move(g), batch, config);
}

TripleGraph build_ontology(const PropertyGraph& graph,
                           const OntologyConfig& config) {
  auto g = declare_schema(config);
  add_header_and_restrictions(g, config);
  return populate_instances(std::move(g), graph, config);
}

std::vector<std::string> audit_domain_range(const TripleGraph& graph) {
  const Term type = rdf_type();
  const Term object_property = rdf::owl_iri("ObjectProperty");
  const Term datatype_property = rdf::owl_iri("DatatypeProperty");
  const Iri domain = rdf::rdfs_iri("domain");
  const Iri range = rdf::rdfs_iri("range");

  struct Decl {
    bool object = true;
    std::vector<Term> domains, ranges;
  };
  std::map<Term, Decl> props;
  for (const auto& t : graph.triples()) {
    if (t.predicate == type &&
        (t.object == object_property || t.object == datatype_property))
      props[t.subject].object = t.object == object_property;
  }
  for (const auto& t : graph.triples()) {
    auto it = props.find(t.subject);
    if (it == props.end()) continue;
    if (t.predicate == Term{domain}) it->second.domains.push_back(t.object);
    if (t.predicate == Term{range}) it->second.ranges.push_back(t.object);
  }

  std::vector<std::string> violations;
  for (const auto& t : graph.triples()) {
    auto it = props.find(t.predicate);
    if (it == props.end()) continue;
    const auto& decl = it->second;
    for (const auto& d : decl.domains)
      if (!graph.contains(t.subject, type, d))
        violations.push_back(rdf::to_string(t.subject) + " used with " +
                             rdf::to_string(t.predicate) + " is not a " +
                             rdf::to_string(d));
    if (decl.object) {
      for (const auto& r : decl.ranges)
        if (!graph.contains(t.object, type, r))
          violations.push_back(rdf::to_string(t.object) + " used with " +
                               rdf::to_string(t.predicate) + " is not a " +
                               rdf::to_string(r));
    } else if (!rdf::is_literal(t.object)) {
      violations.push_back(rdf::to_string(t.predicate) +
                           " is a datatype property but has object " +
                           rdf::to_string(t.object));
    }
  }
  return violations;
}

std::vector<std::string> audit_instance_typing(const TripleGraph& graph,
                                               const OntologyConfig& config) {
  std::set<std::string> instances;
  auto consider = [&](const Term& t) {
    const auto* iri = std::get_if<Iri>(&t);
    if (!iri) return;
    for (auto kind : kKinds) {
      auto prefix = config.base_iri + std::string(class_name(kind)) + "_";
      if (iri->value.compare(0, prefix.size(), prefix) == 0)
        instances.insert(iri->value);
    }
  };
  for (const auto& t : graph.triples()) {
    consider(t.subject);
    consider(t.object);
  }
  std::vector<std::string> missing;
  for (const auto& value : instances) {
    bool typed = false;
    for (auto kind : kKinds)
      typed = typed || graph.contains(Iri{value}, rdf_type(), class_iri(config, kind));
    if (!typed) missing.push_back("<" + value + "> has no class typing");
  }
  return missing;
}

}  // namespace aekg::onto
