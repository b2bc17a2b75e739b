#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aekg/faers.hpp"
#include "aekg/property_graph.hpp"
#include "aekg/rdf/graph.hpp"

namespace aekg::onto {

enum class Quantifier { all_values_from, some_values_from };

std::string_view to_string(Quantifier q);  // "allValuesFrom" / "someValuesFrom"

enum class CausalLinkPolicy { pairwise, none };

// Class restriction named by local names within the base namespace, e.g.
// {"Drug", "is_partOf_causing", all_values_from, "AdverseEvent"}.
struct RestrictionSpec {
  std::string on_class;
  std::string property;
  Quantifier quantifier;
  std::string filler;

  bool operator==(const RestrictionSpec&) const = default;
};

// Drug ⊑ ∀is_partOf_causing.AdverseEvent, Patient ⊑ ∀took.Drug,
// Patient ⊑ ∀has_reported.AdverseEvent, SafetyReport ⊑ ∃has_patient.Patient.
std::vector<RestrictionSpec> default_restrictions();

// Parses "Class:property:quantifier:Filler" entries separated by ';' or ','.
// "none" or an empty string yields no restrictions. Throws
// Error(invalid_argument).
std::vector<RestrictionSpec> parse_restrictions(std::string_view text);
std::string format_restrictions(const std::vector<RestrictionSpec>& specs);

struct OntologyConfig {
  std::string base_iri = "http://example.org/aekg#";
  std::string prefix = "aekg";
  bool emit_owl_class_typing = true;
  CausalLinkPolicy causal_links = CausalLinkPolicy::pairwise;
  std::vector<RestrictionSpec> restrictions = default_restrictions();
};

// Throws Error(invalid_argument) unless base_iri is absolute and ends in '#'
// or '/'.
void validate(const OntologyConfig& config);

enum class InstanceKind { safety_report, patient, drug, adverse_event };

std::string_view class_name(InstanceKind kind);

rdf::Iri class_iri(const OntologyConfig& config, InstanceKind kind);
rdf::Iri term_iri(const OntologyConfig& config, std::string_view local_name);

// The ontology IRI: base_iri without its trailing '#' or '/'.
rdf::Iri ontology_iri(const OntologyConfig& config);

// Percent-encodes (uppercase hex, per UTF-8 byte) every byte outside
// [A-Za-z0-9_-]. Injective.
std::string sanitize_identifier(std::string_view identifier);

// base_iri + Kind + "_" + sanitized identifier. Throws
// Error(empty_identifier).
rdf::Iri mint_instance_iri(const OntologyConfig& config, InstanceKind kind,
                           std::string_view identifier);

// Classes, object properties, the has_activesubstance datatype property and
// their domain/range axioms.
rdf::TripleGraph declare_schema(const OntologyConfig& config);

// Adds one instance layer per report on top of `schema`.
rdf::TripleGraph populate_instances(rdf::TripleGraph schema,
                                    const CanonicalBatch& batch,
                                    const OntologyConfig& config);

// Same mapping driven by a graph built by build_faers_graph.
rdf::TripleGraph populate_instances(rdf::TripleGraph schema,
                                    const PropertyGraph& graph,
                                    const OntologyConfig& config);

// Adds (b rdf:type owl:Restriction), (b owl:onProperty property),
// (b owl:<quantifier> filler), (on_class rdfs:subClassOf b) on a fresh blank
// node b. Throws Error(undeclared_property) / Error(undeclared_filler) when
// the property or filler class is not declared in `graph`.
rdf::BlankNode add_class_restriction(rdf::TripleGraph& graph,
                                     const rdf::Iri& on_class,
                                     const rdf::Iri& property,
                                     Quantifier quantifier,
                                     const rdf::Iri& filler);

// Schema, ontology header, configured restrictions and instances.
rdf::TripleGraph build_ontology(const CanonicalBatch& batch,
                                const OntologyConfig& config = {});
rdf::TripleGraph build_ontology(const PropertyGraph& graph,
                                const OntologyConfig& config = {});

// One message per object/datatype property assertion whose subject or object
// is not typed with the declared domain or range class.
std::vector<std::string> audit_domain_range(const rdf::TripleGraph& graph);

// One message per minted instance IRI that lacks an rdf:type to one of the
// four classes.
std::vector<std::string> audit_instance_typing(const rdf::TripleGraph& graph,
                                               const OntologyConfig& config);

}  // namespace aekg::onto
