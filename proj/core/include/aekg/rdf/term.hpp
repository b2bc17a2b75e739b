#pragma once

#include <compare>
#include <string>
#include <variant>

namespace aekg::rdf {

struct Iri {
  std::string value;

  auto operator<=>(const Iri&) const = default;
  bool operator==(const Iri&) const = default;
};

struct BlankNode {
  std::string label;

  auto operator<=>(const BlankNode&) const = default;
  bool operator==(const BlankNode&) const = default;
};

struct Literal {
  std::string lexical;
  std::string datatype;  // empty for a plain literal

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;
};

// Alternative order gives the canonical term order: IRIs, then blank nodes,
// then literals; within a kind, by expanded string.
using Term = std::variant<Iri, BlankNode, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }

// Absolute IRI: a scheme followed by ':' and no whitespace, control
// characters or any of <>"{}|^`\ .
bool is_valid_iri(std::string_view iri);

// N-Triples-like rendering, used in messages and tests.
std::string to_string(const Term& t);

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

namespace ns {
inline constexpr const char* rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr const char* rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr const char* owl = "http://www.w3.org/2002/07/owl#";
inline constexpr const char* xsd = "http://www.w3.org/2001/XMLSchema#";
}  // namespace ns

inline Iri rdf_iri(const char* local) { return Iri{std::string(ns::rdf) + local}; }
inline Iri rdfs_iri(const char* local) { return Iri{std::string(ns::rdfs) + local}; }
inline Iri owl_iri(const char* local) { return Iri{std::string(ns::owl) + local}; }
inline Iri xsd_iri(const char* local) { return Iri{std::string(ns::xsd) + local}; }

}  // namespace aekg::rdf
