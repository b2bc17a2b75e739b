#pragma once

#include <map>
#include <set>
#include <string>

#include "aekg/rdf/term.hpp"

namespace aekg::rdf {

// prefix -> namespace IRI
class NamespaceTable {
 public:
  // rdf, rdfs, owl and xsd bound to their W3C IRIs.
  static NamespaceTable standard();

  // Rebinding an existing prefix replaces it. Throws Error(invalid_argument)
  // for a prefix that is not a Turtle/XML name or an invalid IRI.
  void bind(const std::string& prefix, const std::string& iri);

  const std::map<std::string, std::string>& bindings() const { return bindings_; }

  bool operator==(const NamespaceTable&) const = default;

 private:
  std::map<std::string, std::string> bindings_;
};

// A set of triples kept in canonical order, plus namespace bindings used for
// serialization and a per-graph blank node allocator.
class TripleGraph {
 public:
  TripleGraph() : namespaces_(NamespaceTable::standard()) {}

  // Returns false when the triple was already present. Throws
  // Error(literal_subject), Error(non_iri_predicate) or Error(invalid_term).
  bool add(const Term& subject, const Term& predicate, const Term& object);
  bool add(const Triple& t) { return add(t.subject, t.predicate, t.object); }

  // b0, b1, ... in allocation order.
  BlankNode new_blank_node();

  bool contains(const Triple& t) const { return triples_.count(t) > 0; }
  bool contains(const Term& s, const Term& p, const Term& o) const {
    return contains(Triple{s, p, o});
  }

  const std::set<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  NamespaceTable& namespaces() { return namespaces_; }
  const NamespaceTable& namespaces() const { return namespaces_; }

  // Adds every triple of `other`; blank nodes of `other` are relabelled with
  // fresh labels from this graph so they never merge with existing ones.
  void merge(const TripleGraph& other);

 private:
  std::set<Triple> triples_;
  NamespaceTable namespaces_;
  std::size_t blank_count_ = 0;
};

}  // namespace aekg::rdf
