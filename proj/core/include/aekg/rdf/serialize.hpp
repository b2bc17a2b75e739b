#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "aekg/rdf/graph.hpp"

namespace aekg::rdf {

// Turtle, one triple per line in canonical order, prefixes sorted by name.
// IRIs are abbreviated to prefixed names when the local part is a plain
// [A-Za-z0-9_][A-Za-z0-9_-]* name. Returns bytes written.
std::uint64_t serialize_turtle(const TripleGraph& graph, std::ostream& out);
std::string to_turtle(const TripleGraph& graph);

// RDF/XML with one rdf:Description per subject, subjects and properties in
// canonical order. Blank nodes use rdf:nodeID. Throws
// Error(unsplittable_predicate) when a predicate IRI has no XML local name.
std::uint64_t serialize_rdfxml(const TripleGraph& graph, std::ostream& out);
std::string to_rdfxml(const TripleGraph& graph);

// Reads the Turtle subset this library writes: @prefix/PREFIX directives,
// IRIs, prefixed names, `a`, blank node labels, plain and datatyped
// string literals, and ';' ',' lists. Blank node labels are reallocated in
// order of first appearance. Throws TurtleSyntaxError with line and column.
TripleGraph parse_turtle(std::string_view input);
TripleGraph parse_turtle(std::istream& input);

}  // namespace aekg::rdf
