#include "aekg/rdf/graph.hpp"

#include <map>

#include "aekg/error.hpp"

namespace aekg::rdf {

namespace {

bool is_name_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-';
}

void check_term(const Term& t) {
  if (const auto* iri = std::get_if<Iri>(&t)) {
    if (!is_valid_iri(iri->value))
      throw Error(ErrorCode::invalid_term, "not an absolute IRI: <" + iri->value + ">");
  } else if (const auto* b = std::get_if<BlankNode>(&t)) {
    if (b->label.empty())
      throw Error(ErrorCode::invalid_term, "blank node with an empty label");
    // NCName start character
    if (!is_name_start(b->label.front()))
      throw Error(ErrorCode::invalid_term, "bad blank node label '" + b->label + "'");
    for (char c : b->label)
      if (!is_name_char(c))
        throw Error(ErrorCode::invalid_term, "bad blank node label '" + b->label + "'");
  } else if (const auto* l = std::get_if<Literal>(&t)) {
    if (!l->datatype.empty() && !is_valid_iri(l->datatype))
      throw Error(ErrorCode::invalid_term, "bad literal datatype <" + l->datatype + ">");
  }
}

}  // namespace

bool is_valid_iri(std::string_view iri) {
  auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!((iri[0] >= 'A' && iri[0] <= 'Z') || (iri[0] >= 'a' && iri[0] <= 'z')))
    return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = iri[i];
    if (!((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
          (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.'))
      return false;
  }
  for (char ch : iri) {
    auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || c == 0x7F) return false;
    switch (ch) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return false;
      default:
        break;
    }
  }
  return true;
}

std::string to_string(const Term& t) {
  if (const auto* iri = std::get_if<Iri>(&t)) return "<" + iri->value + ">";
  if (const auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->label;
  const auto& l = std::get<Literal>(t);
  std::string out = "\"" + l.lexical + "\"";
  if (!l.datatype.empty()) out += "^^<" + l.datatype + ">";
  return out;
}

NamespaceTable NamespaceTable::standard() {
  NamespaceTable t;
  t.bind("owl", ns::owl);
  t.bind("rdf", ns::rdf);
  t.bind("rdfs", ns::rdfs);
  t.bind("xsd", ns::xsd);
  return t;
}

void NamespaceTable::bind(const std::string& prefix, const std::string& iri) {
  if (prefix.empty() || !is_name_start(prefix[0]))
    throw Error(ErrorCode::invalid_argument, "bad prefix '" + prefix + "'");
  for (char c : prefix)
    if (!is_name_char(c) || c == '.')
      throw Error(ErrorCode::invalid_argument, "bad prefix '" + prefix + "'");
  if (!is_valid_iri(iri))
    throw Error(ErrorCode::invalid_argument, "bad namespace IRI <" + iri + ">");
  bindings_.insert_or_assign(prefix, iri);
}

bool TripleGraph::add(const Term& subject, const Term& predicate,
                      const Term& object) {
  if (is_literal(subject))
    throw Error(ErrorCode::literal_subject,
                "literal " + to_string(subject) + " cannot be a subject");
  if (!is_iri(predicate))
    throw Error(ErrorCode::non_iri_predicate,
                "predicate " + to_string(predicate) + " is not an IRI");
  check_term(subject);
  check_term(predicate);
  check_term(object);
  return triples_.insert(Triple{subject, predicate, object}).second;
}

BlankNode TripleGraph::new_blank_node() {
  return BlankNode{"b" + std::to_string(blank_count_++)};
}

void TripleGraph::merge(const TripleGraph& other) {
  std::map<std::string, BlankNode> relabel;
  auto map_term = [&](const Term& t) -> Term {
    if (const auto* b = std::get_if<BlankNode>(&t)) {
      auto it = relabel.find(b->label);
      if (it == relabel.end()) it = relabel.emplace(b->label, new_blank_node()).first;
      return it->second;
    }
    return t;
  };
  for (const auto& t : other.triples_)
    add(map_term(t.subject), t.predicate, map_term(t.object));
  for (const auto& [prefix, iri] : other.namespaces_.bindings())
    if (!namespaces_.bindings().count(prefix)) namespaces_.bind(prefix, iri);
}

}  // namespace aekg::rdf
