#include <map>
#include <sstream>

#include "aekg/error.hpp"
#include "aekg/rdf/serialize.hpp"

namespace aekg::rdf {

namespace {

// ASCII subset of the XML NameStartChar / NameChar productions, minus ':'.
bool ncname_start(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c >= 0x80;
}
bool ncname_char(unsigned char c) {
  return ncname_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

struct SplitIri {
  std::string ns;
  std::string local;
};

SplitIri split_predicate(const std::string& iri) {
  std::size_t i = iri.size();
  while (i > 0 && ncname_char(static_cast<unsigned char>(iri[i - 1]))) --i;
  while (i < iri.size() && !ncname_start(static_cast<unsigned char>(iri[i]))) ++i;
  if (i >= iri.size())
    throw Error(ErrorCode::unsplittable_predicate,
                "predicate <" + iri + "> has no XML local name");
  return {iri.substr(0, i), iri.substr(i)};
}

bool xml_char_ok(unsigned char c) {
  return c >= 0x20 || c == '\t' || c == '\n' || c == '\r';
}

std::string escape(std::string_view s, bool attribute) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    auto c = static_cast<unsigned char>(ch);
    if (!xml_char_ok(c))
      throw Error(ErrorCode::invalid_term,
                  "control character U+" + std::to_string(c) +
                      " cannot be written as XML 1.0");
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        out += attribute ? "&quot;" : "\"";
        break;
      case '\r': out += "&#13;"; break;
      case '\n': out += attribute ? "&#10;" : "\n"; break;
      case '\t': out += attribute ? "&#9;" : "\t"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

std::string subject_attr(const Term& s) {
  if (const auto* i = std::get_if<Iri>(&s))
    return "rdf:about=\"" + escape(i->value, true) + "\"";
  return "rdf:nodeID=\"" + std::get<BlankNode>(s).label + "\"";
}

}  // namespace

std::uint64_t serialize_rdfxml(const TripleGraph& graph, std::ostream& out) {
  // prefix for each namespace IRI used by a predicate
  std::map<std::string, std::string> prefix_of;  // ns iri -> prefix
  std::map<std::string, std::string> declared = graph.namespaces().bindings();
  if (declared.count("rdf") && declared["rdf"] != ns::rdf)
    throw Error(ErrorCode::invalid_argument,
                "prefix rdf must be bound to the RDF namespace");
  declared["rdf"] = ns::rdf;
  for (const auto& [prefix, iri] : declared)
    if (!prefix_of.count(iri)) prefix_of[iri] = prefix;

  std::map<std::string, SplitIri> split_cache;
  std::size_t generated = 0;
  for (const auto& t : graph.triples()) {
    const auto& p = std::get<Iri>(t.predicate).value;
    if (split_cache.count(p)) continue;
    auto split = split_predicate(p);
    if (!prefix_of.count(split.ns)) {
      std::string prefix;
      do {
        prefix = "ns" + std::to_string(generated++);
      } while (declared.count(prefix));
      declared[prefix] = split.ns;
      prefix_of[split.ns] = prefix;
    }
    split_cache.emplace(p, std::move(split));
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n<rdf:RDF";
  for (const auto& [prefix, iri] : declared)
    os << "\n  xmlns:" << prefix << "=\"" << escape(iri, true) << "\"";
  os << ">\n";

  const Term* current = nullptr;
  for (const auto& t : graph.triples()) {
    if (!current || *current != t.subject) {
      if (current) os << "  </rdf:Description>\n";
      os << "  <rdf:Description " << subject_attr(t.subject) << ">\n";
      current = &t.subject;
    }
    const auto& split = split_cache.at(std::get<Iri>(t.predicate).value);
    std::string qname = prefix_of.at(split.ns) + ":" + split.local;
    os << "    <" << qname;
    if (const auto* i = std::get_if<Iri>(&t.object)) {
      os << " rdf:resource=\"" << escape(i->value, true) << "\"/>\n";
    } else if (const auto* b = std::get_if<BlankNode>(&t.object)) {
      os << " rdf:nodeID=\"" << b->label << "\"/>\n";
    } else {
      const auto& l = std::get<Literal>(t.object);
      if (!l.datatype.empty())
        os << " rdf:datatype=\"" << escape(l.datatype, true) << "\"";
      os << ">" << escape(l.lexical, false) << "</" << qname << ">\n";
    }
  }
  if (current) os << "  </rdf:Description>\n";
  os << "</rdf:RDF>\n";

  const std::string doc = os.str();
  out.write(doc.data(), static_cast<std::streamsize>(doc.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "failed writing RDF/XML");
  return doc.size();
}

std::string to_rdfxml(const TripleGraph& graph) {
  std::ostringstream os;
  serialize_rdfxml(graph, os);
  return os.str();
}

}  // namespace aekg::rdf
