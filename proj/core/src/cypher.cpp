#include "aekg/cypher.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

#include "aekg/error.hpp"
#include "aekg/graph_build.hpp"
#include "aekg/text.hpp"

namespace aekg {

namespace {

std::string one_line(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (c == '\n' || c == '\r') c = ' ';
  return out;
}

std::string map_literal(const Properties& props) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : props) {
    if (!first) out += ", ";
    first = false;
    out += cypher_identifier(k);
    out += ": ";
    out += cypher_value(v);
  }
  out += "}";
  return out;
}

std::string list_literal(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += cypher_string(items[i]);
  }
  out += "]";
  return out;
}

void write_header(std::ostream& out, const std::string& source_label,
                  const CypherOptions& options) {
  out << "// source_label: " << one_line(source_label) << "\n"
      << "// generator: " << one_line(options.generator) << "\n";
}

// The statement body shared by every FAERS chunk.
constexpr const char* kFaersStatementBody =
    "] AS r\n"
    "MERGE (sr:SafetyReport {safetyreportid: r.safetyreportid})\n"
    "SET sr += r.report\n"
    "MERGE (p:Patient {safetyreportid: r.safetyreportid})\n"
    "SET p += r.patient\n"
    "MERGE (sr)-[:HAS_PATIENT]->(p)\n"
    "FOREACH (d IN r.drugs |\n"
    "  MERGE (dr:Drug {medicinalproduct: d.medicinalproduct})\n"
    "  SET dr.activesubstances = coalesce(dr.activesubstances, []) +\n"
    "      [s IN d.activesubstances WHERE NOT s IN coalesce(dr.activesubstances, [])]\n"
    "  MERGE (p)-[:TOOK]->(dr))\n"
    "FOREACH (x IN r.reactions |\n"
    "  MERGE (ae:AdverseEvent {reactionmeddrapt: x.reactionmeddrapt})\n"
    "  MERGE (p)-[:EXPERIENCED]->(ae));\n";

void check(std::ostream& out) {
  if (!out) throw Error(ErrorCode::io_error, "failed writing Cypher script");
}

}  // namespace

std::string cypher_string(std::string_view s) {
  std::string out = "'";
  for (char ch : s) {
    auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '\\': out += "\\\\"; break;
      case '\'': out += "\\'"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", c);
          out += buf;
        } else {
          out.push_back(ch);
        }
    }
  }
  out += "'";
  return out;
}

std::string cypher_identifier(std::string_view s) {
  bool plain = !s.empty() && !(s[0] >= '0' && s[0] <= '9');
  for (char c : s)
    if (!((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
          (c >= '0' && c <= '9') || c == '_'))
      plain = false;
  if (plain) return std::string(s);
  std::string out = "`";
  for (char c : s) {
    if (c == '`') out += "``";
    else out.push_back(c);
  }
  return out + "`";
}

std::string cypher_value(const PropertyValue& v) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return cypher_string(s); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::vector<std::string>& l) const {
      return list_literal(l);
    }
  };
  return std::visit(Visitor{}, v);
}

std::size_t emit_cypher_script(const CanonicalBatch& batch, std::ostream& out,
                               const VocabularySet& vocab,
                               const CypherOptions& options,
                               Diagnostics* diagnostics) {
  write_header(out, batch.source_label, options);
  const std::size_t chunk = std::max<std::size_t>(options.batch_size, 1);
  std::size_t statements = 0;

  for (std::size_t start = 0; start < batch.reports.size(); start += chunk) {
    const std::size_t end = std::min(batch.reports.size(), start + chunk);
    out << "\nUNWIND [\n";
    for (std::size_t i = start; i < end; ++i) {
      const auto& report = batch.reports[i];
      std::string line = "  {safetyreportid: " + cypher_string(report.report_id);
      line += ", report: " + map_literal(report_properties(report, vocab, diagnostics));
      line += ", patient: " + map_literal(patient_properties(report, vocab, diagnostics));

      line += ", drugs: [";
      bool first = true;
      for (const auto& drug : report.patient.drugs) {
        auto name = text::normalize_name(drug.medicinal_product);
        if (name.empty()) continue;
        if (!first) line += ", ";
        first = false;
        line += "{medicinalproduct: " + cypher_string(name) +
                ", activesubstances: " + list_literal(distinct_substances(drug)) +
                "}";
      }
      line += "], reactions: [";
      first = true;
      for (const auto& reaction : report.patient.reactions) {
        auto term = text::normalize_name(reaction.term);
        if (term.empty()) continue;
        if (!first) line += ", ";
        first = false;
        line += "{reactionmeddrapt: " + cypher_string(term) + "}";
      }
      line += "]}";
      line += (i + 1 < end) ? ",\n" : "\n";
      out << line;
    }
    out << kFaersStatementBody;
    ++statements;
    check(out);
  }
  out.flush();
  check(out);
  return statements;
}

std::size_t emit_graph_cypher(const PropertyGraph& graph, std::ostream& out,
                              const std::map<std::string, std::string>& key_properties,
                              const std::string& source_label,
                              const CypherOptions& options) {
  write_header(out, source_label, options);
  const std::size_t chunk = std::max<std::size_t>(options.batch_size, 1);
  std::size_t statements = 0;

  auto key_property = [&](const std::string& label) -> std::string {
    auto it = key_properties.find(label);
    if (it == key_properties.end())
      throw Error(ErrorCode::invalid_argument,
                  "no key property configured for label " + label);
    return it->second;
  };

  // nodes, grouped by label (map order keeps each label contiguous)
  std::vector<const Node*> group;
  auto flush_nodes = [&] {
    if (group.empty()) return;
    const auto& lbl = group.front()->key.label;
    for (std::size_t start = 0; start < group.size(); start += chunk) {
      const std::size_t end = std::min(group.size(), start + chunk);
      out << "\nUNWIND [\n";
      for (std::size_t i = start; i < end; ++i) {
        out << "  {key: " << cypher_string(group[i]->key.key_value)
            << ", props: " << map_literal(group[i]->properties) << "}"
            << (i + 1 < end ? ",\n" : "\n");
      }
      out << "] AS row\n"
          << "MERGE (n:" << cypher_identifier(lbl) << " {"
          << cypher_identifier(key_property(lbl)) << ": row.key})\n"
          << "SET n += row.props;\n";
      ++statements;
      check(out);
    }
    group.clear();
  };
  for (const auto& [key, node] : graph.nodes()) {
    if (!group.empty() && group.front()->key.label != key.label) flush_nodes();
    group.push_back(&node);
  }
  flush_nodes();

  // relationships, grouped by (type, source label, target label)
  std::map<std::tuple<std::string, std::string, std::string>,
           std::vector<const Relationship*>>
      rel_groups;
  for (const auto& r : graph.relationships())
    rel_groups[{r.type, r.source.label, r.target.label}].push_back(&r);
  for (const auto& [sig, rels] : rel_groups) {
    const auto& [type, src_label, dst_label] = sig;
    for (std::size_t start = 0; start < rels.size(); start += chunk) {
      const std::size_t end = std::min(rels.size(), start + chunk);
      out << "\nUNWIND [\n";
      for (std::size_t i = start; i < end; ++i)
        out << "  {source: " << cypher_string(rels[i]->source.key_value)
            << ", target: " << cypher_string(rels[i]->target.key_value) << "}"
            << (i + 1 < end ? ",\n" : "\n");
      out << "] AS row\n"
          << "MATCH (a:" << cypher_identifier(src_label) << " {"
          << cypher_identifier(key_property(src_label)) << ": row.source})\n"
          << "MATCH (b:" << cypher_identifier(dst_label) << " {"
          << cypher_identifier(key_property(dst_label)) << ": row.target})\n"
          << "MERGE (a)-[:" << cypher_identifier(type) << "]->(b);\n";
      ++statements;
      check(out);
    }
  }
  out.flush();
  check(out);
  return statements;
}

}  // namespace aekg
