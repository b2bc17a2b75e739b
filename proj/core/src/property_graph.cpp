#include "aekg/property_graph.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "aekg/error.hpp"

namespace aekg {

MergeResult PropertyGraph::merge_node(const std::string& label,
                                      const std::string& key_value,
                                      const Properties& properties) {
  if (label.empty() || key_value.empty())
    throw Error(ErrorCode::empty_key,
                "node key must have a label and a value (got '" + label +
                    "', '" + key_value + "')");
  NodeKey key{label, key_value};
  auto it = nodes_.find(key);
  if (it == nodes_.end()) {
    nodes_.emplace(key, Node{key, properties});
    return MergeResult::created;
  }
  auto& props = it->second.properties;
  for (const auto& [name, value] : properties) {
    auto existing = props.find(name);
    using List = std::vector<std::string>;
    if (existing != props.end() && std::holds_alternative<List>(existing->second) &&
        std::holds_alternative<List>(value)) {
      auto& list = std::get<List>(existing->second);
      for (const auto& item : std::get<List>(value))
        if (std::find(list.begin(), list.end(), item) == list.end()) list.push_back(item);
    } else {
      props.insert_or_assign(name, value);
    }
  }
  return MergeResult::matched;
}

MergeResult PropertyGraph::merge_relationship(const std::string& type,
                                              const NodeKey& source,
                                              const NodeKey& target) {
  for (const auto* end : {&source, &target})
    if (!nodes_.count(*end))
      throw Error(ErrorCode::dangling_endpoint,
                  type + " endpoint (" + end->label + " '" + end->key_value +
                      "') does not exist");
  auto [it, inserted] = rels_.insert(Relationship{type, source, target});
  if (!inserted) return MergeResult::matched;
  ++degree_[source];
  ++degree_[target];
  return MergeResult::created;
}

const Node* PropertyGraph::find(const NodeKey& key) const {
  auto it = nodes_.find(key);
  return it == nodes_.end() ? nullptr : &it->second;
}

std::size_t PropertyGraph::degree(const NodeKey& key) const {
  auto it = degree_.find(key);
  return it == degree_.end() ? 0 : it->second;
}

std::vector<NodeKey> PropertyGraph::targets(const NodeKey& source,
                                            const std::string& type) const {
  std::vector<NodeKey> out;
  // relationships are ordered by (type, source, target)
  for (auto it = rels_.lower_bound(Relationship{type, source, NodeKey{}});
       it != rels_.end() && it->type == type && it->source == source; ++it)
    out.push_back(it->target);
  return out;
}

void PropertyGraph::merge_from(const PropertyGraph& other) {
  for (const auto& [key, node] : other.nodes_)
    merge_node(key.label, key.key_value, node.properties);
  for (const auto& r : other.rels_) merge_relationship(r.type, r.source, r.target);
}

std::vector<Relationship> PropertyGraph::audit() const {
  std::vector<Relationship> bad;
  for (const auto& r : rels_)
    if (!nodes_.count(r.source) || !nodes_.count(r.target)) bad.push_back(r);
  return bad;
}

GraphStats graph_stats(const PropertyGraph& graph, std::size_t top_k) {
  GraphStats stats;
  std::vector<DegreeEntry> all;
  all.reserve(graph.node_count());
  for (const auto& [key, node] : graph.nodes()) {
    ++stats.nodes_per_label[key.label];
    all.push_back({key, graph.degree(key)});
  }
  for (const auto& r : graph.relationships()) ++stats.edges_per_type[r.type];

  auto order = [](const DegreeEntry& a, const DegreeEntry& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    if (a.key.key_value != b.key.key_value)
      return a.key.key_value < b.key.key_value;
    return a.key.label < b.key.label;
  };
  auto n = std::min(top_k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n),
                    all.end(), order);
  all.resize(n);
  stats.top_degree = std::move(all);
  return stats;
}

std::string format_stats(const GraphStats& stats) {
  std::ostringstream os;
  std::size_t total_nodes = 0, total_edges = 0;
  for (const auto& [_, n] : stats.nodes_per_label) total_nodes += n;
  for (const auto& [_, n] : stats.edges_per_type) total_edges += n;
  os << "nodes " << total_nodes << "\n";
  for (const auto& [label, n] : stats.nodes_per_label)
    os << "  " << label << " " << n << "\n";
  os << "relationships " << total_edges << "\n";
  for (const auto& [type, n] : stats.edges_per_type)
    os << "  " << type << " " << n << "\n";
  os << "top degree\n";
  for (const auto& e : stats.top_degree)
    os << "  " << e.key.label << " " << e.key.key_value << " " << e.degree
       << "\n";
  return os.str();
}

std::string format_stats_json(const GraphStats& stats) {
  nlohmann::ordered_json doc;
  doc["nodes"] = nlohmann::ordered_json::object();
  for (const auto& [label, n] : stats.nodes_per_label) doc["nodes"][label] = n;
  doc["relationships"] = nlohmann::ordered_json::object();
  for (const auto& [type, n] : stats.edges_per_type)
    doc["relationships"][type] = n;
  doc["top_degree"] = nlohmann::ordered_json::array();
  for (const auto& e : stats.top_degree)
    doc["top_degree"].push_back(
        {{"label", e.key.label}, {"key", e.key.key_value}, {"degree", e.degree}});
  return doc.dump(2) + "\n";
}

}  // namespace aekg
