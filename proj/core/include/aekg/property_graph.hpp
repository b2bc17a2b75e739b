#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace aekg {

struct NodeKey {
  std::string label;
  std::string key_value;

  auto operator<=>(const NodeKey&) const = default;
  bool operator==(const NodeKey&) const = default;
};

// Neo4j property values used by this pipeline. String lists carry active
// substances.
using PropertyValue =
    std::variant<std::string, std::int64_t, bool, std::vector<std::string>>;
using Properties = std::map<std::string, PropertyValue>;

struct Node {
  NodeKey key;
  Properties properties;

  bool operator==(const Node&) const = default;
};

struct Relationship {
  std::string type;
  NodeKey source;
  NodeKey target;

  auto operator<=>(const Relationship&) const = default;
  bool operator==(const Relationship&) const = default;
};

enum class MergeResult { created, matched };

// Labeled property graph with MERGE semantics: a node is identified by
// (label, key_value) and a relationship by (type, source, target).
class PropertyGraph {
 public:
  // Creates the node or, if it exists, overlays `properties` onto it. Scalar
  // values overwrite; string lists union, keeping first-seen order.
  // Throws Error(empty_key) when label or key_value is empty.
  MergeResult merge_node(const std::string& label, const std::string& key_value,
                         const Properties& properties = {});

  // Throws Error(dangling_endpoint) when either endpoint is missing.
  MergeResult merge_relationship(const std::string& type, const NodeKey& source,
                                 const NodeKey& target);

  const Node* find(const NodeKey& key) const;
  bool contains(const Relationship& rel) const { return rels_.count(rel) > 0; }

  const std::map<NodeKey, Node>& nodes() const { return nodes_; }
  const std::set<Relationship>& relationships() const { return rels_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t relationship_count() const { return rels_.size(); }

  // In + out relationships touching the node.
  std::size_t degree(const NodeKey& key) const;

  // Relationships leaving `source` with the given type, in target order.
  std::vector<NodeKey> targets(const NodeKey& source,
                               const std::string& type) const;

  // Replays every node and relationship of `other` through the merge
  // operations.
  void merge_from(const PropertyGraph& other);

  // Endpoints that do not resolve to a node. Always empty for graphs built
  // through the public API.
  std::vector<Relationship> audit() const;

  bool operator==(const PropertyGraph& other) const {
    return nodes_ == other.nodes_ && rels_ == other.rels_;
  }

 private:
  std::map<NodeKey, Node> nodes_;
  std::set<Relationship> rels_;
  std::map<NodeKey, std::size_t> degree_;
};

struct DegreeEntry {
  NodeKey key;
  std::size_t degree;

  bool operator==(const DegreeEntry&) const = default;
};

struct GraphStats {
  std::map<std::string, std::size_t> nodes_per_label;
  std::map<std::string, std::size_t> edges_per_type;
  std::vector<DegreeEntry> top_degree;  // degree desc, then key_value, label

  bool operator==(const GraphStats&) const = default;
};

GraphStats graph_stats(const PropertyGraph& graph, std::size_t top_k = 10);

// Human-readable rendering, one fact per line.
std::string format_stats(const GraphStats& stats);

// JSON rendering with keys in a fixed order.
std::string format_stats_json(const GraphStats& stats);

}  // namespace aekg
