#include <gtest/gtest.h>

#include <json.hpp>

#include "aekg/error.hpp"
#include "aekg/property_graph.hpp"

using namespace aekg;

TEST(PropertyGraph, MergeNodeIsIdempotent) {
  PropertyGraph g;
  EXPECT_EQ(g.merge_node("Drug", "ASPIRIN"), MergeResult::created);
  EXPECT_EQ(g.merge_node("Drug", "ASPIRIN"), MergeResult::matched);
  EXPECT_EQ(g.node_count(), 1u);
}

TEST(PropertyGraph, MergeNodeAddsAndOverwritesProperties) {
  PropertyGraph g;
  g.merge_node("Drug", "ASPIRIN", {{"route", std::string("oral")}});
  g.merge_node("Drug", "ASPIRIN", {{"form", std::string("tablet")}, {"route", std::string("iv")}});
  const Node* n = g.find({"Drug", "ASPIRIN"});
  ASSERT_NE(n, nullptr);
  EXPECT_EQ(std::get<std::string>(n->properties.at("form")), "tablet");
  EXPECT_EQ(std::get<std::string>(n->properties.at("route")), "iv");
  EXPECT_EQ(n->key, (NodeKey{"Drug", "ASPIRIN"}));
}

TEST(PropertyGraph, EmptyKeyRejected) {
  PropertyGraph g;
  try {
    g.merge_node("Drug", "");
    FAIL() << "expected empty_key";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_key);
  }
  EXPECT_THROW(g.merge_node("", "X"), Error);
}

TEST(PropertyGraph, RelationshipsMerge) {
  PropertyGraph g;
  g.merge_node("Patient", "1");
  g.merge_node("Drug", "ASPIRIN");
  const NodeKey p{"Patient", "1"}, d{"Drug", "ASPIRIN"};
  EXPECT_EQ(g.merge_relationship("TOOK", p, d), MergeResult::created);
  EXPECT_EQ(g.merge_relationship("TOOK", p, d), MergeResult::matched);
  EXPECT_EQ(g.relationship_count(), 1u);
  EXPECT_EQ(g.merge_relationship("STOPPED", p, d), MergeResult::created);
  EXPECT_EQ(g.relationship_count(), 2u);
  EXPECT_EQ(g.degree(p), 2u);
  EXPECT_EQ(g.targets(p, "TOOK"), std::vector<NodeKey>{d});
  EXPECT_TRUE(g.contains({"TOOK", p, d}));
}

TEST(PropertyGraph, DanglingEndpointRejected) {
  PropertyGraph g;
  g.merge_node("Patient", "1");
  try {
    g.merge_relationship("TOOK", {"Patient", "1"}, {"Drug", "NOPE"});
    FAIL() << "expected dangling_endpoint";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dangling_endpoint);
  }
  EXPECT_EQ(g.relationship_count(), 0u);
  EXPECT_TRUE(g.audit().empty());
}

TEST(PropertyGraph, MergeFromIsIdempotentAndCommutative) {
  PropertyGraph a, b;
  a.merge_node("X", "1");
  a.merge_node("Y", "2");
  a.merge_relationship("R", {"X", "1"}, {"Y", "2"});
  b.merge_node("Y", "2");
  b.merge_node("Z", "3");
  b.merge_relationship("S", {"Y", "2"}, {"Z", "3"});
  PropertyGraph ab = a, ba = b;
  ab.merge_from(b);
  ba.merge_from(a);
  EXPECT_EQ(ab, ba);
  PropertyGraph twice = ab;
  twice.merge_from(ab);
  EXPECT_EQ(twice, ab);
}

TEST(GraphStats, EmptyGraph) {
  auto s = graph_stats(PropertyGraph{});
  EXPECT_TRUE(s.nodes_per_label.empty());
  EXPECT_TRUE(s.edges_per_type.empty());
  EXPECT_TRUE(s.top_degree.empty());
  auto j = nlohmann::json::parse(format_stats_json(s));
  EXPECT_TRUE(j["nodes"].empty());
  EXPECT_TRUE(j["relationships"].empty());
  EXPECT_EQ(format_stats(s), "nodes 0\nrelationships 0\ntop degree\n");
}

TEST(GraphStats, TopDegreeTiesBreakByKey) {
  PropertyGraph g;
  for (const char* k : {"c", "a", "b"}) g.merge_node("N", k);
  g.merge_node("H", "hub");
  for (const char* k : {"c", "a", "b"}) g.merge_relationship("R", {"H", "hub"}, {"N", k});
  auto s = graph_stats(g, 3);
  ASSERT_EQ(s.top_degree.size(), 3u);
  EXPECT_EQ(s.top_degree[0].key.key_value, "hub");
  EXPECT_EQ(s.top_degree[0].degree, 3u);
  EXPECT_EQ(s.top_degree[1].key.key_value, "a");
  EXPECT_EQ(s.top_degree[2].key.key_value, "b");
}
