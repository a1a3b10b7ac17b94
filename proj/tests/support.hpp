// Shared helpers for the unit tests: from-scratch recomputations that the
// incremental structures are compared against.

#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "mhcd/coloration.hpp"
#include "mhcd/graph.hpp"
#include "mhcd/hierarchy.hpp"

namespace mhcd::testing {

inline Coloration with_labels(const Graph& g, std::vector<std::uint32_t> labels) {
  return Coloration::from_labels(g, labels);
}

/// Sorted (u, v, w) triples with u <= v.
inline std::vector<std::tuple<NodeId, NodeId, double>> entries(const Graph& g) {
  std::vector<std::tuple<NodeId, NodeId, double>> out;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const auto& nb : g.neighbors(u)) {
      if (nb.node >= u) out.emplace_back(u, nb.node, nb.weight);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline void expect_same_graph(const Graph& a, const Graph& b, double tol = 1e-10) {
  ASSERT_EQ(a.node_count(), b.node_count());
  for (NodeId u = 0; u < a.node_count(); ++u) {
    for (const auto& nb : a.neighbors(u)) {
      EXPECT_NEAR(b.weight(u, nb.node), nb.weight, tol) << u << "-" << nb.node;
    }
    for (const auto& nb : b.neighbors(u)) {
      EXPECT_NEAR(a.weight(u, nb.node), nb.weight, tol) << u << "-" << nb.node;
    }
    EXPECT_NEAR(a.degree(u), b.degree(u), tol);
  }
  EXPECT_NEAR(a.total_weight(), b.total_weight(), tol * (1.0 + a.total_weight()));
}

inline void expect_consistent(const Graph& g, const Coloration& c) {
  std::map<CommunityId, std::vector<NodeId>> members;
  for (const NodeId i : c.nodes()) members[c.community_of(i)].push_back(i);
  ASSERT_EQ(members.size(), c.community_count());
  double total = 0.0;
  for (auto& [id, nodes] : members) {
    ASSERT_TRUE(c.is_live(id));
    EXPECT_EQ(c.community_size(id), nodes.size());
    auto listed = std::vector<NodeId>(c.members(id).begin(), c.members(id).end());
    std::sort(listed.begin(), listed.end());
    std::sort(nodes.begin(), nodes.end());
    EXPECT_EQ(listed, nodes);
    double degree = 0.0;
    for (const NodeId i : nodes) degree += g.degree(i);
    EXPECT_NEAR(c.community_degree(id), degree, 1e-10 * (1.0 + degree));
    total += c.community_degree(id);
  }
  std::set<NodeId> frontier;
  for (const NodeId i : c.nodes()) {
    for (const auto& nb : g.neighbors(i)) {
      if (nb.node != i && c.community_of(nb.node) != c.community_of(i)) frontier.insert(i);
    }
  }
  EXPECT_EQ(std::set<NodeId>(c.frontier().begin(), c.frontier().end()), frontier);
  EXPECT_EQ(c.frontier_size(), frontier.size());
  for (NodeId i = 0; i < g.node_count(); ++i) {
    EXPECT_EQ(c.is_frontier(i), frontier.count(i) == 1);
  }
  if (c.node_count() == g.node_count()) {
    EXPECT_NEAR(total, 2.0 * g.total_weight(), 1e-10 * (1.0 + total));
  }
}

/// Every level of `h` agrees with a from-scratch aggregation of the level
/// below, degrees and m are preserved, and each coloration is consistent.
inline void expect_hierarchy_consistent(const Hierarchy& h) {
  const double m = h.base_graph().total_weight();
  for (std::size_t l = 0; l < h.level_count(); ++l) {
    expect_consistent(h.graph(l), h.coloration(l));
    EXPECT_NEAR(h.graph(l).total_weight(), m, 1e-10 * (1.0 + m));
    EXPECT_NEAR(h.graph(l).recompute_total_weight(), m, 1e-10 * (1.0 + m));
    if (l == h.top_level()) continue;
    const Graph rebuilt = aggregate_by_slot(h.graph(l), h.coloration(l));
    Graph upper = h.graph(l + 1);
    upper.ensure_nodes(rebuilt.node_count());
    Graph padded = rebuilt;
    padded.ensure_nodes(upper.node_count());
    expect_same_graph(upper, padded);
    std::set<NodeId> live;
    for (const CommunityId c : h.coloration(l).communities()) live.insert(slot_of(c));
    const auto present = h.coloration(l + 1).nodes();
    EXPECT_EQ(std::set<NodeId>(present.begin(), present.end()), live);
  }
}

/// Partition of the base nodes as a set of sorted blocks.
inline std::set<std::vector<NodeId>> blocks(const std::vector<std::uint32_t>& labels) {
  std::map<std::uint32_t, std::vector<NodeId>> groups;
  for (NodeId i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  std::set<std::vector<NodeId>> out;
  for (auto& [label, nodes] : groups) out.insert(nodes);
  return out;
}

}  // namespace mhcd::testing
