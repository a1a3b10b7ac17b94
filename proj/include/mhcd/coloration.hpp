/// @file
/// Partition of a graph's nodes into communities, with the per-community
/// statistics every proposal and modularity delta reads.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mhcd/graph.hpp"
#include "mhcd/types.hpp"

namespace mhcd {

/// A coloration C of (a subset of) the nodes of a graph.
///
/// Maintains, incrementally under moves and graph edits:
///   - the assignment C(i) and member list of every live community,
///   - community sizes |c| and community degrees k^C_c = sum of member degrees,
///   - the frontier F^C: nodes with an edge to a different community.
///
/// Empty communities are deleted as soon as they empty. A node may be absent
/// from the coloration; aggregated levels use this for super-node slots that
/// are not currently in use. Every present node must exist in the graph the
/// coloration is used with, and neighbours of present nodes must be present.
class Coloration {
 public:
  Coloration() = default;

  /// Every node of `graph` in its own community. Node i gets slot i.
  static Coloration singletons(const Graph& graph);

  /// Nodes with equal labels share a community. labels.size() must equal
  /// graph.node_count().
  static Coloration from_labels(const Graph& graph, std::span<const std::uint32_t> labels);

  std::size_t node_capacity() const noexcept { return assignment_.size(); }
  /// One past the largest community slot ever used.
  std::size_t slot_capacity() const noexcept { return slots_.size(); }
  bool contains(NodeId i) const noexcept {
    return i < assignment_.size() && assignment_[i] != kNoCommunity;
  }

  /// Number of present nodes.
  std::size_t node_count() const noexcept { return present_.size(); }
  NodeId node_at(std::size_t k) const { return present_[k]; }
  std::span<const NodeId> nodes() const noexcept { return present_; }

  /// @throw std::out_of_range when i is not present.
  CommunityId community_of(NodeId i) const;

  bool is_live(CommunityId c) const noexcept;
  std::size_t community_count() const noexcept { return live_communities_; }

  /// @throw std::out_of_range for a dead id.
  std::size_t community_size(CommunityId c) const;
  double community_degree(CommunityId c) const;
  std::span<const NodeId> members(CommunityId c) const;

  /// Live community ids in slot order.
  std::vector<CommunityId> communities() const;

  std::size_t frontier_size() const noexcept { return frontier_.size(); }
  bool is_frontier(NodeId i) const noexcept {
    return i < frontier_pos_.size() && frontier_pos_[i] != kAbsent;
  }
  NodeId frontier_at(std::size_t k) const { return frontier_[k]; }
  std::span<const NodeId> frontier() const noexcept { return frontier_; }

  /// |F^{C'}| for C' the coloration after moving i to target, without
  /// applying the move. O(deg i).
  std::size_t frontier_size_after(const Graph& graph, NodeId i, CommunityId target) const;

  /// Moves i into community `target` or, for kNewCommunity, into a fresh
  /// singleton. Moving i into its own community, or splitting off a node that
  /// is already alone, leaves the coloration unchanged. Returns i's community
  /// after the move.
  ///
  /// @throw std::invalid_argument for a dead target id.
  CommunityId apply_move(const Graph& graph, NodeId i, CommunityId target);

  /// Adds an absent node as a fresh singleton community and returns its id.
  /// Only edges to nodes already present count towards the frontier, so a
  /// set of nodes may be inserted in any order.
  CommunityId insert_singleton(const Graph& graph, NodeId i);

  /// Removes a present node that has no stored edges. Returns the id of the
  /// node's community if the removal emptied it, else kNoCommunity.
  CommunityId erase_node(NodeId i);

  /// Keeps community degrees and the frontier in step with a graph update
  /// A_uv += delta that has already been applied to the graph.
  void on_weight_change(NodeId u, NodeId v, double delta, EntryChange change);

  /// Canonical restricted-growth labels of the present nodes in ascending
  /// node order: the first node gets 0, each new community the next label.
  /// Two colorations describe the same partition iff these are equal.
  std::vector<std::uint32_t> canonical_labels() const;

 private:
  static constexpr std::uint32_t kAbsent = 0xffffffffU;

  struct Community {
    std::uint32_t generation = 0;
    bool live = false;
    double degree = 0.0;
    std::vector<NodeId> members;
  };

  const Community& live_community(CommunityId c) const;
  CommunityId allocate_community();
  void kill_community(std::uint32_t slot);
  void add_member(NodeId i, CommunityId c, double degree);
  bool remove_member(NodeId i, double degree);
  void set_external(NodeId i, std::uint32_t count);
  void ensure_capacity(std::size_t n);
  void recount_external(const Graph& graph);

  std::vector<CommunityId> assignment_;
  std::vector<std::uint32_t> member_pos_;
  std::vector<NodeId> present_;
  std::vector<std::uint32_t> present_pos_;
  // Number of distinct non-loop neighbours in another community.
  std::vector<std::uint32_t> external_;
  std::vector<NodeId> frontier_;
  std::vector<std::uint32_t> frontier_pos_;
  std::vector<Community> slots_;
  std::vector<std::uint32_t> free_slots_;
  std::size_t live_communities_ = 0;
};

/// k^C_{i,c}: total weight of edges from i to members of c, A_ii included
/// when c = C(i). Returns 0 for a dead or foreign community.
///
/// @throw std::out_of_range for an unknown node.
double node_to_community_weight(const Graph& graph, const Coloration& coloration, NodeId i,
                                CommunityId c);

}  // namespace mhcd
