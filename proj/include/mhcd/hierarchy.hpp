/// @file
/// The family of aggregated graphs (G_l, C_l), l = 0..L-1, kept consistent
/// under accepted moves and base-graph edits.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mhcd/coloration.hpp"
#include "mhcd/graph.hpp"
#include "mhcd/types.hpp"

namespace mhcd {

struct Aggregation {
  Graph graph;
  /// Super-node of every node of the input graph.
  std::vector<NodeId> upmap;
};

/// Contracts each community of `coloration` to one super-node. Cross
/// weights are summed; a super-node's loop is the ordered-pair sum of its
/// internal weight (twice each internal edge, once each internal loop), which
/// preserves degrees and m. Super-nodes are numbered by first appearance in
/// ascending node order.
Aggregation aggregate(const Graph& graph, const Coloration& coloration);

/// Same contraction, but the super-node of community c is slot_of(c), so
/// the result has coloration.slot_capacity() nodes and dead slots are
/// isolated.
Graph aggregate_by_slot(const Graph& graph, const Coloration& coloration);

/// Levels are indexed from 0 (the base graph) to top_level() = L - 1.
///
/// The super-node of level l+1 standing for community c of C_l is
/// slot_of(c). Slots recycled by C_l are absent from C_{l+1} and isolated in
/// G_{l+1} while unused, so V_{l+1} is in bijection with the live
/// communities of C_l.
class Hierarchy {
 public:
  /// Cold start: singleton colorations at every level, G_{l+1} isomorphic to G_l.
  Hierarchy(Graph base, std::size_t levels);

  /// C_0 = base_coloration; upper levels aggregate it and start as singletons.
  Hierarchy(Graph base, const Coloration& base_coloration, std::size_t levels);

  std::size_t level_count() const noexcept { return levels_.size(); }
  std::size_t top_level() const noexcept { return levels_.size() - 1; }

  const Graph& graph(std::size_t level) const { return levels_.at(level).graph; }
  const Coloration& coloration(std::size_t level) const { return levels_.at(level).coloration; }
  const Graph& base_graph() const { return levels_.front().graph; }

  /// map^{C_l}: the level+1 super-node containing `node`. level < top_level().
  NodeId image(std::size_t level, NodeId node) const {
    return slot_of(levels_[level].coloration.community_of(node));
  }

  /// C_{L,l}(node): the top-level community reached by composing maps.
  CommunityId top_community(std::size_t level, NodeId node) const;

  /// Applies a move to C_level and maintains every upper level: the moved
  /// node's weight is transferred from its old super-node chain to the new
  /// one, a new singleton at `level` gets a fresh singleton super-node at
  /// every upper level, and super-nodes whose community emptied are removed.
  /// Returns the node's community after the move.
  CommunityId apply_move(std::size_t level, NodeId node, CommunityId target);

  /// Applies an edit to G_0 and carries the weight change up through every
  /// level. New base nodes enter every level as fresh singletons.
  ///
  /// @throw the errors of Graph::apply_edit.
  void propagate_edit(const GraphEdit& edit);

  /// Per base node, a label identifying its top-level community.
  std::vector<std::uint32_t> flat_labels() const;

  /// The partition of G_0 induced by the hierarchy.
  Coloration flatten() const;

 private:
  struct Level {
    Graph graph;
    Coloration coloration;
  };

  struct Delta {
    NodeId u;
    NodeId v;
    double weight;
  };

  void build_upper_levels(std::size_t levels);
  void apply_deltas(std::size_t level, std::vector<Delta> deltas);
  void insert_supernode(std::size_t level, NodeId node);
  void erase_supernode(std::size_t level, NodeId node);
  void add_base_node();

  std::vector<Level> levels_;
};

}  // namespace mhcd
