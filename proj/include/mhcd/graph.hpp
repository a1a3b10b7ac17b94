/// @file
/// Weighted undirected graph with self-loops and incremental edits.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mhcd/types.hpp"

namespace mhcd {

struct Neighbor {
  NodeId node;
  double weight;
};

struct WeightedEdge {
  NodeId u;
  NodeId v;
  double weight = 1.0;
};

enum class EditKind { kAddEdge, kDelEdge, kAddNode };

/// One change to a graph. For kAddNode only `u` is read.
struct GraphEdit {
  EditKind kind = EditKind::kAddEdge;
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;
};

/// What happened to the stored adjacency entry during a weight update.
enum class EntryChange { kUpdated, kCreated, kErased };

/// Result of Graph::add_weight. `applied` is the change actually made to
/// A_uv; it differs from the requested delta only when rounding residue of an
/// exact cancellation was dropped together with the entry.
struct WeightUpdate {
  EntryChange change;
  double applied;
};

/// Sparse symmetric adjacency A with degrees k_i and total weight m.
///
/// Each undirected pair is stored once per endpoint; a self-loop of weight w
/// is stored once and contributes w to k_i. Entries whose weight reaches zero
/// are removed, so every stored weight is strictly positive. Degrees and m
/// are maintained incrementally under edits.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count);

  /// Builds a graph from (u, v, w) triples. Duplicate pairs are summed and
  /// (u, v) and (v, u) name the same edge. The node set is 0..max endpoint,
  /// or 0..node_count-1 if that is larger.
  ///
  /// @throw std::invalid_argument on a non-positive or non-finite weight.
  static Graph from_edge_list(std::span<const WeightedEdge> edges, std::size_t node_count = 0);

  std::size_t node_count() const noexcept { return adjacency_.size(); }

  /// Number of stored undirected entries, self-loops included.
  std::size_t entry_count() const noexcept { return entries_; }

  /// @throw std::out_of_range for an unknown node.
  double degree(NodeId i) const;

  /// A_ii, or 0 when i has no loop.
  double self_loop(NodeId i) const;

  /// A_uv, or 0 when the pair is not stored.
  double weight(NodeId u, NodeId v) const;

  double total_weight() const noexcept { return total_weight_; }

  std::span<const Neighbor> neighbors(NodeId i) const;

  /// True when i has an edge to some other node, i.e. k_i - A_ii > 0.
  bool has_non_loop_edge(NodeId i) const;

  /// Number of nodes with at least one non-loop edge.
  std::size_t connected_node_count() const noexcept { return connected_nodes_; }

  NodeId add_node();
  void ensure_nodes(std::size_t count);

  /// Throws exactly the errors apply_edit would, without changing the graph.
  void validate_edit(const GraphEdit& edit) const;

  /// Add-edge creates unknown endpoints. Del-edge removes weight and deletes
  /// the entry when it reaches zero.
  ///
  /// @throw std::invalid_argument for a non-positive weight.
  /// @throw std::domain_error when deleting an absent edge or more weight
  ///        than is stored.
  void apply_edit(const GraphEdit& edit);

  /// Low-level signed update A_uv += delta on both endpoints, used by edits
  /// and by hierarchy maintenance. A result within rounding of zero erases
  /// the entry. Both endpoints must exist.
  WeightUpdate add_weight(NodeId u, NodeId v, double delta);

  /// Sum of degrees halved, computed from the adjacency.
  double recompute_total_weight() const;
  double recompute_degree(NodeId i) const;

 private:
  void check_node(NodeId i) const;
  std::size_t find(NodeId u, NodeId v) const;
  void erase_entry(NodeId u, std::size_t pos);
  void bump_non_loop(NodeId u, int delta);

  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> degree_;
  std::vector<double> loop_;
  std::vector<std::uint32_t> non_loop_entries_;
  std::size_t connected_nodes_ = 0;
  std::size_t entries_ = 0;
  double total_weight_ = 0.0;
};

}  // namespace mhcd
