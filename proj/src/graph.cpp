#include "mhcd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mhcd {

namespace {

// A weight this small relative to the operands of the update is rounding
// residue of an exact cancellation.
constexpr double kZeroTolerance = 1e-12;

}  // namespace

Graph::Graph(std::size_t node_count) { ensure_nodes(node_count); }

Graph Graph::from_edge_list(std::span<const WeightedEdge> edges, std::size_t node_count) {
  std::size_t n = node_count;
  for (const auto& e : edges) {
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                  " has non-positive weight");
    }
    n = std::max<std::size_t>(n, std::max(e.u, e.v) + std::size_t{1});
  }
  Graph g(n);
  for (const auto& e : edges) g.add_weight(e.u, e.v, e.weight);
  return g;
}

void Graph::check_node(NodeId i) const {
  if (i >= adjacency_.size()) {
    throw std::out_of_range("unknown node " + std::to_string(i));
  }
}

double Graph::degree(NodeId i) const {
  check_node(i);
  return degree_[i];
}

double Graph::self_loop(NodeId i) const {
  check_node(i);
  return loop_[i];
}

double Graph::weight(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  const std::size_t pos = find(u, v);
  return pos == adjacency_[u].size() ? 0.0 : adjacency_[u][pos].weight;
}

std::span<const Neighbor> Graph::neighbors(NodeId i) const {
  check_node(i);
  return adjacency_[i];
}

bool Graph::has_non_loop_edge(NodeId i) const {
  check_node(i);
  return non_loop_entries_[i] > 0;
}

NodeId Graph::add_node() {
  const auto id = static_cast<NodeId>(adjacency_.size());
  ensure_nodes(adjacency_.size() + 1);
  return id;
}

void Graph::ensure_nodes(std::size_t count) {
  if (count <= adjacency_.size()) return;
  adjacency_.resize(count);
  degree_.resize(count, 0.0);
  loop_.resize(count, 0.0);
  non_loop_entries_.resize(count, 0);
}

std::size_t Graph::find(NodeId u, NodeId v) const {
  const auto& list = adjacency_[u];
  for (std::size_t k = 0; k < list.size(); ++k) {
    if (list[k].node == v) return k;
  }
  return list.size();
}

void Graph::bump_non_loop(NodeId u, int delta) {
  const bool before = non_loop_entries_[u] > 0;
  non_loop_entries_[u] = static_cast<std::uint32_t>(static_cast<int>(non_loop_entries_[u]) + delta);
  const bool after = non_loop_entries_[u] > 0;
  if (before != after) {
    if (after) {
      ++connected_nodes_;
    } else {
      --connected_nodes_;
    }
  }
}

void Graph::erase_entry(NodeId u, std::size_t pos) {
  auto& list = adjacency_[u];
  list[pos] = list.back();
  list.pop_back();
}

WeightUpdate Graph::add_weight(NodeId u, NodeId v, double delta) {
  check_node(u);
  check_node(v);
  const std::size_t pos = find(u, v);
  if (pos == adjacency_[u].size()) {
    if (delta <= 0.0) {
      throw std::domain_error("no edge " + std::to_string(u) + "-" + std::to_string(v) +
                              " to remove weight from");
    }
    adjacency_[u].push_back({v, delta});
    degree_[u] += delta;
    if (u == v) {
      loop_[u] = delta;
      total_weight_ += 0.5 * delta;
    } else {
      adjacency_[v].push_back({u, delta});
      degree_[v] += delta;
      total_weight_ += delta;
      bump_non_loop(u, +1);
      bump_non_loop(v, +1);
    }
    ++entries_;
    return {EntryChange::kCreated, delta};
  }

  const double old = adjacency_[u][pos].weight;
  const double updated = old + delta;
  const double scale = std::max(old, std::abs(delta));
  if (updated < -kZeroTolerance * scale) {
    throw std::domain_error("removing " + std::to_string(-delta) + " from edge " +
                            std::to_string(u) + "-" + std::to_string(v) + " of weight " +
                            std::to_string(old));
  }
  if (updated <= kZeroTolerance * scale) {
    // Remove exactly what was stored so degrees carry no residue.
    erase_entry(u, pos);
    degree_[u] -= old;
    if (u == v) {
      loop_[u] = 0.0;
      total_weight_ -= 0.5 * old;
    } else {
      erase_entry(v, find(v, u));
      degree_[v] -= old;
      total_weight_ -= old;
      bump_non_loop(u, -1);
      bump_non_loop(v, -1);
    }
    if (adjacency_[u].empty()) degree_[u] = 0.0;
    if (adjacency_[v].empty()) degree_[v] = 0.0;
    --entries_;
    if (entries_ == 0) total_weight_ = 0.0;
    return {EntryChange::kErased, -old};
  }

  adjacency_[u][pos].weight = updated;
  degree_[u] += delta;
  if (u == v) {
    loop_[u] = updated;
    total_weight_ += 0.5 * delta;
  } else {
    adjacency_[v][find(v, u)].weight = updated;
    degree_[v] += delta;
    total_weight_ += delta;
  }
  return {EntryChange::kUpdated, delta};
}

void Graph::validate_edit(const GraphEdit& edit) const {
  switch (edit.kind) {
    case EditKind::kAddNode:
      return;
    case EditKind::kAddEdge:
      if (!(edit.weight > 0.0) || !std::isfinite(edit.weight)) {
        throw std::invalid_argument("add-edge weight must be positive");
      }
      return;
    case EditKind::kDelEdge: {
      if (!(edit.weight > 0.0) || !std::isfinite(edit.weight)) {
        throw std::invalid_argument("del-edge weight must be positive");
      }
      if (edit.u >= node_count() || edit.v >= node_count()) {
        throw std::domain_error("del-edge on unknown node");
      }
      const double stored = weight(edit.u, edit.v);
      if (stored == 0.0) {
        throw std::domain_error("del-edge " + std::to_string(edit.u) + "-" +
                                std::to_string(edit.v) + " on absent edge");
      }
      if (edit.weight - stored > kZeroTolerance * stored) {
        throw std::domain_error("del-edge " + std::to_string(edit.u) + "-" +
                                std::to_string(edit.v) + " removes more than the stored weight");
      }
      return;
    }
  }
}

void Graph::apply_edit(const GraphEdit& edit) {
  validate_edit(edit);
  switch (edit.kind) {
    case EditKind::kAddNode:
      ensure_nodes(std::size_t{edit.u} + 1);
      break;
    case EditKind::kAddEdge:
      ensure_nodes(std::size_t{std::max(edit.u, edit.v)} + 1);
      add_weight(edit.u, edit.v, edit.weight);
      break;
    case EditKind::kDelEdge:
      add_weight(edit.u, edit.v, -edit.weight);
      break;
  }
}

double Graph::recompute_degree(NodeId i) const {
  check_node(i);
  double k = 0.0;
  for (const auto& nb : adjacency_[i]) k += nb.weight;
  return k;
}

double Graph::recompute_total_weight() const {
  double sum = 0.0;
  for (NodeId i = 0; i < adjacency_.size(); ++i) sum += recompute_degree(i);
  return 0.5 * sum;
}

}  // namespace mhcd
