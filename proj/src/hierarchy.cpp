#include "mhcd/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace mhcd {

namespace {

// Net contributions smaller than this relative to their magnitude are an
// exact cancellation blurred by rounding.
constexpr double kCancelTolerance = 1e-13;

// Adds the contribution of every stored entry of `graph` to `out`, with node
// u of the input mapped to image[u]. Entries are visited once per
// undirected pair.
void contract_into(const Graph& graph, std::span<const NodeId> nodes,
                   const std::vector<NodeId>& image, Graph& out) {
  for (const NodeId u : nodes) {
    for (const auto& nb : graph.neighbors(u)) {
      if (nb.node < u) continue;
      const NodeId a = image[u];
      const NodeId b = image[nb.node];
      if (nb.node == u) {
        out.add_weight(a, a, nb.weight);
      } else if (a == b) {
        out.add_weight(a, a, 2.0 * nb.weight);
      } else {
        out.add_weight(a, b, nb.weight);
      }
    }
  }
}

}  // namespace

Aggregation aggregate(const Graph& graph, const Coloration& coloration) {
  std::vector<NodeId> image(graph.node_count(), 0);
  std::unordered_map<CommunityId, NodeId> index;
  std::vector<NodeId> nodes;
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    if (!coloration.contains(i)) continue;
    const auto [it, inserted] =
        index.try_emplace(coloration.community_of(i), static_cast<NodeId>(index.size()));
    image[i] = it->second;
    nodes.push_back(i);
  }
  Aggregation result{Graph(index.size()), {}};
  contract_into(graph, nodes, image, result.graph);
  result.upmap.assign(image.begin(), image.end());
  return result;
}

Graph aggregate_by_slot(const Graph& graph, const Coloration& coloration) {
  std::vector<NodeId> image(graph.node_count(), 0);
  for (const NodeId i : coloration.nodes()) image[i] = slot_of(coloration.community_of(i));
  Graph out(coloration.slot_capacity());
  std::vector<NodeId> nodes(coloration.nodes().begin(), coloration.nodes().end());
  std::sort(nodes.begin(), nodes.end());
  contract_into(graph, nodes, image, out);
  return out;
}

Hierarchy::Hierarchy(Graph base, std::size_t levels) {
  if (levels == 0) throw std::invalid_argument("a hierarchy needs at least one level");
  Coloration c = Coloration::singletons(base);
  levels_.push_back({std::move(base), std::move(c)});
  build_upper_levels(levels);
}

Hierarchy::Hierarchy(Graph base, const Coloration& base_coloration, std::size_t levels) {
  if (levels == 0) throw std::invalid_argument("a hierarchy needs at least one level");
  levels_.push_back({std::move(base), base_coloration});
  build_upper_levels(levels);
}

void Hierarchy::build_upper_levels(std::size_t levels) {
  levels_.reserve(levels);
  while (levels_.size() < levels) {
    const Level& below = levels_.back();
    Graph g = aggregate_by_slot(below.graph, below.coloration);
    Coloration c;
    for (const CommunityId id : below.coloration.communities()) {
      c.insert_singleton(g, slot_of(id));
    }
    levels_.push_back({std::move(g), std::move(c)});
  }
}

CommunityId Hierarchy::top_community(std::size_t level, NodeId node) const {
  NodeId x = node;
  for (std::size_t l = level; l < top_level(); ++l) x = image(l, x);
  return levels_.back().coloration.community_of(x);
}

void Hierarchy::apply_deltas(std::size_t level, std::vector<Delta> deltas) {
  for (auto& d : deltas) {
    if (d.u > d.v) std::swap(d.u, d.v);
  }
  std::sort(deltas.begin(), deltas.end(), [](const Delta& a, const Delta& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  Level& lv = levels_[level];
  const bool has_upper = level < top_level();
  std::vector<Delta> upper;
  for (std::size_t k = 0; k < deltas.size();) {
    const NodeId u = deltas[k].u;
    const NodeId v = deltas[k].v;
    double net = 0.0;
    double magnitude = 0.0;
    for (; k < deltas.size() && deltas[k].u == u && deltas[k].v == v; ++k) {
      net += deltas[k].weight;
      magnitude += std::abs(deltas[k].weight);
    }
    if (std::abs(net) <= kCancelTolerance * magnitude) continue;

    const WeightUpdate update = lv.graph.add_weight(u, v, net);
    lv.coloration.on_weight_change(u, v, update.applied, update.change);
    if (!has_upper) continue;
    const NodeId a = image(level, u);
    const NodeId b = image(level, v);
    if (u == v) {
      upper.push_back({a, a, update.applied});
    } else if (a == b) {
      upper.push_back({a, a, 2.0 * update.applied});
    } else {
      upper.push_back({a, b, update.applied});
    }
  }
  if (!upper.empty()) apply_deltas(level + 1, std::move(upper));
}

void Hierarchy::insert_supernode(std::size_t level, NodeId node) {
  Level& lv = levels_[level];
  lv.graph.ensure_nodes(std::size_t{node} + 1);
  const CommunityId c = lv.coloration.insert_singleton(lv.graph, node);
  if (level < top_level()) insert_supernode(level + 1, slot_of(c));
}

void Hierarchy::erase_supernode(std::size_t level, NodeId node) {
  Level& lv = levels_[level];
  // Whatever weight is left is rounding residue of the transfers that
  // emptied this super-node.
  std::vector<Delta> residue;
  for (const auto& nb : lv.graph.neighbors(node)) residue.push_back({node, nb.node, -nb.weight});
  if (!residue.empty()) apply_deltas(level, std::move(residue));

  const CommunityId died = lv.coloration.erase_node(node);
  if (died != kNoCommunity && level < top_level()) erase_supernode(level + 1, slot_of(died));
}

CommunityId Hierarchy::apply_move(std::size_t level, NodeId node, CommunityId target) {
  Level& lv = levels_.at(level);
  const CommunityId from = lv.coloration.community_of(node);
  const CommunityId to = lv.coloration.apply_move(lv.graph, node, target);
  if (to == from || level == top_level()) return to;

  const bool died = !lv.coloration.is_live(from);
  const NodeId old_image = slot_of(from);
  const NodeId new_image = slot_of(to);
  if (target == kNewCommunity) insert_supernode(level + 1, new_image);

  std::vector<Delta> deltas;
  deltas.reserve(2 * lv.graph.neighbors(node).size());
  for (const auto& nb : lv.graph.neighbors(node)) {
    if (nb.node == node) {
      deltas.push_back({old_image, old_image, -nb.weight});
      deltas.push_back({new_image, new_image, nb.weight});
      continue;
    }
    const NodeId j = image(level, nb.node);
    if (j == old_image) {
      deltas.push_back({old_image, old_image, -2.0 * nb.weight});
    } else {
      deltas.push_back({old_image, j, -nb.weight});
    }
    if (j == new_image) {
      deltas.push_back({new_image, new_image, 2.0 * nb.weight});
    } else {
      deltas.push_back({new_image, j, nb.weight});
    }
  }
  apply_deltas(level + 1, std::move(deltas));
  if (died) erase_supernode(level + 1, old_image);
  return to;
}

void Hierarchy::add_base_node() {
  Level& base = levels_.front();
  const NodeId id = base.graph.add_node();
  const CommunityId c = base.coloration.insert_singleton(base.graph, id);
  if (top_level() > 0) insert_supernode(1, slot_of(c));
}

void Hierarchy::propagate_edit(const GraphEdit& edit) {
  Level& base = levels_.front();
  base.graph.validate_edit(edit);
  switch (edit.kind) {
    case EditKind::kAddNode:
      while (base_graph().node_count() <= edit.u) add_base_node();
      return;
    case EditKind::kAddEdge:
      while (base_graph().node_count() <= std::max(edit.u, edit.v)) add_base_node();
      apply_deltas(0, {{edit.u, edit.v, edit.weight}});
      return;
    case EditKind::kDelEdge:
      apply_deltas(0, {{edit.u, edit.v, -edit.weight}});
      return;
  }
}

std::vector<std::uint32_t> Hierarchy::flat_labels() const {
  const std::size_t n = base_graph().node_count();
  std::vector<std::uint32_t> labels(n);
  for (NodeId i = 0; i < n; ++i) labels[i] = slot_of(top_community(0, i));
  return labels;
}

Coloration Hierarchy::flatten() const {
  const auto labels = flat_labels();
  return Coloration::from_labels(base_graph(), labels);
}

}  // namespace mhcd
