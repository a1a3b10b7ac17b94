#include "mhcd/modularity.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhcd {

namespace {

double checked_total_weight(const Graph& graph) {
  const double m = graph.total_weight();
  if (!(m > 0.0)) throw std::domain_error("modularity is undefined for a graph without edges");
  return m;
}

// Q from per-community ordered internal weight and degree totals.
double assemble(const std::vector<double>& internal, const std::vector<double>& degree, double m) {
  const double two_m = 2.0 * m;
  double q = 0.0;
  for (std::size_t c = 0; c < internal.size(); ++c) {
    const double share = degree[c] / two_m;
    q += internal[c] / two_m - share * share;
  }
  return q;
}

// Weights from i to communities `from` and `to`, loop excluded.
struct Links {
  double to_source = 0.0;
  double to_target = 0.0;
};

Links links(const Graph& graph, const Coloration& coloration, NodeId i, CommunityId from,
            CommunityId to) {
  Links out;
  for (const auto& nb : graph.neighbors(i)) {
    if (nb.node == i) continue;
    const CommunityId c = coloration.community_of(nb.node);
    if (c == from) {
      out.to_source += nb.weight;
    } else if (c == to) {
      out.to_target += nb.weight;
    }
  }
  return out;
}

}  // namespace

double modularity(const Graph& graph, const Coloration& coloration) {
  const double m = checked_total_weight(graph);
  std::vector<double> internal(coloration.slot_capacity(), 0.0);
  std::vector<double> degree(coloration.slot_capacity(), 0.0);
  for (const NodeId i : coloration.nodes()) {
    const std::uint32_t s = slot_of(coloration.community_of(i));
    degree[s] += graph.degree(i);
    for (const auto& nb : graph.neighbors(i)) {
      if (coloration.community_of(nb.node) == coloration.community_of(i)) internal[s] += nb.weight;
    }
  }
  return assemble(internal, degree, m);
}

double modularity_of_labels(const Graph& graph, std::span<const std::uint32_t> labels) {
  const double m = checked_total_weight(graph);
  if (labels.size() != graph.node_count()) {
    throw std::invalid_argument("label count does not match node count");
  }
  const std::size_t k =
      labels.empty() ? 0 : std::size_t{*std::max_element(labels.begin(), labels.end())} + 1;
  std::vector<double> internal(k, 0.0);
  std::vector<double> degree(k, 0.0);
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    degree[labels[i]] += graph.degree(i);
    for (const auto& nb : graph.neighbors(i)) {
      if (labels[nb.node] == labels[i]) internal[labels[i]] += nb.weight;
    }
  }
  return assemble(internal, degree, m);
}

double delta_join(const Graph& graph, const Coloration& coloration, NodeId i, CommunityId c) {
  const CommunityId own = coloration.community_of(i);
  if (coloration.community_size(own) != 1) {
    throw ContractError("delta_join needs node " + std::to_string(i) + " to be alone");
  }
  if (c == own || !coloration.is_live(c)) {
    throw ContractError("delta_join needs another live community");
  }
  const double m = checked_total_weight(graph);
  const double k_ic = links(graph, coloration, i, own, c).to_target;
  return (k_ic - graph.degree(i) * coloration.community_degree(c) / (2.0 * m)) / m;
}

double delta_leave(const Graph& graph, const Coloration& coloration, NodeId i) {
  const CommunityId own = coloration.community_of(i);
  if (coloration.community_size(own) == 1) return 0.0;
  const double m = checked_total_weight(graph);
  const double k_i = graph.degree(i);
  const double inside = links(graph, coloration, i, own, kNoCommunity).to_source;
  return -(inside - (k_i / (2.0 * m)) * (coloration.community_degree(own) - k_i)) / m;
}

double delta_move(const Graph& graph, const Coloration& coloration, NodeId i,
                  CommunityId target) {
  const CommunityId own = coloration.community_of(i);
  if (target == own) return 0.0;
  if (target == kNewCommunity) return delta_leave(graph, coloration, i);
  if (!coloration.is_live(target)) {
    throw std::invalid_argument("move target " + std::to_string(target) + " is not live");
  }
  const double m = checked_total_weight(graph);
  const double k_i = graph.degree(i);
  const Links l = links(graph, coloration, i, own, target);
  const double leave =
      coloration.community_size(own) == 1
          ? 0.0
          : -(l.to_source - (k_i / (2.0 * m)) * (coloration.community_degree(own) - k_i)) / m;
  const double join = (l.to_target - k_i * coloration.community_degree(target) / (2.0 * m)) / m;
  return leave + join;
}

double delta_hier(const Hierarchy& hierarchy, std::size_t level, NodeId i, CommunityId target) {
  if (level >= hierarchy.level_count()) {
    throw std::out_of_range("level " + std::to_string(level) + " is outside the hierarchy");
  }
  const Graph& graph = hierarchy.graph(level);
  const Coloration& coloration = hierarchy.coloration(level);
  if (level == hierarchy.top_level()) return delta_move(graph, coloration, i, target);

  const CommunityId own = coloration.community_of(i);
  if (target == own) return 0.0;
  if (target == kNewCommunity && coloration.community_size(own) == 1) return 0.0;

  const CommunityId top_from = hierarchy.top_community(level, i);
  CommunityId top_to = kNewCommunity;
  if (target != kNewCommunity) {
    top_to = hierarchy.top_community(level, coloration.members(target).front());
    if (top_to == top_from) return 0.0;
  }

  const Coloration& top = hierarchy.coloration(hierarchy.top_level());
  const double m = checked_total_weight(graph);
  const double k_i = graph.degree(i);
  const double loop = graph.self_loop(i);
  double to_from = 0.0;
  double to_to = 0.0;
  for (const auto& nb : graph.neighbors(i)) {
    if (nb.node == i) continue;
    const CommunityId t = hierarchy.top_community(level, nb.node);
    if (t == top_from) {
      to_from += nb.weight;
    } else if (t == top_to) {
      to_to += nb.weight;
    }
  }
  const double degree_from = top.community_degree(top_from);
  const double degree_to = top_to == kNewCommunity ? 0.0 : top.community_degree(top_to);
  // i's own loop belongs to its top community before and after the move.
  const double gain = ((to_to + loop) - k_i * (degree_to + 0.5 * k_i) / (2.0 * m)) / m;
  const double loss = -((to_from + loop) - k_i * (degree_from - 0.5 * k_i) / (2.0 * m)) / m;
  return gain + loss;
}

double flattened_modularity(const Hierarchy& hierarchy) {
  const auto labels = hierarchy.flat_labels();
  return modularity_of_labels(hierarchy.base_graph(), labels);
}

}  // namespace mhcd
