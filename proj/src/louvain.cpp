#include "mhcd/louvain.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mhcd/coloration.hpp"
#include "mhcd/hierarchy.hpp"
#include "mhcd/modularity.hpp"
#include "mhcd/random.hpp"

namespace mhcd {

namespace {

constexpr double kMinGain = 1e-12;

// One local-moving phase. Returns true when any node changed community.
bool local_moving(const Graph& graph, Coloration& coloration, Rng& rng) {
  const double two_m = 2.0 * graph.total_weight();
  std::vector<NodeId> order(graph.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.index(k)]);

  std::vector<double> to_slot(coloration.slot_capacity() + graph.node_count(), 0.0);
  std::vector<CommunityId> touched;
  bool changed = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (const NodeId i : order) {
      const CommunityId own = coloration.community_of(i);
      const double k_i = graph.degree(i);
      touched.clear();
      for (const auto& nb : graph.neighbors(i)) {
        if (nb.node == i) continue;
        const CommunityId c = coloration.community_of(nb.node);
        if (to_slot.size() <= slot_of(c)) to_slot.resize(slot_of(c) + 1, 0.0);
        if (to_slot[slot_of(c)] == 0.0) touched.push_back(c);
        to_slot[slot_of(c)] += nb.weight;
      }
      // Gains of inserting the isolated node, up to the common factor 1/m.
      const double own_degree = coloration.community_degree(own) - k_i;
      const double own_gain = to_slot[slot_of(own)] - k_i * own_degree / two_m;
      CommunityId best = own;
      double best_gain = own_gain;
      for (const CommunityId c : touched) {
        if (c == own) continue;
        const double gain = to_slot[slot_of(c)] - k_i * coloration.community_degree(c) / two_m;
        if (gain > best_gain + kMinGain) {
          best = c;
          best_gain = gain;
        }
      }
      for (const CommunityId c : touched) to_slot[slot_of(c)] = 0.0;
      if (best != own) {
        coloration.apply_move(graph, i, best);
        moved = true;
        changed = true;
      }
    }
  }
  return changed;
}

}  // namespace

LouvainResult louvain(const Graph& graph, std::uint64_t seed) {
  if (!(graph.total_weight() > 0.0)) {
    throw std::domain_error("louvain needs a graph with edges");
  }
  Rng rng(seed);
  LouvainResult result;
  result.labels.resize(graph.node_count());
  std::iota(result.labels.begin(), result.labels.end(), std::uint32_t{0});

  Graph current = graph;
  while (true) {
    Coloration coloration = Coloration::singletons(current);
    if (!local_moving(current, coloration, rng)) break;
    ++result.passes;
    Aggregation next = aggregate(current, coloration);
    for (auto& label : result.labels) label = next.upmap[label];
    if (next.graph.node_count() == current.node_count()) break;
    current = std::move(next.graph);
  }
  result.modularity = modularity_of_labels(graph, result.labels);
  return result;
}

}  // namespace mhcd
