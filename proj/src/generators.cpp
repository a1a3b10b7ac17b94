#include "mhcd/generators.hpp"

#include <array>
#include <utility>

namespace mhcd {

namespace {

Graph unit_graph(std::initializer_list<std::pair<NodeId, NodeId>> pairs, std::size_t n = 0) {
  std::vector<WeightedEdge> edges;
  for (const auto& [u, v] : pairs) edges.push_back({u, v, 1.0});
  return Graph::from_edge_list(edges, n);
}

}  // namespace

Graph single_edge() { return unit_graph({{0, 1}}); }

Graph triangle() { return unit_graph({{0, 1}, {0, 2}, {1, 2}}); }

Graph two_triangles() {
  return unit_graph({{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
}

Graph three_triangles() {
  return unit_graph({{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3},
                     {6, 7}, {6, 8}, {7, 8}, {5, 6}});
}

Graph star(std::size_t leaves) {
  std::vector<WeightedEdge> edges;
  for (std::size_t k = 1; k <= leaves; ++k) edges.push_back({0, static_cast<NodeId>(k), 1.0});
  return Graph::from_edge_list(edges, leaves + 1);
}

Graph karate_club() {
  static constexpr std::array<std::pair<NodeId, NodeId>, 78> kEdges{{
      {0, 1},   {0, 2},   {0, 3},   {0, 4},   {0, 5},   {0, 6},   {0, 7},   {0, 8},
      {0, 10},  {0, 11},  {0, 12},  {0, 13},  {0, 17},  {0, 19},  {0, 21},  {0, 31},
      {1, 2},   {1, 3},   {1, 7},   {1, 13},  {1, 17},  {1, 19},  {1, 21},  {1, 30},
      {2, 3},   {2, 7},   {2, 8},   {2, 9},   {2, 13},  {2, 27},  {2, 28},  {2, 32},
      {3, 7},   {3, 12},  {3, 13},  {4, 6},   {4, 10},  {5, 6},   {5, 10},  {5, 16},
      {6, 16},  {8, 30},  {8, 32},  {8, 33},  {9, 33},  {13, 33}, {14, 32}, {14, 33},
      {15, 32}, {15, 33}, {18, 32}, {18, 33}, {19, 33}, {20, 32}, {20, 33}, {22, 32},
      {22, 33}, {23, 25}, {23, 27}, {23, 29}, {23, 32}, {23, 33}, {24, 25}, {24, 27},
      {24, 31}, {25, 31}, {26, 29}, {26, 33}, {27, 33}, {28, 31}, {28, 33}, {29, 32},
      {29, 33}, {30, 32}, {30, 33}, {31, 32}, {31, 33}, {32, 33},
  }};
  std::vector<WeightedEdge> edges;
  for (const auto& [u, v] : kEdges) edges.push_back({u, v, 1.0});
  return Graph::from_edge_list(edges, 34);
}

Graph random_connected_graph(const RandomGraphOptions& options, Rng& rng) {
  const std::size_t n = options.nodes;
  auto weight = [&]() { return options.weighted ? 0.5 + 1.5 * rng.uniform() : 1.0; };
  std::vector<WeightedEdge> edges;
  for (NodeId v = 1; v < n; ++v) {
    edges.push_back({static_cast<NodeId>(rng.index(v)), v, weight()});
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.bernoulli(options.edge_probability)) edges.push_back({u, v, weight()});
    }
    if (options.loop_probability > 0.0 && rng.bernoulli(options.loop_probability)) {
      edges.push_back({u, u, weight()});
    }
  }
  return Graph::from_edge_list(edges, n);
}

std::vector<std::uint32_t> planted_labels(std::size_t nodes, std::size_t communities) {
  std::vector<std::uint32_t> labels(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    labels[i] = static_cast<std::uint32_t>(i * communities / nodes);
  }
  return labels;
}

Graph planted_partition(std::size_t nodes, std::size_t communities, double p_in, double p_out,
                        Rng& rng) {
  const auto block = planted_labels(nodes, communities);
  std::vector<WeightedEdge> edges;
  for (NodeId u = 0; u < nodes; ++u) {
    for (NodeId v = u + 1; v < nodes; ++v) {
      if (rng.bernoulli(block[u] == block[v] ? p_in : p_out)) edges.push_back({u, v, 1.0});
    }
  }
  return Graph::from_edge_list(edges, nodes);
}

}  // namespace mhcd
