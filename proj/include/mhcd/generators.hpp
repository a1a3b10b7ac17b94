/// @file
/// Seeded random graphs and small named fixtures. Fixture node k of the
/// usual 1-based drawings is node k-1 here.

#pragma once

#include <cstddef>
#include <vector>

#include "mhcd/graph.hpp"
#include "mhcd/random.hpp"

namespace mhcd {

/// Single unit edge 0-1.
Graph single_edge();

/// Unit triangle.
Graph triangle();

/// Two unit triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
Graph two_triangles();

/// two_triangles() plus the triangle {6,7,8} and the bridge 5-6.
Graph three_triangles();

/// Centre 0 joined to leaves 1..leaves.
Graph star(std::size_t leaves);

/// Zachary's karate club, 34 nodes and 78 unit edges.
Graph karate_club();

struct RandomGraphOptions {
  std::size_t nodes = 10;
  /// Probability of each extra edge beyond the spanning tree.
  double edge_probability = 0.3;
  /// Draw weights uniformly from [0.5, 2) instead of using unit weights.
  bool weighted = false;
  /// Probability that a node gets a self-loop.
  double loop_probability = 0.0;
};

/// A connected graph: a random recursive tree plus independent extra edges.
Graph random_connected_graph(const RandomGraphOptions& options, Rng& rng);

/// Stochastic block model with `communities` equal blocks (node i in block
/// i * communities / nodes) and unit edges drawn independently.
Graph planted_partition(std::size_t nodes, std::size_t communities, double p_in, double p_out,
                        Rng& rng);

/// Block of every node in planted_partition.
std::vector<std::uint32_t> planted_labels(std::size_t nodes, std::size_t communities);

}  // namespace mhcd
