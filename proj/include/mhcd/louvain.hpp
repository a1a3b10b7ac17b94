/// @file
/// Reference Louvain method: greedy local moving followed by aggregation.

#pragma once

#include <cstdint>
#include <vector>

#include "mhcd/graph.hpp"

namespace mhcd {

struct LouvainResult {
  /// Community label per base node, in 0..K-1.
  std::vector<std::uint32_t> labels;
  double modularity = 0.0;
  /// Number of local-moving phases that changed something.
  std::size_t passes = 0;
};

/// Node visit order within each phase is shuffled with `seed`.
///
/// @throw std::domain_error when the graph has no edges.
LouvainResult louvain(const Graph& graph, std::uint64_t seed = 1);

}  // namespace mhcd
