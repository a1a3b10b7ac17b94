/// @file
/// Exhaustive checks for small graphs: exact modularity maximisation and an
/// empirical test of the chain's stationary law.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mhcd/engine.hpp"
#include "mhcd/graph.hpp"

namespace mhcd {

inline constexpr std::size_t kBruteForceMaxNodes = 12;

/// Relabels a partition by first appearance in node order (restricted
/// growth form). Equal partitions get equal labels.
std::vector<std::uint32_t> canonical_partition(const std::vector<std::uint32_t>& labels);

/// Every set partition of n nodes as a restricted growth string.
std::vector<std::vector<std::uint32_t>> enumerate_partitions(std::size_t n);

struct BruteForceResult {
  double modularity = 0.0;
  /// Restricted growth labels of the first maximiser found.
  std::vector<std::uint32_t> labels;
  std::uint64_t partitions = 0;
};

/// @throw std::invalid_argument for more than kBruteForceMaxNodes nodes.
/// @throw std::domain_error when the graph has no edges.
BruteForceResult brute_force_best(const Graph& graph);

struct PartitionFrequency {
  std::vector<std::uint32_t> labels;
  double empirical = 0.0;
  double target = 0.0;
};

struct StationaryReport {
  double total_variation = 0.0;
  std::vector<PartitionFrequency> partitions;
  std::uint64_t samples = 0;
  /// Set when some partition expects fewer than 100 visits under the target.
  bool low_budget = false;
};

/// Runs a flat chain from singletons, discards `burn_in` steps, then records
/// the partition after each of `steps` steps and compares the visit
/// frequencies with exp(lambda Q) / Z over all partitions.
///
/// @throw std::invalid_argument for more than 6 nodes or the hierarchical family.
StationaryReport stationary_check(const Graph& graph, const EngineConfig& config,
                                  std::uint64_t steps, std::uint64_t burn_in);

}  // namespace mhcd
