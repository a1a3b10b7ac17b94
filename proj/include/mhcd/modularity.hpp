/// @file
/// Modularity and its exact change under single-node moves, flat and
/// hierarchical.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "mhcd/coloration.hpp"
#include "mhcd/graph.hpp"
#include "mhcd/hierarchy.hpp"

namespace mhcd {

/// Q = sum over communities of w_in(c)/2m - (k_c/2m)^2, where w_in is the
/// ordered-pair internal weight (loops once, other pairs twice).
///
/// @throw std::domain_error when m = 0.
double modularity(const Graph& graph, const Coloration& coloration);

/// Modularity of the partition giving node i the label labels[i].
double modularity_of_labels(const Graph& graph, std::span<const std::uint32_t> labels);

/// Gain when the singleton node i joins community c:
/// (1/m)(k_{i,c} - k_i k_c / 2m).
///
/// @throw ContractError unless i is alone and c is another live community.
double delta_join(const Graph& graph, const Coloration& coloration, NodeId i, CommunityId c);

/// Gain when i leaves its community to form a singleton:
/// -(1/m)(k_{i,C(i)} - A_ii - (k_i/2m)(k_{C(i)} - k_i)). Zero for a singleton.
double delta_leave(const Graph& graph, const Coloration& coloration, NodeId i);

/// Exact gain of moving i to `target` (a live community or kNewCommunity),
/// decomposed as leaving C(i) and then joining the target.
double delta_move(const Graph& graph, const Coloration& coloration, NodeId i, CommunityId target);

/// Change of the flattened base-graph modularity when node i of `level` is
/// moved to `target` within C_level. Exactly zero when the move leaves every
/// base node's top-level community unchanged.
///
/// @throw std::out_of_range for a level outside the hierarchy.
double delta_hier(const Hierarchy& hierarchy, std::size_t level, NodeId i, CommunityId target);

/// Modularity of the flattened partition of the base graph.
double flattened_modularity(const Hierarchy& hierarchy);

}  // namespace mhcd
