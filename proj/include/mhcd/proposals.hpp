/// @file
/// Proposal distributions over single-node moves and their exact forward
/// and reverse probabilities.
///
/// A move is a pair (node i, effective target): a live community other than
/// C(i), or kNewCommunity for "split i off into a new singleton". Every
/// probability here is the total probability of all random draws that
/// produce that move. The reverse probability of a move is the probability,
/// under the coloration after the move, of the unique move that undoes it.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mhcd/coloration.hpp"
#include "mhcd/graph.hpp"
#include "mhcd/hierarchy.hpp"
#include "mhcd/random.hpp"
#include "mhcd/types.hpp"

namespace mhcd {

enum class ProposalFamily { kBasic, kImproved, kHierarchical };

/// Which frontier size enters the p2 term of a reverse probability. kCurrent
/// reuses |F^C| of the current coloration; kStrict uses |F^{C'}| of the
/// coloration after the move, which makes the reverse probability exact.
enum class FrontierMode { kCurrent, kStrict };

struct MixtureParams {
  /// Weight of the uniform pair proposal p1, in (0, 1].
  double alpha = 0.5;
  /// Level weights alpha_l; empty means uniform over the levels.
  std::vector<double> level_weights;
};

struct Candidate {
  NodeId node;
  CommunityId target;
};

struct Move {
  std::size_t level = 0;
  NodeId node = 0;
  CommunityId target = kNewCommunity;
  double forward_prob = 0.0;
  double backward_prob = 0.0;
  double hastings_ratio = 0.0;
  double delta_q = 0.0;
};

/// Every valid move of a coloration: for each node, a split when it is not
/// alone and a join to every other live community.
std::vector<Candidate> enumerate_moves(const Coloration& coloration);

// Edge-proportional proposal: i uniform over nodes with a non-loop edge,
// then a neighbour j != i with probability A_ij / (k_i - A_ii), target C(j)
// (a split when C(j) = C(i)).

/// @throw std::domain_error when the graph has no non-loop edge.
Candidate sample_basic(const Graph& graph, const Coloration& coloration, Rng& rng);

/// @throw std::domain_error when k_i - A_ii = 0.
double prob_basic(const Graph& graph, const Coloration& coloration, NodeId i, CommunityId target);
double prob_basic_reverse(const Graph& graph, const Coloration& coloration, NodeId i,
                          CommunityId target);

// Mixture alpha p1 + (1 - alpha) p2. p1 draws i uniformly and j uniformly
// among the other nodes. p2 draws i uniformly over the frontier and a
// foreign community c with probability k_{i,c} / K(i). With an empty
// frontier the p2 draw falls back to p1.

/// @throw std::domain_error when fewer than two nodes are colored.
Candidate sample_improved(const Graph& graph, const Coloration& coloration, double alpha,
                          Rng& rng);
double prob_improved(const Graph& graph, const Coloration& coloration, NodeId i,
                     CommunityId target, double alpha);
double prob_improved_reverse(const Graph& graph, const Coloration& coloration, NodeId i,
                             CommunityId target, double alpha, FrontierMode mode);

/// Level weights validated against the level count, uniform when unset.
///
/// @throw std::invalid_argument on a size mismatch, a negative weight, or
///        weights not summing to 1.
std::vector<double> level_weights(const MixtureParams& params, std::size_t levels);

/// Draws a level l with probability alpha_l and a mixture move on (G_l, C_l).
/// Returns nothing when the drawn level has fewer than two nodes, which the
/// chain treats as a rejected step. Probabilities are evaluated within the
/// proposing level; the alpha_l factor is included in both and cancels.
std::optional<Move> sample_hierarchical(const Hierarchy& hierarchy,
                                        const std::vector<double>& weights, double alpha,
                                        FrontierMode mode, Rng& rng);

/// backward / forward, 0 when the reverse move is impossible.
///
/// @throw ContractError when forward is not positive.
double hastings_ratio(double forward, double backward);

struct ProposalConfig {
  ProposalFamily family = ProposalFamily::kImproved;
  double alpha = 0.5;
  std::vector<double> level_weights;  // normalized, one per level
  FrontierMode frontier_mode = FrontierMode::kCurrent;
};

/// One complete proposal with forward, backward and ratio filled in. The
/// flat families act on level 0.
std::optional<Move> propose(const Hierarchy& hierarchy, const ProposalConfig& config, Rng& rng);

}  // namespace mhcd
