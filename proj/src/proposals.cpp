#include "mhcd/proposals.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mhcd {

namespace {

// Weights from i to its own community, to the target and to everything
// else, all excluding the loop A_ii.
struct Links {
  double source = 0.0;
  double target = 0.0;
  double elsewhere = 0.0;
  double non_loop() const { return source + target + elsewhere; }
};

Links scan_links(const Graph& graph, const Coloration& coloration, NodeId i, CommunityId target) {
  const CommunityId from = coloration.community_of(i);
  Links out;
  for (const auto& nb : graph.neighbors(i)) {
    if (nb.node == i) continue;
    const CommunityId c = coloration.community_of(nb.node);
    if (c == from) {
      out.source += nb.weight;
    } else if (c == target) {
      out.target += nb.weight;
    } else {
      out.elsewhere += nb.weight;
    }
  }
  return out;
}

// False for the identity moves, which no proposal produces.
bool is_proper_move(const Coloration& coloration, NodeId i, CommunityId target) {
  const CommunityId from = coloration.community_of(i);
  if (target == from) return false;
  if (target == kNewCommunity) return coloration.community_size(from) > 1;
  if (!coloration.is_live(target)) {
    throw std::invalid_argument("move target " + std::to_string(target) + " is not live");
  }
  return true;
}

// Index of a neighbour drawn with probability proportional to its weight
// among the neighbours accepted by `keep`.
template <typename Keep>
NodeId draw_neighbor(const Graph& graph, NodeId i, double total, Keep keep, Rng& rng) {
  const double u = rng.uniform() * total;
  double acc = 0.0;
  NodeId last = i;
  for (const auto& nb : graph.neighbors(i)) {
    if (nb.node == i || !keep(nb.node)) continue;
    acc += nb.weight;
    last = nb.node;
    if (u < acc) return nb.node;
  }
  return last;
}

CommunityId effective_target(const Coloration& coloration, NodeId i, NodeId j) {
  const CommunityId c = coloration.community_of(j);
  return c == coloration.community_of(i) ? kNewCommunity : c;
}

}  // namespace

std::vector<Candidate> enumerate_moves(const Coloration& coloration) {
  const auto communities = coloration.communities();
  std::vector<Candidate> out;
  for (const NodeId i : coloration.nodes()) {
    const CommunityId from = coloration.community_of(i);
    if (coloration.community_size(from) > 1) out.push_back({i, kNewCommunity});
    for (const CommunityId c : communities) {
      if (c != from) out.push_back({i, c});
    }
  }
  return out;
}

Candidate sample_basic(const Graph& graph, const Coloration& coloration, Rng& rng) {
  if (graph.connected_node_count() == 0) {
    throw std::domain_error("basic proposal needs an edge between distinct nodes");
  }
  NodeId i;
  do {
    i = coloration.node_at(rng.index(coloration.node_count()));
  } while (!graph.has_non_loop_edge(i));
  const double total = graph.degree(i) - graph.self_loop(i);
  const NodeId j = draw_neighbor(graph, i, total, [](NodeId) { return true; }, rng);
  return {i, effective_target(coloration, i, j)};
}

double prob_basic(const Graph& graph, const Coloration& coloration, NodeId i,
                  CommunityId target) {
  if (!graph.has_non_loop_edge(i)) {
    throw std::domain_error("node " + std::to_string(i) + " has no edge to another node");
  }
  if (!is_proper_move(coloration, i, target)) return 0.0;
  const Links links = scan_links(graph, coloration, i, target);
  const double eligible = static_cast<double>(graph.connected_node_count());
  const double chosen = target == kNewCommunity ? links.source : links.target;
  return chosen / (links.non_loop() * eligible);
}

double prob_basic_reverse(const Graph& graph, const Coloration& coloration, NodeId i,
                          CommunityId target) {
  if (!graph.has_non_loop_edge(i)) {
    throw std::domain_error("node " + std::to_string(i) + " has no edge to another node");
  }
  if (!is_proper_move(coloration, i, target)) return 0.0;
  const Links links = scan_links(graph, coloration, i, target);
  const double eligible = static_cast<double>(graph.connected_node_count());
  // Undoing a join from a singleton is a split, drawn through neighbours in
  // the joined community; otherwise i goes back to what is left of C(i).
  const bool was_alone = coloration.community_size(coloration.community_of(i)) == 1;
  const double chosen = was_alone ? links.target : links.source;
  return chosen / (links.non_loop() * eligible);
}

Candidate sample_improved(const Graph& graph, const Coloration& coloration, double alpha,
                          Rng& rng) {
  const std::size_t n = coloration.node_count();
  if (n < 2) throw std::domain_error("mixture proposal needs at least two nodes");
  const bool uniform = rng.uniform() < alpha || coloration.frontier_size() == 0;
  if (uniform) {
    const std::size_t a = rng.index(n);
    std::size_t b = rng.index(n - 1);
    if (b >= a) ++b;
    const NodeId i = coloration.node_at(a);
    return {i, effective_target(coloration, i, coloration.node_at(b))};
  }
  const NodeId i = coloration.frontier_at(rng.index(coloration.frontier_size()));
  const CommunityId from = coloration.community_of(i);
  auto foreign = [&](NodeId j) { return coloration.community_of(j) != from; };
  double total = 0.0;
  for (const auto& nb : graph.neighbors(i)) {
    if (nb.node != i && foreign(nb.node)) total += nb.weight;
  }
  const NodeId j = draw_neighbor(graph, i, total, foreign, rng);
  return {i, coloration.community_of(j)};
}

double prob_improved(const Graph& graph, const Coloration& coloration, NodeId i,
                     CommunityId target, double alpha) {
  const std::size_t n = coloration.node_count();
  if (n < 2) throw std::domain_error("mixture proposal needs at least two nodes");
  if (!is_proper_move(coloration, i, target)) return 0.0;
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  const CommunityId from = coloration.community_of(i);
  const double p1 = target == kNewCommunity
                        ? static_cast<double>(coloration.community_size(from) - 1) / pairs
                        : static_cast<double>(coloration.community_size(target)) / pairs;
  double p2 = p1;
  if (coloration.frontier_size() > 0) {
    p2 = 0.0;
    if (target != kNewCommunity && coloration.is_frontier(i)) {
      const Links links = scan_links(graph, coloration, i, target);
      p2 = links.target / (static_cast<double>(coloration.frontier_size()) *
                           (links.target + links.elsewhere));
    }
  }
  return alpha * p1 + (1.0 - alpha) * p2;
}

double prob_improved_reverse(const Graph& graph, const Coloration& coloration, NodeId i,
                             CommunityId target, double alpha, FrontierMode mode) {
  const std::size_t n = coloration.node_count();
  if (n < 2) throw std::domain_error("mixture proposal needs at least two nodes");
  if (!is_proper_move(coloration, i, target)) return 0.0;
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  const std::size_t source_size = coloration.community_size(coloration.community_of(i));
  const bool back_is_split = source_size == 1;

  // Under C' the reverse move is a split when i was alone, else a join to
  // C(i) minus i.
  const double p1 = back_is_split
                        ? static_cast<double>(coloration.community_size(target)) / pairs
                        : static_cast<double>(source_size - 1) / pairs;

  const std::size_t frontier_after = coloration.frontier_size_after(graph, i, target);
  if (frontier_after == 0) return alpha * p1 + (1.0 - alpha) * p1;

  double p2 = 0.0;
  if (!back_is_split) {
    std::size_t frontier = frontier_after;
    if (mode == FrontierMode::kCurrent && coloration.frontier_size() > 0) {
      frontier = coloration.frontier_size();
    }
    const Links links = scan_links(graph, coloration, i, target);
    const double outside = links.source + links.elsewhere;
    if (outside > 0.0) p2 = links.source / (static_cast<double>(frontier) * outside);
  }
  return alpha * p1 + (1.0 - alpha) * p2;
}

std::vector<double> level_weights(const MixtureParams& params, std::size_t levels) {
  if (params.level_weights.empty()) {
    return std::vector<double>(levels, 1.0 / static_cast<double>(levels));
  }
  if (params.level_weights.size() != levels) {
    throw std::invalid_argument("expected " + std::to_string(levels) + " level weights, got " +
                                std::to_string(params.level_weights.size()));
  }
  double sum = 0.0;
  for (const double w : params.level_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("level weights must be finite and non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("level weights must sum to 1");
  return params.level_weights;
}

std::optional<Move> sample_hierarchical(const Hierarchy& hierarchy,
                                        const std::vector<double>& weights, double alpha,
                                        FrontierMode mode, Rng& rng) {
  const double u = rng.uniform();
  std::size_t level = 0;
  double acc = weights[0];
  while (level + 1 < weights.size() && (u >= acc || weights[level] == 0.0)) {
    ++level;
    acc += weights[level];
  }
  const Graph& g = hierarchy.graph(level);
  const Coloration& c = hierarchy.coloration(level);
  if (c.node_count() < 2) return std::nullopt;

  const Candidate cand = sample_improved(g, c, alpha, rng);
  Move move;
  move.level = level;
  move.node = cand.node;
  move.target = cand.target;
  move.forward_prob = weights[level] * prob_improved(g, c, cand.node, cand.target, alpha);
  move.backward_prob =
      weights[level] * prob_improved_reverse(g, c, cand.node, cand.target, alpha, mode);
  move.hastings_ratio = hastings_ratio(move.forward_prob, move.backward_prob);
  return move;
}

double hastings_ratio(double forward, double backward) {
  if (!(forward > 0.0)) throw ContractError("forward proposal probability must be positive");
  if (!(backward > 0.0)) return 0.0;
  return backward / forward;
}

std::optional<Move> propose(const Hierarchy& hierarchy, const ProposalConfig& config, Rng& rng) {
  if (config.family == ProposalFamily::kHierarchical) {
    return sample_hierarchical(hierarchy, config.level_weights, config.alpha,
                               config.frontier_mode, rng);
  }
  const Graph& g = hierarchy.graph(0);
  const Coloration& c = hierarchy.coloration(0);
  Move move;
  if (config.family == ProposalFamily::kBasic) {
    if (g.connected_node_count() == 0) return std::nullopt;
    const Candidate cand = sample_basic(g, c, rng);
    move.node = cand.node;
    move.target = cand.target;
    move.forward_prob = prob_basic(g, c, cand.node, cand.target);
    move.backward_prob = prob_basic_reverse(g, c, cand.node, cand.target);
  } else {
    if (c.node_count() < 2) return std::nullopt;
    const Candidate cand = sample_improved(g, c, config.alpha, rng);
    move.node = cand.node;
    move.target = cand.target;
    move.forward_prob = prob_improved(g, c, cand.node, cand.target, config.alpha);
    move.backward_prob =
        prob_improved_reverse(g, c, cand.node, cand.target, config.alpha, config.frontier_mode);
  }
  move.hastings_ratio = hastings_ratio(move.forward_prob, move.backward_prob);
  return move;
}

}  // namespace mhcd
