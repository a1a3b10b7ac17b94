#include "mhcd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "mhcd/modularity.hpp"

namespace mhcd {

std::vector<std::uint32_t> canonical_partition(const std::vector<std::uint32_t>& labels) {
  std::map<std::uint32_t, std::uint32_t> seen;
  std::vector<std::uint32_t> out;
  out.reserve(labels.size());
  for (const auto label : labels) {
    const auto [it, inserted] = seen.try_emplace(label, static_cast<std::uint32_t>(seen.size()));
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> enumerate_partitions(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<std::uint32_t> a(n, 0);
  std::vector<std::uint32_t> prefix_max(n, 0);
  while (true) {
    out.push_back(a);
    // Rightmost position that can still grow.
    std::size_t i = n - 1;
    while (i > 0 && a[i] > prefix_max[i - 1]) --i;
    if (i == 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

namespace {

class Search {
 public:
  explicit Search(const Graph& graph)
      : n_(graph.node_count()),
        two_m_(2.0 * graph.total_weight()),
        adjacency_(n_ * n_, 0.0),
        degree_(n_),
        internal_(n_, 0.0),
        community_degree_(n_, 0.0),
        labels_(n_, 0) {
    for (NodeId i = 0; i < n_; ++i) {
      degree_[i] = graph.degree(i);
      for (const auto& nb : graph.neighbors(i)) adjacency_[i * n_ + nb.node] = nb.weight;
    }
  }

  BruteForceResult run() {
    best_.modularity = -2.0;
    descend(0, 0);
    return best_;
  }

 private:
  void descend(std::size_t i, std::uint32_t used) {
    if (i == n_) {
      ++best_.partitions;
      double q = 0.0;
      for (std::uint32_t c = 0; c < used; ++c) {
        const double share = community_degree_[c] / two_m_;
        q += internal_[c] / two_m_ - share * share;
      }
      if (q > best_.modularity) {
        best_.modularity = q;
        best_.labels = labels_;
      }
      return;
    }
    const std::uint32_t limit = std::min<std::uint32_t>(used + 1, static_cast<std::uint32_t>(n_));
    for (std::uint32_t c = 0; c < limit; ++c) {
      double gained = adjacency_[i * n_ + i];
      for (std::size_t j = 0; j < i; ++j) {
        if (labels_[j] == c) gained += 2.0 * adjacency_[i * n_ + j];
      }
      labels_[i] = c;
      internal_[c] += gained;
      community_degree_[c] += degree_[i];
      descend(i + 1, std::max(used, c + 1));
      internal_[c] -= gained;
      community_degree_[c] -= degree_[i];
    }
  }

  std::size_t n_;
  double two_m_;
  std::vector<double> adjacency_;
  std::vector<double> degree_;
  std::vector<double> internal_;
  std::vector<double> community_degree_;
  std::vector<std::uint32_t> labels_;
  BruteForceResult best_;
};

}  // namespace

BruteForceResult brute_force_best(const Graph& graph) {
  if (graph.node_count() > kBruteForceMaxNodes) {
    throw std::invalid_argument("brute force is limited to " +
                                std::to_string(kBruteForceMaxNodes) + " nodes, graph has " +
                                std::to_string(graph.node_count()));
  }
  if (!(graph.total_weight() > 0.0)) {
    throw std::domain_error("modularity is undefined for a graph without edges");
  }
  return Search(graph).run();
}

StationaryReport stationary_check(const Graph& graph, const EngineConfig& config,
                                  std::uint64_t steps, std::uint64_t burn_in) {
  if (graph.node_count() > 6) {
    throw std::invalid_argument("stationary check is limited to 6 nodes");
  }
  if (config.family == ProposalFamily::kHierarchical) {
    throw std::invalid_argument("stationary check needs a flat proposal family");
  }
  const auto all = enumerate_partitions(graph.node_count());
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  StationaryReport report;
  double z = 0.0;
  for (const auto& labels : all) {
    index.emplace(labels, report.partitions.size());
    const double weight = std::exp(config.lambda * modularity_of_labels(graph, labels));
    report.partitions.push_back({labels, 0.0, weight});
    z += weight;
  }

  Chain chain(graph, config);
  for (std::uint64_t k = 0; k < burn_in; ++k) chain.step();
  std::vector<std::uint64_t> visits(all.size(), 0);
  for (std::uint64_t k = 0; k < steps; ++k) {
    chain.step();
    ++visits[index.at(chain.hierarchy().coloration(0).canonical_labels())];
  }

  report.samples = steps;
  for (std::size_t p = 0; p < all.size(); ++p) {
    auto& entry = report.partitions[p];
    entry.target /= z;
    entry.empirical = steps > 0 ? static_cast<double>(visits[p]) / static_cast<double>(steps) : 0.0;
    report.total_variation += 0.5 * std::abs(entry.empirical - entry.target);
    if (entry.target * static_cast<double>(steps) < 100.0) report.low_budget = true;
  }
  return report;
}

}  // namespace mhcd
