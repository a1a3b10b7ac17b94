#include "mhcd/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "mhcd/modularity.hpp"

namespace mhcd {

namespace {

std::size_t level_count(const EngineConfig& config) {
  return config.family == ProposalFamily::kHierarchical ? config.levels : 1;
}

double current_modularity(const Hierarchy& hierarchy) {
  return hierarchy.base_graph().total_weight() > 0.0 ? flattened_modularity(hierarchy) : 0.0;
}

std::size_t distinct(const std::vector<std::uint32_t>& labels) {
  return std::unordered_set<std::uint32_t>(labels.begin(), labels.end()).size();
}

}  // namespace

void validate(const EngineConfig& config) {
  if (!(config.lambda >= 0.0) || !std::isfinite(config.lambda)) {
    throw std::invalid_argument("lambda must be finite and non-negative");
  }
  if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
  if (config.levels == 0) throw std::invalid_argument("at least one level is required");
  if (!(config.anneal_gamma > 0.0) || !std::isfinite(config.anneal_gamma)) {
    throw std::invalid_argument("annealing factor must be positive");
  }
  if (config.family == ProposalFamily::kHierarchical) {
    level_weights(MixtureParams{config.alpha, config.level_weights}, config.levels);
  }
}

Chain::Chain(Graph base, const EngineConfig& config)
    : config_(config),
      hierarchy_((validate(config), std::move(base)), level_count(config)),
      rng_(config.seed),
      lambda_(config.lambda) {
  proposal_.family = config.family;
  proposal_.alpha = config.alpha;
  proposal_.frontier_mode = config.frontier_mode;
  proposal_.level_weights =
      config.family == ProposalFamily::kHierarchical
          ? level_weights(MixtureParams{config.alpha, config.level_weights}, config.levels)
          : std::vector<double>{1.0};
  current_q_ = current_modularity(hierarchy_);
  reset_best();
}

Chain::Chain(Graph base, const Coloration& initial, const EngineConfig& config)
    : config_(config),
      hierarchy_((validate(config), std::move(base)), initial, level_count(config)),
      rng_(config.seed),
      lambda_(config.lambda) {
  proposal_.family = config.family;
  proposal_.alpha = config.alpha;
  proposal_.frontier_mode = config.frontier_mode;
  proposal_.level_weights =
      config.family == ProposalFamily::kHierarchical
          ? level_weights(MixtureParams{config.alpha, config.level_weights}, config.levels)
          : std::vector<double>{1.0};
  current_q_ = current_modularity(hierarchy_);
  reset_best();
}

void Chain::reset_best() {
  best_q_ = current_q_;
  at_best_ = true;
  best_snapshot_.clear();
  run_steps_ = 0;
  steps_to_best_ = 0;
}

bool Chain::accept(const Move& move) {
  if (move.hastings_ratio <= 0.0) return false;
  const double exponent = lambda_ * move.delta_q;
  if (exponent >= 0.0 && move.hastings_ratio >= 1.0) return true;
  return std::log(rng_.uniform_positive()) < std::log(move.hastings_ratio) + exponent;
}

StepResult Chain::step() {
  ++run_steps_;
  StepResult result;
  if (!(hierarchy_.base_graph().total_weight() > 0.0)) return result;
  result.move = propose(hierarchy_, proposal_, rng_);
  if (!result.move) return result;
  Move& move = *result.move;

  const double true_delta = delta_hier(hierarchy_, move.level, move.node, move.target);
  move.delta_q = config_.delta_mode == DeltaMode::kPerLevel
                     ? delta_move(hierarchy_.graph(move.level), hierarchy_.coloration(move.level),
                                  move.node, move.target)
                     : true_delta;
  if (!accept(move)) return result;

  result.accepted = true;
  if (at_best_ && !(true_delta > 0.0)) {
    best_snapshot_ = hierarchy_.flat_labels();
    at_best_ = false;
  }
  hierarchy_.apply_move(move.level, move.node, move.target);
  current_q_ += true_delta;
  if (current_q_ > best_q_) {
    best_q_ = current_q_;
    at_best_ = true;
    steps_to_best_ = run_steps_;
  }
  return result;
}

RunStats Chain::run(std::uint64_t budget) {
  const auto start = std::chrono::steady_clock::now();
  reset_best();
  RunStats stats;
  const bool has_edges = hierarchy_.base_graph().total_weight() > 0.0;
  for (std::uint64_t k = 0; has_edges && k < budget; ++k) {
    if (config_.anneal_period > 0) {
      lambda_ = config_.lambda *
                std::pow(config_.anneal_gamma,
                         static_cast<double>(k / config_.anneal_period));
    }
    if (step().accepted) ++stats.accepted;
    ++stats.iterations;
    if (config_.drift_check_interval > 0 && (k + 1) % config_.drift_check_interval == 0) {
      stats.max_drift = std::max(stats.max_drift, resync_modularity());
    }
  }
  lambda_ = config_.lambda;

  const auto labels = best_labels();
  stats.acceptance_rate =
      stats.iterations > 0
          ? static_cast<double>(stats.accepted) / static_cast<double>(stats.iterations)
          : 0.0;
  stats.best_modularity = best_q_;
  stats.current_modularity = current_q_;
  stats.communities = distinct(labels);
  stats.steps_to_best = steps_to_best_;
  stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

double Chain::resync_modularity() {
  const double fresh = current_modularity(hierarchy_);
  const double drift = std::abs(fresh - current_q_);
  current_q_ = fresh;
  if (at_best_) best_q_ = fresh;
  return drift;
}

void Chain::apply_edit(const GraphEdit& edit) {
  hierarchy_.propagate_edit(edit);
  current_q_ = current_modularity(hierarchy_);
  reset_best();
}

std::vector<std::uint32_t> Chain::best_labels() const {
  return at_best_ ? hierarchy_.flat_labels() : best_snapshot_;
}

RunResult run_static(const Graph& graph, const EngineConfig& config) {
  if (!(graph.total_weight() > 0.0)) {
    throw std::domain_error("cannot detect communities in a graph without edges");
  }
  Chain chain(graph, config);
  const std::uint64_t budget = config.iterations.value_or(20 * graph.entry_count());
  RunResult result;
  result.stats = chain.run(budget);
  result.labels = chain.best_labels();
  return result;
}

std::vector<OnlineStep> run_online(const Graph& initial, const std::vector<EventBatch>& batches,
                                   const EngineConfig& config) {
  Chain chain(initial, config);
  auto apply = [&chain](const EventBatch& batch) {
    for (std::size_t k = 0; k < batch.edits.size(); ++k) {
      const std::size_t index = k < batch.event_index.size() ? batch.event_index[k] : k + 1;
      try {
        chain.apply_edit(batch.edits[k]);
      } catch (const std::logic_error& e) {
        throw StreamError(index, e.what());
      } catch (const std::runtime_error& e) {
        throw StreamError(index, e.what());
      }
    }
  };

  std::vector<OnlineStep> out;
  std::size_t b = 0;
  if (b < batches.size() && batches[b].t == 0) apply(batches[b++]);
  const std::uint64_t warmup = config.iterations.value_or(20 * chain.hierarchy().base_graph().entry_count());
  out.push_back({0, {}, chain.run(warmup)});
  out.back().labels = chain.best_labels();

  std::uint64_t last_t = 0;
  for (; b < batches.size(); ++b) {
    const EventBatch& batch = batches[b];
    if (batch.t <= last_t) {
      const std::size_t index = batch.event_index.empty() ? 0 : batch.event_index.front();
      throw StreamError(index, "time step " + std::to_string(batch.t) + " is out of order");
    }
    last_t = batch.t;
    apply(batch);
    out.push_back({batch.t, {}, chain.run(config.budget_per_step)});
    out.back().labels = chain.best_labels();
  }
  return out;
}

}  // namespace mhcd
