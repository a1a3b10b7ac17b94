/// @file
/// Metropolis-Hastings chains over (hierarchical) colorations, static and
/// online.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mhcd/coloration.hpp"
#include "mhcd/graph.hpp"
#include "mhcd/hierarchy.hpp"
#include "mhcd/proposals.hpp"
#include "mhcd/random.hpp"

namespace mhcd {

/// Which modularity change enters the acceptance exponent of a level-l move.
/// kTopLevel uses the change of the flattened partition; kPerLevel the change
/// of Q(G_l, C_l).
enum class DeltaMode { kTopLevel, kPerLevel };

struct EngineConfig {
  double lambda = 50.0;
  double alpha = 0.5;
  /// One weight per level, summing to 1; empty means uniform.
  std::vector<double> level_weights;
  /// Number of levels L for the hierarchical family; the flat families
  /// always use one level.
  std::size_t levels = 3;
  /// Proposals per static run; unset means 20 |E|.
  std::optional<std::uint64_t> iterations;
  /// Proposals per online time step.
  std::uint64_t budget_per_step = 10000;
  std::uint64_t seed = 1;
  ProposalFamily family = ProposalFamily::kHierarchical;
  DeltaMode delta_mode = DeltaMode::kTopLevel;
  FrontierMode frontier_mode = FrontierMode::kCurrent;
  /// Geometric schedule lambda_k = lambda * gamma^floor(k / period); off
  /// when the period is 0.
  double anneal_gamma = 1.0;
  std::uint64_t anneal_period = 0;
  /// Resynchronise the running modularity every this many steps (0: never).
  std::uint64_t drift_check_interval = 10000;
};

/// @throw std::invalid_argument for an out-of-range parameter.
void validate(const EngineConfig& config);

struct RunStats {
  std::uint64_t iterations = 0;
  std::uint64_t accepted = 0;
  double acceptance_rate = 0.0;
  double best_modularity = 0.0;
  double current_modularity = 0.0;
  std::size_t communities = 0;
  double wall_ms = 0.0;
  /// Steps taken when the best modularity of the run was first reached.
  std::uint64_t steps_to_best = 0;
  /// Largest gap seen between the running and the recomputed modularity.
  double max_drift = 0.0;
};

struct StepResult {
  bool accepted = false;
  /// Empty when the drawn level had fewer than two nodes.
  std::optional<Move> move;
};

/// One chain: a hierarchy, its running modularity, an RNG and the best
/// flattened partition of the current run.
class Chain {
 public:
  /// Cold start from singletons.
  Chain(Graph base, const EngineConfig& config);

  /// Starts with C_0 = initial.
  Chain(Graph base, const Coloration& initial, const EngineConfig& config);

  /// One proposal and accept/reject decision at the current inverse
  /// temperature. A graph without edges yields a rejected empty step.
  StepResult step();

  /// Runs `budget` steps. Best tracking restarts from the current state.
  RunStats run(std::uint64_t budget);

  /// Applies a base-graph edit to every level and refreshes the running
  /// modularity.
  void apply_edit(const GraphEdit& edit);

  const Hierarchy& hierarchy() const noexcept { return hierarchy_; }
  const EngineConfig& config() const noexcept { return config_; }

  /// Running flattened modularity (0 while the graph has no edges).
  double modularity() const noexcept { return current_q_; }

  /// Recomputes the flattened modularity from scratch and adopts it.
  /// Returns the absolute gap to the running value.
  double resync_modularity();

  /// Flattened labels of the best partition of the current run.
  std::vector<std::uint32_t> best_labels() const;
  double best_modularity() const noexcept { return best_q_; }

  double lambda() const noexcept { return lambda_; }
  void set_lambda(double lambda) { lambda_ = lambda; }

 private:
  void reset_best();
  bool accept(const Move& move);

  EngineConfig config_;
  ProposalConfig proposal_;
  Hierarchy hierarchy_;
  Rng rng_;
  double lambda_;
  double current_q_ = 0.0;
  double best_q_ = 0.0;
  bool at_best_ = true;
  std::vector<std::uint32_t> best_snapshot_;
  std::uint64_t run_steps_ = 0;
  std::uint64_t steps_to_best_ = 0;
};

struct RunResult {
  std::vector<std::uint32_t> labels;
  RunStats stats;
};

/// Cold-start run for the configured budget, returning the best flattened
/// partition seen.
///
/// @throw std::domain_error when the graph has no edges.
RunResult run_static(const Graph& graph, const EngineConfig& config);

/// The edits of one time step, with the 1-based stream index of each event.
struct EventBatch {
  std::uint64_t t = 0;
  std::vector<GraphEdit> edits;
  std::vector<std::size_t> event_index;
};

struct OnlineStep {
  std::uint64_t t = 0;
  std::vector<std::uint32_t> labels;
  RunStats stats;
};

/// Warm-started online loop. Time 0 covers the initial graph (plus any
/// batch stamped 0) and gets the static budget, so an empty stream gives
/// exactly run_static. Each later batch is applied and followed by
/// budget_per_step proposals from the inherited chain. Steps at which the
/// graph has no edges run no proposals and report modularity 0.
///
/// @throw StreamError for batches out of order or an edit the graph rejects.
std::vector<OnlineStep> run_online(const Graph& initial, const std::vector<EventBatch>& batches,
                                   const EngineConfig& config);

}  // namespace mhcd
