// Command-line front end: detect, stream, bench, oracle.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mhcd/engine.hpp"
#include "mhcd/io.hpp"
#include "mhcd/louvain.hpp"
#include "mhcd/modularity.hpp"
#include "mhcd/oracle.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseFailure = 3,
  kStreamFailure = 4,
  kInputFailure = 5,
  kIoFailure = 6,
  kInternalFailure = 70,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

std::string fixed(double value, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

struct EngineOptions {
  mhcd::EngineConfig config;
  std::uint64_t iterations = 0;
  bool no_wall_clock = false;
};

void add_engine_options(CLI::App& cmd, EngineOptions& opt) {
  const std::map<std::string, mhcd::ProposalFamily> families{
      {"basic", mhcd::ProposalFamily::kBasic},
      {"improved", mhcd::ProposalFamily::kImproved},
      {"hierarchical", mhcd::ProposalFamily::kHierarchical}};
  const std::map<std::string, mhcd::DeltaMode> deltas{{"top", mhcd::DeltaMode::kTopLevel},
                                                      {"level", mhcd::DeltaMode::kPerLevel}};
  const std::map<std::string, mhcd::FrontierMode> frontiers{
      {"current", mhcd::FrontierMode::kCurrent}, {"strict", mhcd::FrontierMode::kStrict}};

  auto& c = opt.config;
  cmd.add_option("--lambda", c.lambda, "Inverse temperature")->capture_default_str();
  cmd.add_option("--alpha", c.alpha, "Weight of the uniform pair proposal")->capture_default_str();
  cmd.add_option("--levels", c.levels, "Hierarchy levels")->capture_default_str();
  cmd.add_option("--level-weights", c.level_weights, "One weight per level")->delimiter(',');
  cmd.add_option("--iters", opt.iterations, "Proposals per static run (default 20|E|)");
  cmd.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd.add_option("--proposal", c.family, "basic, improved or hierarchical")
      ->transform(CLI::CheckedTransformer(families, CLI::ignore_case));
  cmd.add_option("--delta-mode", c.delta_mode, "top or level")
      ->transform(CLI::CheckedTransformer(deltas, CLI::ignore_case));
  cmd.add_option("--frontier-mode", c.frontier_mode, "current or strict")
      ->transform(CLI::CheckedTransformer(frontiers, CLI::ignore_case));
  cmd.add_option("--anneal-gamma", c.anneal_gamma, "Annealing factor per period");
  cmd.add_option("--anneal-period", c.anneal_period, "Steps per annealing period (0: off)");
  cmd.add_flag("--no-wall-clock", opt.no_wall_clock, "Report wall_ms as 0");
}

void finalize(EngineOptions& opt, const CLI::App& cmd) {
  if (cmd.count("--iters") > 0) opt.config.iterations = opt.iterations;
  mhcd::validate(opt.config);
}

int run_detect(const std::string& graph_path, EngineOptions& opt, const std::string& output,
               const std::string& metrics) {
  const auto parsed = mhcd::parse_edge_list(read_file(graph_path));
  const auto result = mhcd::run_static(parsed.graph, opt.config);
  write_output(output, mhcd::emit_assignment(result.labels, parsed.nodes), std::cout);
  write_output(metrics, mhcd::emit_metrics(0, result.stats, !opt.no_wall_clock) + "\n",
               std::cerr);
  return kOk;
}

int run_stream(const std::string& graph_path, const std::string& events_path,
               EngineOptions& opt, const std::string& output, const std::string& metrics) {
  auto parsed = mhcd::parse_edge_list(read_file(graph_path));
  const auto batches = mhcd::parse_event_stream(read_file(events_path), parsed.nodes);
  const auto steps = mhcd::run_online(parsed.graph, batches, opt.config);
  std::string lines;
  for (const auto& step : steps) {
    lines += mhcd::emit_metrics(step.t, step.stats, !opt.no_wall_clock) + "\n";
  }
  write_output(metrics, lines, std::cout);
  if (!output.empty()) write_output(output, mhcd::emit_assignment(steps.back().labels, parsed.nodes), std::cout);
  return kOk;
}

std::size_t count_distinct(std::vector<std::uint32_t> labels) {
  std::sort(labels.begin(), labels.end());
  return static_cast<std::size_t>(std::unique(labels.begin(), labels.end()) - labels.begin());
}

int run_bench(const std::string& graph_path, EngineOptions& opt) {
  const auto parsed = mhcd::parse_edge_list(read_file(graph_path));
  const auto& graph = parsed.graph;
  auto ms_since = [](auto start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };
  auto row = [&](const std::string& name, double q, std::size_t k, double ms) {
    std::printf("%-14s %14s %12zu %12s\n", name.c_str(), fixed(q).c_str(), k,
                opt.no_wall_clock ? "-" : fixed(ms, 1).c_str());
  };
  std::printf("# nodes=%zu edges=%zu m=%s\n", graph.node_count(), graph.entry_count(),
              fixed(graph.total_weight(), 3).c_str());
  std::printf("%-14s %14s %12s %12s\n", "method", "modularity", "communities", "ms");

  auto start = std::chrono::steady_clock::now();
  const auto engine = mhcd::run_static(graph, opt.config);
  row("mh", engine.stats.best_modularity, engine.stats.communities, ms_since(start));

  start = std::chrono::steady_clock::now();
  const auto reference = mhcd::louvain(graph, opt.config.seed);
  row("louvain", reference.modularity, count_distinct(reference.labels), ms_since(start));

  if (graph.node_count() <= mhcd::kBruteForceMaxNodes) {
    start = std::chrono::steady_clock::now();
    const auto best = mhcd::brute_force_best(graph);
    row("brute-force", best.modularity, count_distinct(best.labels), ms_since(start));
  }
  return kOk;
}

int run_oracle(const std::string& graph_path, const std::string& output) {
  const auto parsed = mhcd::parse_edge_list(read_file(graph_path));
  const auto best = mhcd::brute_force_best(parsed.graph);
  std::string text = "# modularity " + fixed(best.modularity, 12) + " over " +
                     std::to_string(best.partitions) + " partitions\n";
  text += mhcd::emit_assignment(best.labels, parsed.nodes);
  write_output(output, text, std::cout);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metropolis-Hastings community detection"};
  app.require_subcommand(1);

  std::string graph_path;
  std::string events_path;
  std::string output;
  std::string metrics;

  EngineOptions detect_opt;
  auto* detect = app.add_subcommand("detect", "Find communities of a static graph");
  detect->add_option("graph", graph_path, "Edge list")->required();
  detect->add_option("-o,--output", output, "Assignment file (default stdout)");
  detect->add_option("--metrics", metrics, "Metrics file (default stderr)");
  add_engine_options(*detect, detect_opt);

  EngineOptions stream_opt;
  auto* stream = app.add_subcommand("stream", "Track communities along an event stream");
  stream->add_option("graph", graph_path, "Initial edge list")->required();
  stream->add_option("events", events_path, "Event stream")->required();
  stream->add_option("--budget-per-step", stream_opt.config.budget_per_step,
                     "Proposals per time step")
      ->capture_default_str();
  stream->add_option("-o,--output", output, "Final assignment file");
  stream->add_option("--metrics", metrics, "Metrics file (default stdout)");
  add_engine_options(*stream, stream_opt);

  EngineOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Compare the chain with louvain and brute force");
  bench->add_option("graph", graph_path, "Edge list")->required();
  add_engine_options(*bench, bench_opt);

  auto* oracle = app.add_subcommand("oracle", "Exact optimum by exhaustive search");
  oracle->add_option("graph", graph_path, "Edge list")->required();
  oracle->add_option("-o,--output", output, "Assignment file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (detect->parsed()) {
      finalize(detect_opt, *detect);
      return run_detect(graph_path, detect_opt, output, metrics);
    }
    if (stream->parsed()) {
      finalize(stream_opt, *stream);
      return run_stream(graph_path, events_path, stream_opt, output, metrics);
    }
    if (bench->parsed()) {
      finalize(bench_opt, *bench);
      return run_bench(graph_path, bench_opt);
    }
    return run_oracle(graph_path, output);
  } catch (const mhcd::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseFailure;
  } catch (const mhcd::StreamError& e) {
    std::cerr << "stream error: " << e.what() << "\n";
    return kStreamFailure;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const mhcd::ContractError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInputFailure;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInputFailure;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInputFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
