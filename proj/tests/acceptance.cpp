// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any fails.
//
// usage: acceptance <mhcd binary> <data dir>

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "mhcd/engine.hpp"
#include "mhcd/generators.hpp"
#include "mhcd/hierarchy.hpp"
#include "mhcd/io.hpp"
#include "mhcd/louvain.hpp"
#include "mhcd/modularity.hpp"
#include "mhcd/oracle.hpp"
#include "mhcd/proposals.hpp"

namespace fs = std::filesystem;
using namespace mhcd;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_edges(const Graph& g, const fs::path& p) {
  std::ofstream out(p);
  out.precision(17);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const auto& nb : g.neighbors(u)) {
      if (nb.node >= u) out << u << ' ' << nb.node << ' ' << nb.weight << '\n';
    }
  }
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

Graph random_small_graph(Rng& rng, std::size_t min_nodes, std::size_t max_nodes) {
  RandomGraphOptions opt;
  opt.nodes = min_nodes + rng.index(max_nodes - min_nodes + 1);
  opt.edge_probability = 3.0 / static_cast<double>(opt.nodes);
  opt.weighted = rng.bernoulli(0.5);
  opt.loop_probability = rng.bernoulli(0.5) ? 0.2 : 0.0;
  return random_connected_graph(opt, rng);
}

Coloration random_coloration(const Graph& g, Rng& rng) {
  const std::size_t k = 1 + rng.index(g.node_count());
  std::vector<std::uint32_t> labels(g.node_count());
  for (auto& l : labels) l = static_cast<std::uint32_t>(rng.index(k));
  return Coloration::from_labels(g, labels);
}

CommunityId random_target(const Coloration& c, Rng& rng) {
  const auto live = c.communities();
  return rng.bernoulli(0.2) ? kNewCommunity : live[rng.index(live.size())];
}

std::set<std::vector<NodeId>> blocks(const std::vector<std::uint32_t>& labels) {
  std::map<std::uint32_t, std::vector<NodeId>> by;
  for (NodeId i = 0; i < labels.size(); ++i) by[labels[i]].push_back(i);
  std::set<std::vector<NodeId>> out;
  for (auto& [k, v] : by) out.insert(v);
  return out;
}

// --- 1 ---------------------------------------------------------------------

Outcome oracle_optimality(const fs::path& cli, const fs::path& work) {
  std::vector<Graph> graphs;
  Rng rng(101);
  for (int k = 0; k < 20; ++k) {
    RandomGraphOptions opt;
    opt.nodes = 5 + rng.index(3);
    opt.edge_probability = 0.4;
    graphs.push_back(random_connected_graph(opt, rng));
  }
  graphs.push_back(triangle());
  graphs.push_back(single_edge());
  graphs.push_back(two_triangles());

  int hits = 0;
  double cli_seconds = 0.0;
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    const fs::path edges = work / format("ac1_%zu.edges", k);
    const fs::path out = work / format("ac1_%zu.assign", k);
    write_edges(graphs[k], edges);
    const auto start = Clock::now();
    const int code = run(quote(cli) + " detect " + quote(edges) +
                         " --proposal improved --lambda 50 --iters 100000 --seed " +
                         std::to_string(k + 1) + " -o " + quote(out) + " --metrics /dev/null");
    cli_seconds += seconds_since(start);
    if (code != 0) return {false, format("detect exited %d on instance %zu", code, k)};

    const auto parsed = parse_edge_list(read_file(edges));
    const auto assignment = parse_assignment(read_file(out));
    std::vector<std::uint32_t> labels(parsed.graph.node_count());
    for (NodeId i = 0; i < labels.size(); ++i) {
      labels[i] = static_cast<std::uint32_t>(assignment.at(parsed.nodes.label(i)));
    }
    const double q = modularity_of_labels(parsed.graph, labels);
    if (std::abs(q - brute_force_best(parsed.graph).modularity) <= 1e-9) ++hits;
  }
  const double rate = static_cast<double>(hits) / static_cast<double>(graphs.size());
  return {rate >= 0.95 && cli_seconds < 5.0,
          format("%d/%zu optimal, %.2f s", hits, graphs.size(), cli_seconds)};
}

// --- 2 ---------------------------------------------------------------------

Outcome delta_equivalence() {
  Rng rng(202);
  double worst_flat = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Graph g = random_small_graph(rng, 2, 50);
    Coloration c = random_coloration(g, rng);
    const NodeId i = static_cast<NodeId>(rng.index(g.node_count()));
    const CommunityId target = random_target(c, rng);
    const double before = modularity(g, c);
    const double delta = delta_move(g, c, i, target);
    c.apply_move(g, i, target);
    worst_flat = std::max(worst_flat, std::abs(delta - (modularity(g, c) - before)));
  }

  double worst_hier = 0.0;
  int zero_gain = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Graph g = random_small_graph(rng, 2, 50);
    const std::size_t levels = 1 + rng.index(3);
    Hierarchy h(g, random_coloration(g, rng), levels);
    for (int k = 0; k < 20; ++k) {
      const std::size_t l = rng.index(levels);
      const Coloration& c = h.coloration(l);
      h.apply_move(l, c.node_at(rng.index(c.node_count())), random_target(c, rng));
    }
    const std::size_t l = rng.index(levels);
    const Coloration& c = h.coloration(l);
    const NodeId i = c.node_at(rng.index(c.node_count()));
    const CommunityId target = random_target(c, rng);
    const auto labels_before = h.flat_labels();
    const double before = flattened_modularity(h);
    const double delta = delta_hier(h, l, i, target);
    h.apply_move(l, i, target);
    worst_hier = std::max(worst_hier, std::abs(delta - (flattened_modularity(h) - before)));
    if (delta == 0.0 && blocks(labels_before) == blocks(h.flat_labels())) ++zero_gain;
  }
  return {worst_flat <= 1e-10 && worst_hier <= 1e-10 && zero_gain >= 50,
          format("max error %.2e flat, %.2e hierarchical, %d zero-gain", worst_flat, worst_hier,
                 zero_gain)};
}

// --- 3 ---------------------------------------------------------------------

Outcome aggregation_invariance() {
  Rng rng(303);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = random_small_graph(rng, 2, 50);
    const Coloration c = random_coloration(g, rng);
    const Aggregation agg = aggregate(g, c);
    const std::size_t k = 1 + rng.index(agg.graph.node_count());
    std::vector<std::uint32_t> upper(agg.graph.node_count());
    for (auto& l : upper) l = static_cast<std::uint32_t>(rng.index(k));
    std::vector<std::uint32_t> base(g.node_count());
    for (NodeId i = 0; i < base.size(); ++i) base[i] = upper[agg.upmap[i]];
    worst = std::max(worst, std::abs(modularity_of_labels(agg.graph, upper) -
                                     modularity_of_labels(g, base)));
    std::vector<std::uint32_t> identity(agg.graph.node_count());
    for (std::uint32_t k = 0; k < identity.size(); ++k) identity[k] = k;
    worst = std::max(worst, std::abs(modularity_of_labels(agg.graph, identity) - modularity(g, c)));
  }
  return {worst <= 1e-10, format("max error %.2e", worst)};
}

// --- 4 ---------------------------------------------------------------------

// One representative edge mask per isomorphism class of simple graphs on n nodes.
std::vector<Graph> nonisomorphic_graphs(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  std::vector<std::vector<NodeId>> perms;
  std::vector<NodeId> p(n);
  for (NodeId i = 0; i < n; ++i) p[i] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<std::size_t>> index(n, std::vector<std::size_t>(n));
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    index[pairs[e].first][pairs[e].second] = index[pairs[e].second][pairs[e].first] = e;
  }

  std::vector<Graph> out;
  std::set<std::uint32_t> seen;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::uint32_t canon = mask;
    for (const auto& perm : perms) {
      std::uint32_t image = 0;
      for (std::size_t e = 0; e < pairs.size(); ++e) {
        if (mask >> e & 1u) image |= 1u << index[perm[pairs[e].first]][perm[pairs[e].second]];
      }
      canon = std::min(canon, image);
    }
    if (!seen.insert(canon).second) continue;
    Graph g(n);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      if (mask >> e & 1u) g.apply_edit({EditKind::kAddEdge, pairs[e].first, pairs[e].second, 1.0});
    }
    out.push_back(std::move(g));
  }
  return out;
}

using MoveKey = std::tuple<std::size_t, NodeId, CommunityId>;

// Exact law of one family in a hierarchy built over `base`. Mass not listed
// is the null-step mass of levels with fewer than two nodes.
std::map<MoveKey, double> exact_law(const Hierarchy& h, ProposalFamily family, double alpha,
                                    const std::vector<double>& weights) {
  std::map<MoveKey, double> law;
  const std::size_t levels = family == ProposalFamily::kHierarchical ? h.level_count() : 1;
  for (std::size_t l = 0; l < levels; ++l) {
    const Graph& g = h.graph(l);
    const Coloration& c = h.coloration(l);
    if (c.node_count() < 2) continue;
    const double w = family == ProposalFamily::kHierarchical ? weights[l] : 1.0;
    for (const auto& m : enumerate_moves(c)) {
      if (family == ProposalFamily::kBasic && !g.has_non_loop_edge(m.node)) continue;
      const double p = family == ProposalFamily::kBasic ? prob_basic(g, c, m.node, m.target)
                                                        : prob_improved(g, c, m.node, m.target,
                                                                        alpha);
      if (p > 0.0) law[{l, m.node, m.target}] += w * p;
    }
  }
  return law;
}

Outcome proposal_correctness() {
  const std::vector<double> alphas{0.5, 0.2};
  double worst = 0.0;
  std::size_t graphs = 0;
  std::size_t states = 0;
  Rng rng(404);
  for (std::size_t n = 2; n <= 6; ++n) {
    for (const Graph& g : nonisomorphic_graphs(n)) {
      ++graphs;
      for (const auto& labels : enumerate_partitions(n)) {
        ++states;
        const Coloration c = Coloration::from_labels(g, labels);
        const Hierarchy flat(g, c, 1);
        if (g.connected_node_count() > 0) {
          double sum = 0.0;
          for (const auto& [k, p] : exact_law(flat, ProposalFamily::kBasic, 0.5, {1.0})) sum += p;
          worst = std::max(worst, std::abs(sum - 1.0));
        }
        for (const double alpha : alphas) {
          double sum = 0.0;
          for (const auto& [k, p] : exact_law(flat, ProposalFamily::kImproved, alpha, {1.0})) {
            sum += p;
          }
          worst = std::max(worst, std::abs(sum - 1.0));
        }
        Hierarchy h(g, c, 3);
        for (int k = 0; k < 2; ++k) {
          const std::size_t l = 1 + rng.index(2);
          const Coloration& cl = h.coloration(l);
          if (cl.node_count() > 1) {
            h.apply_move(l, cl.node_at(rng.index(cl.node_count())), random_target(cl, rng));
          }
        }
        const std::vector<double> weights{0.5, 0.3, 0.2};
        double sum = 0.0;
        for (const auto& [k, p] : exact_law(h, ProposalFamily::kHierarchical, 0.5, weights)) {
          sum += p;
        }
        for (std::size_t l = 0; l < 3; ++l) {
          if (h.coloration(l).node_count() < 2) sum += weights[l];
        }
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
  }

  // Sampler frequencies against the exact law.
  constexpr std::uint64_t kDraws = 1000000;
  double worst_z = 0.0;
  std::size_t cells = 0;
  bool stray = false;
  auto check = [&](const Hierarchy& h, ProposalFamily family, std::uint64_t seed) {
    ProposalConfig config;
    config.family = family;
    config.level_weights = family == ProposalFamily::kHierarchical
                               ? std::vector<double>{0.5, 0.5}
                               : std::vector<double>{1.0};
    const auto law = exact_law(h, family, config.alpha, config.level_weights);
    std::map<MoveKey, std::uint64_t> counts;
    Rng draw(seed);
    for (std::uint64_t k = 0; k < kDraws; ++k) {
      const auto m = propose(h, config, draw);
      if (m) ++counts[{m->level, m->node, m->target}];
    }
    for (const auto& [key, n] : counts) stray = stray || !law.contains(key);
    for (const auto& [key, p] : law) {
      const double expected = p * kDraws;
      const double se = std::sqrt(kDraws * p * (1.0 - p));
      const auto it = counts.find(key);
      const double seen = it == counts.end() ? 0.0 : static_cast<double>(it->second);
      worst_z = std::max(worst_z, std::abs(seen - expected) / se);
      ++cells;
    }
  };
  const Graph tt = two_triangles();
  const Hierarchy tt_state(tt, Coloration::from_labels(tt, std::vector<std::uint32_t>{0, 0, 0, 0, 1, 1}), 1);
  check(tt_state, ProposalFamily::kBasic, 1);
  check(tt_state, ProposalFamily::kImproved, 2);
  Hierarchy tt_two(tt, Coloration::from_labels(tt, std::vector<std::uint32_t>{0, 0, 1, 1, 2, 2}), 2);
  check(tt_two, ProposalFamily::kHierarchical, 3);

  return {worst <= 1e-12 && worst_z <= 3.0 && !stray,
          format("%zu graphs, %zu states, max |sum-1| %.2e; %zu cells, max z %.2f", graphs,
                 states, worst, cells, worst_z)};
}

// --- 5 ---------------------------------------------------------------------

Outcome stationarity() {
  EngineConfig config;
  config.family = ProposalFamily::kImproved;
  config.frontier_mode = FrontierMode::kStrict;
  config.lambda = 2.0;
  config.seed = 5;
  const auto start = Clock::now();
  const auto report = stationary_check(triangle(), config, 1000000, 10000);
  const double elapsed = seconds_since(start);
  return {report.total_variation <= 0.02 && elapsed < 30.0,
          format("TV %.4f, pi(all-in-one) %.4f, %.2f s", report.total_variation,
                 report.partitions.front().target, elapsed)};
}

// --- 6 ---------------------------------------------------------------------

// Inverse temperature scaled to the graph's total weight.
constexpr double kLambdaPerWeight = 40.0;

Outcome large_graph(const fs::path& data) {
  Rng rng(2024);
  const Graph planted = planted_partition(1000, 10, 0.1, 0.005, rng);
  EngineConfig config;
  config.family = ProposalFamily::kHierarchical;
  config.lambda = kLambdaPerWeight * planted.total_weight();
  config.iterations = 1000000;
  const double q_planted = run_static(planted, config).stats.best_modularity;
  const double lv_planted = louvain(planted).modularity;

  const Graph karate = parse_edge_list(read_file(data / "karate.edges")).graph;
  config.lambda = kLambdaPerWeight * karate.total_weight();
  config.iterations = 200000;
  const double q_karate = run_static(karate, config).stats.best_modularity;
  const double lv_karate = louvain(karate).modularity;

  const double rel_planted = (lv_planted - q_planted) / lv_planted;
  const double rel_karate = (lv_karate - q_karate) / lv_karate;
  return {rel_planted <= 0.02 && rel_karate <= 0.05 && lv_karate >= 0.40,
          format("planted %.5f vs %.5f (%+.2f%%), karate %.5f vs %.5f (%+.2f%%)", q_planted,
                 lv_planted, -100 * rel_planted, q_karate, lv_karate, -100 * rel_karate)};
}

// --- 7 ---------------------------------------------------------------------

// At lambda = 50 the 9-node chain is hot enough that the state inherited
// from t-1 is an equilibrium sample rather than the optimum.
constexpr double kOnlineLambda = 200.0;

Outcome online_convergence() {
  const std::vector<std::pair<NodeId, NodeId>> tt_order{{0, 1}, {1, 2}, {0, 2}, {2, 3},
                                                        {3, 4}, {4, 5}, {3, 5}};
  std::vector<EventBatch> batches;
  std::size_t index = 0;
  for (const auto& [u, v] : tt_order) {
    ++index;
    batches.push_back({index, {{EditKind::kAddEdge, u, v, 1.0}}, {index}});
  }
  batches.push_back({8,
                     {{EditKind::kAddEdge, 6, 7, 1.0},
                      {EditKind::kAddEdge, 7, 8, 1.0},
                      {EditKind::kAddEdge, 6, 8, 1.0},
                      {EditKind::kAddEdge, 5, 6, 1.0}},
                     {8, 9, 10, 11}});
  const Graph final_graph = three_triangles();
  const auto best = brute_force_best(final_graph);

  struct Tally {
    int optimal = 0;
    int warm_wins = 0;
    std::string steps;
  };
  auto tally = [&](double lambda) {
    Tally out;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      EngineConfig config;
      config.family = ProposalFamily::kHierarchical;
      config.lambda = lambda;
      config.iterations = 0;
      config.budget_per_step = 10000;
      config.seed = seed;
      const auto online = run_online(Graph(), batches, config);
      const auto& last = online.back();
      const bool warm_ok = blocks(last.labels) == blocks(best.labels);
      if (warm_ok) ++out.optimal;

      config.iterations = 10000;
      const auto cold = run_static(final_graph, config);
      const bool cold_ok = std::abs(cold.stats.best_modularity - best.modularity) <= 1e-12;
      const std::uint64_t cold_steps = cold_ok ? cold.stats.steps_to_best : UINT64_MAX;
      if (warm_ok && last.stats.steps_to_best < cold_steps) ++out.warm_wins;
      out.steps += format(" %llu/%llu", static_cast<unsigned long long>(last.stats.steps_to_best),
                          static_cast<unsigned long long>(cold.stats.steps_to_best));
    }
    return out;
  };
  const Tally t = tally(kOnlineLambda);
  const Tally hot = tally(50.0);
  return {t.optimal == 10 && t.warm_wins >= 8,
          format("lambda %g: %d/10 optimal, warm faster on %d/10 (warm/cold:%s); "
                 "lambda 50: %d/10 optimal, warm faster on %d/10",
                 kOnlineLambda, t.optimal, t.warm_wins, t.steps.c_str(), hot.optimal,
                 hot.warm_wins)};
}

// --- 8 ---------------------------------------------------------------------

Outcome determinism(const fs::path& cli, const fs::path& data, const fs::path& work) {
  const fs::path karate = data / "karate.edges";
  const fs::path events = work / "ac8.events";
  {
    std::ofstream out(events);
    out << "1 add 0 34\n1 add 34 35\n2 add 35 0\n3 del 0 1\n3 add 12 13 0.5\n";
  }
  auto produce = [&](int k) {
    const std::string tag = std::to_string(k);
    const std::string opts = " --seed 7 --lambda 3000 --iters 50000 --no-wall-clock";
    const int a = run(quote(cli) + " detect " + quote(karate) + opts + " -o " +
                      quote(work / ("ac8_detect_" + tag)) + " --metrics " +
                      quote(work / ("ac8_detect_metrics_" + tag)));
    const int b = run(quote(cli) + " stream " + quote(karate) + " " + quote(events) + opts +
                      " --budget-per-step 5000 -o " + quote(work / ("ac8_stream_" + tag)) +
                      " --metrics " + quote(work / ("ac8_stream_metrics_" + tag)));
    return a == 0 && b == 0;
  };
  if (!produce(1) || !produce(2)) return {false, "cli run failed"};
  bool same = true;
  std::size_t bytes = 0;
  for (const char* name : {"ac8_detect_", "ac8_detect_metrics_", "ac8_stream_",
                           "ac8_stream_metrics_"}) {
    const std::string one = read_file(work / (std::string(name) + "1"));
    const std::string two = read_file(work / (std::string(name) + "2"));
    same = same && !one.empty() && one == two;
    bytes += one.size();
  }
  return {same, format("%zu bytes compared", bytes)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <mhcd binary> <data dir>\n", argv[0]);
    return 2;
  }
  const fs::path cli = fs::absolute(argv[1]);
  const fs::path data = fs::absolute(argv[2]);
  const fs::path work = fs::temp_directory_path() / ("mhcd_acceptance_" + std::to_string(getpid()));
  fs::create_directories(work);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 oracle optimality", [&] { return oracle_optimality(cli, work); }},
      {"AC2 delta equivalence", delta_equivalence},
      {"AC3 aggregation invariance", aggregation_invariance},
      {"AC4 proposal correctness", proposal_correctness},
      {"AC5 stationarity", stationarity},
      {"AC6 large-graph comparison", [&] { return large_graph(data); }},
      {"AC7 online convergence", online_convergence},
      {"AC8 determinism", [&] { return determinism(cli, data, work); }},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(work);
  return failures == 0 ? 0 : 1;
}
