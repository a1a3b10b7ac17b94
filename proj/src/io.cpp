#include "mhcd/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace mhcd {

NodeId NodeTable::intern(std::uint64_t label) {
  const auto [it, inserted] = ids_.try_emplace(label, static_cast<NodeId>(labels_.size()));
  if (inserted) labels_.push_back(label);
  return it->second;
}

std::optional<NodeId> NodeTable::find(std::uint64_t label) const {
  const auto it = ids_.find(label);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    const std::size_t start = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k > start) out.push_back(line.substr(start, k - start));
  }
  return out;
}

bool skippable(const std::vector<std::string_view>& fields) {
  return fields.empty() || fields.front().front() == '#';
}

std::uint64_t parse_integer(std::string_view field, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

double parse_weight(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw ParseError(line, "invalid weight '" + std::string(field) + "'");
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParseError(line, "weight must be positive and finite, got '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

ParsedGraph parse_edge_list(std::istream& in) {
  ParsedGraph out;
  std::vector<WeightedEdge> edges;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto fields = split(text);
    if (skippable(fields)) continue;
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(line, "expected 'u v [w]'");
    }
    const NodeId u = out.nodes.intern(parse_integer(fields[0], line, "node"));
    const NodeId v = out.nodes.intern(parse_integer(fields[1], line, "node"));
    const double w = fields.size() == 3 ? parse_weight(fields[2], line) : 1.0;
    edges.push_back({u, v, w});
  }
  out.graph = Graph::from_edge_list(edges, out.nodes.size());
  return out;
}

ParsedGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::vector<EventBatch> parse_event_stream(std::istream& in, NodeTable& nodes) {
  std::vector<EventBatch> batches;
  std::string text;
  std::size_t line = 0;
  std::size_t event = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto fields = split(text);
    if (skippable(fields)) continue;
    ++event;
    if (fields.size() < 4 || fields.size() > 5) {
      throw ParseError(line, "expected 't add|del u v [w]'");
    }
    const std::uint64_t t = parse_integer(fields[0], line, "time step");
    const bool add = fields[1] == "add";
    if (!add && fields[1] != "del") {
      throw ParseError(line, "unknown operation '" + std::string(fields[1]) + "'");
    }
    const std::uint64_t a = parse_integer(fields[2], line, "node");
    const std::uint64_t b = parse_integer(fields[3], line, "node");
    const double w = fields.size() == 5 ? parse_weight(fields[4], line) : 1.0;
    if (!batches.empty() && t < batches.back().t) {
      throw StreamError(event, "line " + std::to_string(line) + ": time step " +
                                   std::to_string(t) + " follows " +
                                   std::to_string(batches.back().t));
    }

    GraphEdit edit;
    edit.kind = add ? EditKind::kAddEdge : EditKind::kDelEdge;
    edit.weight = w;
    if (add) {
      edit.u = nodes.intern(a);
      edit.v = nodes.intern(b);
    } else {
      const auto u = nodes.find(a);
      const auto v = nodes.find(b);
      if (!u || !v) {
        throw StreamError(event, "line " + std::to_string(line) + ": deleting edge " +
                                     std::to_string(a) + "-" + std::to_string(b) +
                                     " with an unknown endpoint");
      }
      edit.u = *u;
      edit.v = *v;
    }
    if (batches.empty() || batches.back().t != t) batches.push_back({t, {}, {}});
    batches.back().edits.push_back(edit);
    batches.back().event_index.push_back(event);
  }
  return batches;
}

std::vector<EventBatch> parse_event_stream(const std::string& text, NodeTable& nodes) {
  std::istringstream in(text);
  return parse_event_stream(in, nodes);
}

std::string emit_assignment(const std::vector<std::uint32_t>& labels, const NodeTable& nodes) {
  std::vector<NodeId> order(labels.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  const bool labelled = nodes.size() == labels.size();
  auto name = [&](NodeId i) -> std::uint64_t { return labelled ? nodes.label(i) : i; };
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return name(a) < name(b); });

  std::unordered_map<std::uint32_t, std::uint64_t> renumber;
  std::string out;
  for (const NodeId i : order) {
    const auto [it, inserted] = renumber.try_emplace(labels[i], renumber.size() + 1);
    out += std::to_string(name(i));
    out += ' ';
    out += std::to_string(it->second);
    out += '\n';
  }
  return out;
}

std::map<std::uint64_t, std::uint64_t> parse_assignment(std::istream& in) {
  std::map<std::uint64_t, std::uint64_t> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto fields = split(text);
    if (skippable(fields)) continue;
    if (fields.size() != 2) throw ParseError(line, "expected 'node community'");
    const std::uint64_t node = parse_integer(fields[0], line, "node");
    const std::uint64_t community = parse_integer(fields[1], line, "community");
    if (!out.emplace(node, community).second) {
      throw ParseError(line, "node " + std::to_string(node) + " assigned twice");
    }
  }
  return out;
}

std::map<std::uint64_t, std::uint64_t> parse_assignment(const std::string& text) {
  std::istringstream in(text);
  return parse_assignment(in);
}

std::string emit_metrics(std::uint64_t t, const RunStats& stats, bool include_wall_clock) {
  nlohmann::ordered_json j;
  j["t"] = t;
  j["iterations"] = stats.iterations;
  j["accepted"] = stats.accepted;
  j["modularity"] = stats.best_modularity;
  j["communities"] = stats.communities;
  j["wall_ms"] = include_wall_clock ? stats.wall_ms : 0.0;
  return j.dump();
}

}  // namespace mhcd
