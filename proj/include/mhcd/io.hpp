/// @file
/// Text formats: edge lists, event streams, assignments and metrics lines.
///
/// Node labels in files are non-negative integers. A NodeTable maps them to
/// dense ids in order of first appearance.

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mhcd/engine.hpp"
#include "mhcd/graph.hpp"

namespace mhcd {

class NodeTable {
 public:
  /// Id of `label`, assigning the next dense id to an unseen label.
  NodeId intern(std::uint64_t label);
  std::optional<NodeId> find(std::uint64_t label) const;
  std::uint64_t label(NodeId id) const { return labels_.at(id); }
  std::size_t size() const noexcept { return labels_.size(); }

 private:
  std::unordered_map<std::uint64_t, NodeId> ids_;
  std::vector<std::uint64_t> labels_;
};

struct ParsedGraph {
  Graph graph;
  NodeTable nodes;
};

/// "u v [w]" per line, w defaulting to 1. Blank lines and lines starting
/// with '#' are skipped; duplicate edges are summed.
///
/// @throw ParseError with the line number on malformed input or a weight
///        that is not a positive finite number.
ParsedGraph parse_edge_list(std::istream& in);
ParsedGraph parse_edge_list(const std::string& text);

/// "t op u v [w]" per line with op in {add, del} and t non-decreasing.
/// Events are grouped by t. Unseen labels in add events are interned;
/// a del event naming an unseen label refers to an absent edge.
///
/// @throw ParseError on malformed lines.
/// @throw StreamError when t decreases or a del names an unknown node.
std::vector<EventBatch> parse_event_stream(std::istream& in, NodeTable& nodes);
std::vector<EventBatch> parse_event_stream(const std::string& text, NodeTable& nodes);

/// "label community" per node in ascending label order, communities
/// renumbered 1..K by first appearance.
std::string emit_assignment(const std::vector<std::uint32_t>& labels, const NodeTable& nodes);

/// Reads emit_assignment output back as label -> community.
///
/// @throw ParseError on malformed lines or a repeated node.
std::map<std::uint64_t, std::uint64_t> parse_assignment(std::istream& in);
std::map<std::uint64_t, std::uint64_t> parse_assignment(const std::string& text);

/// One JSON object with keys t, iterations, accepted, modularity,
/// communities, wall_ms. With include_wall_clock false, wall_ms is 0 so the
/// line depends only on the inputs and seed.
std::string emit_metrics(std::uint64_t t, const RunStats& stats, bool include_wall_clock = true);

}  // namespace mhcd
