#include "mhcd/coloration.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace mhcd {

Coloration Coloration::singletons(const Graph& graph) {
  Coloration c;
  c.ensure_capacity(graph.node_count());
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    const CommunityId id = c.allocate_community();
    c.add_member(i, id, graph.degree(i));
    c.present_pos_[i] = static_cast<std::uint32_t>(c.present_.size());
    c.present_.push_back(i);
  }
  c.recount_external(graph);
  return c;
}

Coloration Coloration::from_labels(const Graph& graph, std::span<const std::uint32_t> labels) {
  if (labels.size() != graph.node_count()) {
    throw std::invalid_argument("label count does not match node count");
  }
  Coloration c;
  c.ensure_capacity(graph.node_count());
  std::unordered_map<std::uint32_t, CommunityId> ids;
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    auto [it, inserted] = ids.try_emplace(labels[i], kNoCommunity);
    if (inserted) it->second = c.allocate_community();
    c.add_member(i, it->second, graph.degree(i));
    c.present_pos_[i] = static_cast<std::uint32_t>(c.present_.size());
    c.present_.push_back(i);
  }
  c.recount_external(graph);
  return c;
}

void Coloration::ensure_capacity(std::size_t n) {
  if (n <= assignment_.size()) return;
  assignment_.resize(n, kNoCommunity);
  member_pos_.resize(n, kAbsent);
  present_pos_.resize(n, kAbsent);
  external_.resize(n, 0);
  frontier_pos_.resize(n, kAbsent);
}

void Coloration::recount_external(const Graph& graph) {
  for (const NodeId i : present_) {
    std::uint32_t count = 0;
    for (const auto& nb : graph.neighbors(i)) {
      if (nb.node != i && assignment_[nb.node] != assignment_[i]) ++count;
    }
    set_external(i, count);
  }
}

CommunityId Coloration::community_of(NodeId i) const {
  if (!contains(i)) throw std::out_of_range("node " + std::to_string(i) + " is not colored");
  return assignment_[i];
}

bool Coloration::is_live(CommunityId c) const noexcept {
  const std::uint32_t slot = slot_of(c);
  return c != kNoCommunity && c != kNewCommunity && slot < slots_.size() &&
         slots_[slot].live && slots_[slot].generation == generation_of(c);
}

const Coloration::Community& Coloration::live_community(CommunityId c) const {
  if (!is_live(c)) throw std::out_of_range("community " + std::to_string(c) + " is not live");
  return slots_[slot_of(c)];
}

std::size_t Coloration::community_size(CommunityId c) const {
  return live_community(c).members.size();
}

double Coloration::community_degree(CommunityId c) const { return live_community(c).degree; }

std::span<const NodeId> Coloration::members(CommunityId c) const {
  return live_community(c).members;
}

std::vector<CommunityId> Coloration::communities() const {
  std::vector<CommunityId> out;
  out.reserve(live_communities_);
  for (std::uint32_t s = 0; s < slots_.size(); ++s) {
    if (slots_[s].live) out.push_back(make_community_id(s, slots_[s].generation));
  }
  return out;
}

CommunityId Coloration::allocate_community() {
  std::uint32_t slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
    ++slots_[slot].generation;
  } else {
    slot = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back();
  }
  Community& c = slots_[slot];
  c.live = true;
  c.degree = 0.0;
  c.members.clear();
  ++live_communities_;
  return make_community_id(slot, c.generation);
}

void Coloration::kill_community(std::uint32_t slot) {
  Community& c = slots_[slot];
  c.live = false;
  c.degree = 0.0;
  c.members.clear();
  free_slots_.push_back(slot);
  --live_communities_;
}

void Coloration::add_member(NodeId i, CommunityId c, double degree) {
  Community& com = slots_[slot_of(c)];
  assignment_[i] = c;
  member_pos_[i] = static_cast<std::uint32_t>(com.members.size());
  com.members.push_back(i);
  com.degree += degree;
}

bool Coloration::remove_member(NodeId i, double degree) {
  const std::uint32_t slot = slot_of(assignment_[i]);
  Community& com = slots_[slot];
  const std::uint32_t pos = member_pos_[i];
  const NodeId last = com.members.back();
  com.members[pos] = last;
  member_pos_[last] = pos;
  com.members.pop_back();
  member_pos_[i] = kAbsent;
  assignment_[i] = kNoCommunity;
  com.degree -= degree;
  if (com.members.empty()) {
    kill_community(slot);
    return true;
  }
  return false;
}

void Coloration::set_external(NodeId i, std::uint32_t count) {
  external_[i] = count;
  const bool in = frontier_pos_[i] != kAbsent;
  if (count > 0 && !in) {
    frontier_pos_[i] = static_cast<std::uint32_t>(frontier_.size());
    frontier_.push_back(i);
  } else if (count == 0 && in) {
    const std::uint32_t pos = frontier_pos_[i];
    const NodeId last = frontier_.back();
    frontier_[pos] = last;
    frontier_pos_[last] = pos;
    frontier_.pop_back();
    frontier_pos_[i] = kAbsent;
  }
}

std::size_t Coloration::frontier_size_after(const Graph& graph, NodeId i,
                                            CommunityId target) const {
  const CommunityId from = community_of(i);
  if (target == from || (target == kNewCommunity && community_size(from) == 1)) {
    return frontier_.size();
  }
  long size = static_cast<long>(frontier_.size());
  std::uint32_t moved_external = 0;
  for (const auto& nb : graph.neighbors(i)) {
    if (nb.node == i) continue;
    const CommunityId cj = assignment_[nb.node];
    const bool before = cj != from;
    const bool after = cj != target;
    if (after) ++moved_external;
    if (before != after) {
      const std::uint32_t now = after ? external_[nb.node] + 1 : external_[nb.node] - 1;
      size += static_cast<long>(now > 0) - static_cast<long>(external_[nb.node] > 0);
    }
  }
  size += static_cast<long>(moved_external > 0) - static_cast<long>(external_[i] > 0);
  return static_cast<std::size_t>(size);
}

CommunityId Coloration::apply_move(const Graph& graph, NodeId i, CommunityId target) {
  const CommunityId from = community_of(i);
  if (target == from) return from;
  if (target == kNewCommunity) {
    if (community_size(from) == 1) return from;
  } else if (!is_live(target)) {
    throw std::invalid_argument("move target " + std::to_string(target) + " is not live");
  }

  const CommunityId to = target == kNewCommunity ? allocate_community() : target;
  std::uint32_t moved_external = external_[i];
  for (const auto& nb : graph.neighbors(i)) {
    if (nb.node == i) continue;
    const CommunityId cj = assignment_[nb.node];
    const bool before = cj != from;
    const bool after = cj != to;
    if (before == after) continue;
    if (after) {
      set_external(nb.node, external_[nb.node] + 1);
      ++moved_external;
    } else {
      set_external(nb.node, external_[nb.node] - 1);
      --moved_external;
    }
  }
  set_external(i, moved_external);

  const double k = graph.degree(i);
  remove_member(i, k);
  add_member(i, to, k);
  return to;
}

CommunityId Coloration::insert_singleton(const Graph& graph, NodeId i) {
  ensure_capacity(std::size_t{i} + 1);
  if (contains(i)) throw ContractError("node " + std::to_string(i) + " is already colored");
  const CommunityId id = allocate_community();
  add_member(i, id, graph.degree(i));
  present_pos_[i] = static_cast<std::uint32_t>(present_.size());
  present_.push_back(i);
  std::uint32_t count = 0;
  for (const auto& nb : graph.neighbors(i)) {
    if (nb.node == i || !contains(nb.node)) continue;
    ++count;
    set_external(nb.node, external_[nb.node] + 1);
  }
  set_external(i, count);
  return id;
}

CommunityId Coloration::erase_node(NodeId i) {
  const CommunityId c = community_of(i);
  if (external_[i] != 0) {
    throw ContractError("node " + std::to_string(i) + " still has edges to other communities");
  }
  const bool died = remove_member(i, 0.0);
  const std::uint32_t pos = present_pos_[i];
  const NodeId last = present_.back();
  present_[pos] = last;
  present_pos_[last] = pos;
  present_.pop_back();
  present_pos_[i] = kAbsent;
  return died ? c : kNoCommunity;
}

void Coloration::on_weight_change(NodeId u, NodeId v, double delta, EntryChange change) {
  const CommunityId cu = community_of(u);
  slots_[slot_of(cu)].degree += delta;
  if (u == v) return;
  const CommunityId cv = community_of(v);
  slots_[slot_of(cv)].degree += delta;
  if (cu == cv) return;
  if (change == EntryChange::kCreated) {
    set_external(u, external_[u] + 1);
    set_external(v, external_[v] + 1);
  } else if (change == EntryChange::kErased) {
    set_external(u, external_[u] - 1);
    set_external(v, external_[v] - 1);
  }
}

std::vector<std::uint32_t> Coloration::canonical_labels() const {
  std::vector<std::uint32_t> label_of_slot(slots_.size(), kAbsent);
  std::vector<std::uint32_t> labels;
  labels.reserve(present_.size());
  std::uint32_t next = 0;
  for (NodeId i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] == kNoCommunity) continue;
    auto& label = label_of_slot[slot_of(assignment_[i])];
    if (label == kAbsent) label = next++;
    labels.push_back(label);
  }
  return labels;
}

double node_to_community_weight(const Graph& graph, const Coloration& coloration, NodeId i,
                                CommunityId c) {
  double sum = 0.0;
  for (const auto& nb : graph.neighbors(i)) {
    if (coloration.community_of(nb.node) == c) sum += nb.weight;
  }
  return sum;
}

}  // namespace mhcd
