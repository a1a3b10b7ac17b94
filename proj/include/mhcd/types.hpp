/// @file
/// Identifier types and error classes shared by every module.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace mhcd {

/// Dense node index within one graph.
using NodeId = std::uint32_t;

/// Community identifier. The low 32 bits are a storage slot and the high
/// 32 bits a generation counter, so an id is never handed out twice within a
/// run even though slots are recycled.
using CommunityId = std::uint64_t;

inline constexpr CommunityId kNoCommunity = std::numeric_limits<CommunityId>::max();

/// Move target meaning "leave the current community and form a new singleton".
inline constexpr CommunityId kNewCommunity = kNoCommunity - 1;

constexpr std::uint32_t slot_of(CommunityId c) noexcept {
  return static_cast<std::uint32_t>(c & 0xffffffffULL);
}

constexpr std::uint32_t generation_of(CommunityId c) noexcept {
  return static_cast<std::uint32_t>(c >> 32);
}

constexpr CommunityId make_community_id(std::uint32_t slot, std::uint32_t generation) noexcept {
  return (static_cast<CommunityId>(generation) << 32) | slot;
}

/// Malformed text input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Malformed or inconsistent event stream. Carries the 1-based index of the
/// offending event.
class StreamError : public std::runtime_error {
 public:
  StreamError(std::size_t event, const std::string& what)
      : std::runtime_error("event " + std::to_string(event) + ": " + what), event_(event) {}
  std::size_t event() const noexcept { return event_; }

 private:
  std::size_t event_;
};

/// A caller broke a documented precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mhcd
