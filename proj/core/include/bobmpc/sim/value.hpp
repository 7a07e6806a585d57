#pragma once

#include <compare>
#include <cstdint>
#include <variant>
#include <vector>

#include "bobmpc/sharing.hpp"

namespace bobmpc {

// Everything that travels as a protocol value: broadcast payloads, vote
// sets, star announcements. monostate is the out-of-band "no value" marker;
// honest code never broadcasts it as a real value.
struct OkVal {
  PartyId i = 0, j = 0;
  auto operator<=>(const OkVal&) const = default;
};

struct NokVal {
  PartyId i = 0, j = 0;
  int ell = 0;  // least batch index that failed
  Fe v = 0;     // the accuser's version of the disputed point
  auto operator<=>(const NokVal&) const = default;
};

struct StarWEF {
  Mask w = 0, e = 0, f = 0;
  auto operator<=>(const StarWEF&) const = default;
};

struct StarEF {
  Mask e = 0, f = 0;
  auto operator<=>(const StarEF&) const = default;
};

// A vote/re-vote set: members plus their claimed bits plus the majority.
struct VoteSet {
  Mask members = 0;
  Mask bits = 0;
  std::uint8_t maj = 0;
  auto operator<=>(const VoteSet&) const = default;
};

struct FeVec {
  std::vector<Fe> v;
  auto operator<=>(const FeVec&) const = default;
};

using Value = std::variant<std::monostate, std::uint64_t, OkVal, NokVal,
                           StarWEF, StarEF, VoteSet, FeVec>;

inline bool is_bot(const Value& v) {
  return std::holds_alternative<std::monostate>(v);
}

inline Value bit_value(int b) { return Value{static_cast<std::uint64_t>(b)}; }

// 0 or 1 for a bit value, -1 for anything else.
inline int as_bit(const Value& v) {
  if (const auto* u = std::get_if<std::uint64_t>(&v))
    return *u <= 1 ? static_cast<int>(*u) : -1;
  return -1;
}

std::uint64_t value_digest(const Value& v);
int value_fe_count(const Value& v);

}  // namespace bobmpc
