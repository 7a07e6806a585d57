#pragma once

#include <cstdint>

#include "bobmpc/field.hpp"

namespace bobmpc {

// splitmix64: tiny, fast, and the stream is pinned by this file rather than
// by a library implementation, so transcripts are reproducible everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). Rejection sampling keeps it unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) return 0;
    std::uint64_t limit = ~0ULL - ~0ULL % bound;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  Fe next_fe(const Field& f) { return next_below(f.prime()); }

  bool next_bool() { return next_u64() & 1; }

  // Derives an independent deterministic stream, e.g. one per party.
  Rng fork(std::uint64_t salt) {
    std::uint64_t s = next_u64();
    return Rng(s ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
  }

 private:
  std::uint64_t state_;
};

}  // namespace bobmpc
