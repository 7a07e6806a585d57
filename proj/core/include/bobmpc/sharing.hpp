#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bobmpc/poly.hpp"
#include "bobmpc/rng.hpp"

namespace bobmpc {

using PartyId = int;
using Mask = std::uint32_t;

inline bool mask_has(Mask m, PartyId i) { return (m >> i) & 1u; }
inline Mask mask_bit(PartyId i) { return 1u << i; }
inline int mask_count(Mask m) { return __builtin_popcount(m); }
inline Mask mask_all(int n) {
  return n >= 32 ? ~0u : ((1u << n) - 1u);
}

// Harness-side view of a degree-d sharing: the full share vector indexed by
// party. Protocol code never holds one of these; each party runtime only
// ever sees its own share. Tests and checkers use it to reconstruct.
struct Sharing {
  int degree = 0;
  std::vector<Fe> shares;  // one per party

  int n() const { return static_cast<int>(shares.size()); }
};

// Deals a fresh sharing of `secret` with a uniformly random polynomial.
Sharing deal_sharing(const Field& f, const EvalPoints& pts, int degree,
                     Fe secret, Rng& rng);

// share_i(out) = constant + sum coeffs[k] * share_i(ins[k]). All inputs must
// have equal degree and party count.
Sharing linear_combine(const Field& f, const std::vector<Fe>& coeffs,
                       const std::vector<const Sharing*>& ins, Fe constant);

// Interpolates the sharing polynomial from the shares of the parties in
// `who` (all of them must fit one degree-<=degree polynomial) and returns
// the secret. Throws if the shares are inconsistent.
Fe reconstruct(const Field& f, const EvalPoints& pts, const Sharing& s,
               Mask who);

// Same but returns the full sharing polynomial.
Poly reconstruct_poly(const Field& f, const EvalPoints& pts, const Sharing& s,
                      Mask who);

// Online error correction: points on a degree-d polynomial trickle in from
// the parties in `expected`, at most t of which are corrupt. After each
// admission the decoder is retried; the first polynomial consistent with at
// least d+t+1 received points is the answer and never changes.
class OecSession {
 public:
  OecSession() = default;
  OecSession(const Field* f, const EvalPoints* pts, int d, int t,
             Mask expected)
      : f_(f), pts_(pts), d_(d), t_(t), expected_(expected) {}

  // Feeds one claimed point; returns the decoded polynomial once available.
  // Points from parties outside the expected set, or repeats, are ignored.
  std::optional<Poly> step(PartyId from, Fe value);

  const std::optional<Poly>& output() const { return out_; }
  bool done() const { return out_.has_value(); }
  Mask received_from() const { return seen_; }

 private:
  const Field* f_ = nullptr;
  const EvalPoints* pts_ = nullptr;
  int d_ = 0;
  int t_ = 0;
  Mask expected_ = 0;
  Mask seen_ = 0;
  std::vector<std::pair<Fe, Fe>> points_;
  std::optional<Poly> out_;
};

// A bundle of OEC sessions fed from the same senders, one session per
// coordinate (used when a batch of values is reconstructed at once).
class MultiOec {
 public:
  MultiOec() = default;
  MultiOec(const Field* f, const EvalPoints* pts, int d, int t, Mask expected,
           int width)
      : sessions_(static_cast<size_t>(width), OecSession(f, pts, d, t, expected)) {}

  void step(PartyId from, const std::vector<Fe>& values);
  bool done() const;
  int width() const { return static_cast<int>(sessions_.size()); }
  // Valid once done(): the reconstructed value (constant term) per coordinate.
  std::vector<Fe> values(const Field& f) const;
  const OecSession& session(int i) const { return sessions_[static_cast<size_t>(i)]; }

 private:
  std::vector<OecSession> sessions_;
};

}  // namespace bobmpc
