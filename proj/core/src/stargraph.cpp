#include "bobmpc/stargraph.hpp"

#include <stdexcept>

namespace bobmpc {

bool star_valid(const ConsistencyGraph& g, const Star& s, int t, Mask within) {
  int n = g.n();
  if ((s.e & ~s.f) != 0) return false;
  if ((s.f & ~within) != 0) return false;
  if (mask_count(s.e) < n - 2 * t) return false;
  if (mask_count(s.f) < n - t) return false;
  for (int e = 0; e < n; ++e) {
    if (!mask_has(s.e, e)) continue;
    Mask need = s.f & ~mask_bit(e);
    if ((g.neighbors(e) & need) != need) return false;
  }
  return true;
}

namespace {

// Maximum matching on the complement graph restricted to a vertex mask,
// via subset DP. comp[v] holds the complement-neighbors of v.
struct MatchingDp {
  const std::vector<Mask>& comp;
  std::vector<signed char> memo;

  explicit MatchingDp(const std::vector<Mask>& c, int n)
      : comp(c), memo(static_cast<size_t>(1u) << n, -1) {}

  int solve(Mask s) {
    if (s == 0) return 0;
    signed char& m = memo[s];
    if (m >= 0) return m;
    int v = __builtin_ctz(s);
    Mask rest = s & ~mask_bit(v);
    int best = solve(rest);  // leave v unmatched
    Mask cand = comp[static_cast<size_t>(v)] & rest;
    while (cand) {
      int u = __builtin_ctz(cand);
      cand &= cand - 1;
      int with = 1 + solve(rest & ~mask_bit(u));
      if (with > best) best = with;
    }
    m = static_cast<signed char>(best);
    return best;
  }

  // Reconstructs one maximum matching as a list of (v,u) pairs.
  void extract(Mask s, std::vector<std::pair<int, int>>& out) {
    if (s == 0) return;
    int total = solve(s);
    int v = __builtin_ctz(s);
    Mask rest = s & ~mask_bit(v);
    if (solve(rest) == total) {
      extract(rest, out);
      return;
    }
    Mask cand = comp[static_cast<size_t>(v)] & rest;
    while (cand) {
      int u = __builtin_ctz(cand);
      cand &= cand - 1;
      if (1 + solve(rest & ~mask_bit(u)) == total) {
        out.emplace_back(v, u);
        extract(rest & ~mask_bit(u), out);
        return;
      }
    }
  }
};

}  // namespace

std::optional<Star> find_star(const ConsistencyGraph& g, int t, Mask within) {
  int n = g.n();
  if (n > 20) throw std::invalid_argument("find_star: n too large for DP matching");
  std::vector<Mask> comp(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    if (!mask_has(within, v)) continue;
    comp[static_cast<size_t>(v)] = within & ~g.neighbors(v) & ~mask_bit(v);
  }
  MatchingDp dp(comp, n);
  std::vector<std::pair<int, int>> matching;
  dp.extract(within, matching);

  Mask matched = 0;
  for (auto& [a, b] : matching) matched |= mask_bit(a) | mask_bit(b);

  // Triangle-heads: unmatched vertices complement-adjacent to both ends of
  // some matched edge.
  Mask heads = 0;
  for (int v = 0; v < n; ++v) {
    if (!mask_has(within, v) || mask_has(matched, v)) continue;
    for (auto& [a, b] : matching) {
      if (mask_has(comp[static_cast<size_t>(v)], a) &&
          mask_has(comp[static_cast<size_t>(v)], b)) {
        heads |= mask_bit(v);
        break;
      }
    }
  }

  Mask e = within & ~matched & ~heads;
  Mask f = 0;
  for (int v = 0; v < n; ++v) {
    if (!mask_has(within, v)) continue;
    if ((comp[static_cast<size_t>(v)] & (e & ~mask_bit(v))) == 0)
      f |= mask_bit(v);
  }
  Star s{e, f};
  if (mask_count(e) >= n - 2 * t && mask_count(f) >= n - t) {
    if (!star_valid(g, s, t, within))
      throw std::logic_error("find_star: constructed star fails validation");
    return s;
  }
  return std::nullopt;
}

Mask prune_fixpoint(const ConsistencyGraph& g, int min_neighbors, Mask within) {
  int n = g.n();
  Mask w = 0;
  for (int i = 0; i < n; ++i)
    if (mask_has(within, i) &&
        mask_count(g.neighbors(i) & within) >= min_neighbors)
      w |= mask_bit(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (!mask_has(w, i)) continue;
      if (mask_count(g.neighbors(i) & w) < min_neighbors) {
        w &= ~mask_bit(i);
        changed = true;
      }
    }
  }
  return w;
}

}  // namespace bobmpc
