#pragma once

#include <optional>
#include <vector>

#include "bobmpc/sharing.hpp"

namespace bobmpc {

// Undirected consistency graph derived from OK votes: the edge (i,j) exists
// iff both OK(i,j) and OK(j,i) were recorded. Simple graph, no self loops.
class ConsistencyGraph {
 public:
  ConsistencyGraph() = default;
  explicit ConsistencyGraph(int n)
      : n_(n), ok_(static_cast<size_t>(n), 0), adj_(static_cast<size_t>(n), 0) {}

  int n() const { return n_; }

  // Records OK(i,j); returns true if this completed a new edge.
  bool add_ok(PartyId i, PartyId j) {
    if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) return false;
    if (mask_has(ok_[static_cast<size_t>(i)], j)) return false;
    ok_[static_cast<size_t>(i)] |= mask_bit(j);
    if (mask_has(ok_[static_cast<size_t>(j)], i) &&
        !mask_has(adj_[static_cast<size_t>(i)], j)) {
      adj_[static_cast<size_t>(i)] |= mask_bit(j);
      adj_[static_cast<size_t>(j)] |= mask_bit(i);
      return true;
    }
    return false;
  }

  bool has_edge(PartyId i, PartyId j) const {
    return i != j && mask_has(adj_[static_cast<size_t>(i)], j);
  }
  Mask neighbors(PartyId i) const { return adj_[static_cast<size_t>(i)]; }
  int degree(PartyId i) const { return mask_count(adj_[static_cast<size_t>(i)]); }

  // Removes every edge incident to i (dealer-side pruning of liars).
  void isolate(PartyId i) {
    Mask nb = adj_[static_cast<size_t>(i)];
    adj_[static_cast<size_t>(i)] = 0;
    for (int j = 0; j < n_; ++j)
      if (mask_has(nb, j)) adj_[static_cast<size_t>(j)] &= ~mask_bit(i);
  }

 private:
  int n_ = 0;
  std::vector<Mask> ok_;
  std::vector<Mask> adj_;
};

// A pair E subset-of F with |E| >= n-2t, |F| >= n-t and every cross pair
// (e,f), e != f, an edge of the host graph.
struct Star {
  Mask e = 0;
  Mask f = 0;
};

// Structural validity of a candidate star against a graph, with both sets
// restricted to `within`. Size thresholds use the graph's full n.
bool star_valid(const ConsistencyGraph& g, const Star& s, int t, Mask within);

// Matching-based star finder: maximum matching in the complement graph,
// plus triangle-heads, yields an independent core E and its common
// neighborhood F. Complete whenever the graph restricted to `within`
// contains a clique of size >= n-t. Vertices outside `within` are ignored.
// Requires n <= 20 (bitmask DP matching).
std::optional<Star> find_star(const ConsistencyGraph& g, int t, Mask within);

inline std::optional<Star> find_star(const ConsistencyGraph& g, int t) {
  return find_star(g, t, mask_all(g.n()));
}

// Greatest fixpoint of: start with the parties whose degree within `within`
// is at least `min_neighbors`, then repeatedly drop members adjacent to
// fewer than `min_neighbors` members of the current set.
Mask prune_fixpoint(const ConsistencyGraph& g, int min_neighbors, Mask within);

// The W-set rule with plain graph degrees: quota n - t_s real neighbors.
inline Mask compute_w(const ConsistencyGraph& g, int t_s) {
  return prune_fixpoint(g, g.n() - t_s, mask_all(g.n()));
}

}  // namespace bobmpc
