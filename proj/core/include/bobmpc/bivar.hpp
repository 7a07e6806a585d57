#pragma once

#include <stdexcept>
#include <vector>

#include "bobmpc/poly.hpp"
#include "bobmpc/rng.hpp"

namespace bobmpc {

// Symmetric (l,l)-degree bivariate polynomial F(x,y) = sum r_ij x^i y^j with
// r_ij = r_ji. Stored as the full (l+1)x(l+1) coefficient matrix.
class SymBivar {
 public:
  SymBivar() = default;
  explicit SymBivar(int l)
      : l_(l), c_(static_cast<size_t>(l + 1) * static_cast<size_t>(l + 1), 0) {}

  int degree() const { return l_; }

  Fe at(int i, int j) const {
    return c_[static_cast<size_t>(i) * static_cast<size_t>(l_ + 1) +
              static_cast<size_t>(j)];
  }
  void set(int i, int j, Fe v) {
    c_[static_cast<size_t>(i) * static_cast<size_t>(l_ + 1) +
       static_cast<size_t>(j)] = v;
    c_[static_cast<size_t>(j) * static_cast<size_t>(l_ + 1) +
       static_cast<size_t>(i)] = v;
  }

  // Number of coefficients left free once F(0,y) is pinned to a degree-l
  // polynomial: the r_ij with 1 <= i <= j.
  static int free_coeff_count(int l) { return l * (l + 1) / 2; }

  // Builds the symmetric F with F(0,y) = q and the remaining upper-triangle
  // coefficients (r_ij for 1 <= i <= j, row-major) taken from `free`.
  static SymBivar complete(const Poly& q, int l, const std::vector<Fe>& free);

  // F with F(0,y) = q and uniformly random free coefficients.
  static SymBivar embed_random(const Field& f, const Poly& q, int l, Rng& rng);

  // The degree-l row polynomial x -> F(x, y0).
  Poly row_at(const Field& f, Fe y0) const;

  Fe eval(const Field& f, Fe x, Fe y) const;

 private:
  int l_ = 0;
  std::vector<Fe> c_;
};

}  // namespace bobmpc
