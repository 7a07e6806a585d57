#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bobmpc/field.hpp"

namespace bobmpc {

// Dense univariate polynomial, coefficients low-to-high. The degree is a
// declared bound: a zero polynomial of degree d is a vector of d+1 zeros,
// so shares of zero are representable at every degree.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Fe> coeffs) : c_(std::move(coeffs)) {}

  static Poly zero(int degree) {
    return Poly(std::vector<Fe>(static_cast<size_t>(degree) + 1, 0));
  }
  static Poly constant(Fe v, int degree = 0) {
    Poly p = zero(degree);
    p.c_[0] = v;
    return p;
  }

  int degree_bound() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Fe>& coeffs() const { return c_; }
  std::vector<Fe>& coeffs() { return c_; }
  Fe coeff(int i) const {
    return i < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(i)] : 0;
  }

  Fe eval(const Field& f, Fe x) const {
    Fe acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = f.add(f.mul(acc, x), c_[i]);
    return acc;
  }

  bool equals(const Field& f, const Poly& o) const {
    int d = std::max(degree_bound(), o.degree_bound());
    for (int i = 0; i <= d; ++i)
      if (f.reduce(coeff(i)) != f.reduce(o.coeff(i))) return false;
    return true;
  }

 private:
  std::vector<Fe> c_;
};

// Coefficients lambda_k with f(target) = sum lambda_k * f(xs[k]) for every
// polynomial f of degree <= |xs|-1. Duplicate xs are rejected.
std::vector<Fe> lagrange_point_coeffs(const Field& f, const std::vector<Fe>& xs,
                                      Fe target);

// Unique polynomial of degree <= d through the first d+1 points; extra
// points must be consistent with it. Throws std::invalid_argument on
// duplicate x values or inconsistent extras.
Poly interpolate(const Field& f, const std::vector<std::pair<Fe, Fe>>& points,
                 int d);

// Reed-Solomon decoding (Berlekamp-Welch). Returns the unique degree-<=d
// polynomial that disagrees with at most r of the given points, or nullopt
// when the points do not determine one (fewer than d+2r+1 points, or more
// than r errors). Duplicate x values are rejected.
std::optional<Poly> rs_decode(const Field& f, int d, int r,
                              const std::vector<std::pair<Fe, Fe>>& points);

}  // namespace bobmpc
