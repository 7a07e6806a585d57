#include "bobmpc/bivar.hpp"

namespace bobmpc {

SymBivar SymBivar::complete(const Poly& q, int l, const std::vector<Fe>& free) {
  if (q.degree_bound() > l)
    throw std::invalid_argument("bivar: input polynomial degree too high");
  if (static_cast<int>(free.size()) != free_coeff_count(l))
    throw std::invalid_argument("bivar: wrong number of free coefficients");
  SymBivar F(l);
  for (int j = 0; j <= l; ++j) F.set(0, j, q.coeff(j));
  size_t k = 0;
  for (int i = 1; i <= l; ++i)
    for (int j = i; j <= l; ++j) F.set(i, j, free[k++]);
  return F;
}

SymBivar SymBivar::embed_random(const Field& f, const Poly& q, int l, Rng& rng) {
  std::vector<Fe> free(static_cast<size_t>(free_coeff_count(l)));
  for (Fe& v : free) v = rng.next_fe(f);
  return complete(q, l, free);
}

Poly SymBivar::row_at(const Field& f, Fe y0) const {
  std::vector<Fe> coeffs(static_cast<size_t>(l_) + 1, 0);
  for (int i = 0; i <= l_; ++i) {
    Fe acc = 0;
    Fe yp = 1;
    for (int j = 0; j <= l_; ++j) {
      acc = f.add(acc, f.mul(at(i, j), yp));
      yp = f.mul(yp, y0);
    }
    coeffs[static_cast<size_t>(i)] = acc;
  }
  return Poly{std::move(coeffs)};
}

Fe SymBivar::eval(const Field& f, Fe x, Fe y) const {
  return row_at(f, y).eval(f, x);
}

}  // namespace bobmpc
