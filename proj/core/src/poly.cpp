#include "bobmpc/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace bobmpc {

namespace {

void check_distinct(const Field& f, const std::vector<Fe>& xs) {
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j)
      if (f.reduce(xs[i]) == f.reduce(xs[j]))
        throw std::invalid_argument("duplicate x values");
}

}  // namespace

std::vector<Fe> lagrange_point_coeffs(const Field& f, const std::vector<Fe>& xs,
                                      Fe target) {
  check_distinct(f, xs);
  std::vector<Fe> out(xs.size());
  for (size_t k = 0; k < xs.size(); ++k) {
    Fe num = 1, den = 1;
    for (size_t j = 0; j < xs.size(); ++j) {
      if (j == k) continue;
      num = f.mul(num, f.sub(target, xs[j]));
      den = f.mul(den, f.sub(xs[k], xs[j]));
    }
    out[k] = f.div(num, den);
  }
  return out;
}

Poly interpolate(const Field& f, const std::vector<std::pair<Fe, Fe>>& points,
                 int d) {
  if (static_cast<int>(points.size()) < d + 1)
    throw std::invalid_argument("interpolate: need at least d+1 points");
  std::vector<Fe> xs;
  xs.reserve(points.size());
  for (auto& [x, y] : points) xs.push_back(x);
  check_distinct(f, xs);

  // Newton form on the first d+1 points, then expand to coefficients.
  size_t m = static_cast<size_t>(d) + 1;
  std::vector<Fe> divided(m);
  for (size_t i = 0; i < m; ++i) divided[i] = f.reduce(points[i].second);
  for (size_t level = 1; level < m; ++level)
    for (size_t i = m - 1; i >= level; --i)
      divided[i] = f.div(f.sub(divided[i], divided[i - 1]),
                         f.sub(xs[i], xs[i - level]));

  std::vector<Fe> coeffs(m, 0);
  std::vector<Fe> basis(m, 0);  // product (x - x_0)...(x - x_{k-1})
  basis[0] = 1;
  size_t basis_len = 1;
  for (size_t k = 0; k < m; ++k) {
    for (size_t i = 0; i < basis_len; ++i)
      coeffs[i] = f.add(coeffs[i], f.mul(divided[k], basis[i]));
    if (k + 1 < m) {
      // basis *= (x - x_k)
      for (size_t i = basis_len; i-- > 0;) {
        Fe v = basis[i];
        basis[i + 1] = f.add(basis[i + 1], v);
        basis[i] = f.mul(v, f.neg(xs[k]));
      }
      ++basis_len;
    }
  }
  Poly p{std::move(coeffs)};
  for (size_t i = m; i < points.size(); ++i)
    if (p.eval(f, points[i].first) != f.reduce(points[i].second))
      throw std::invalid_argument("interpolate: inconsistent extra point");
  return p;
}

namespace {

// Gaussian elimination; returns one solution of A x = b if the system is
// consistent (free variables set to zero).
std::optional<std::vector<Fe>> solve(const Field& f,
                                     std::vector<std::vector<Fe>> a,
                                     std::vector<Fe> b) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_of_col(cols, -1);
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t sel = row;
    while (sel < rows && a[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[row]);
    std::swap(b[sel], b[row]);
    Fe ipiv = f.inv(a[row][col]);
    for (size_t j = col; j < cols; ++j) a[row][j] = f.mul(a[row][j], ipiv);
    b[row] = f.mul(b[row], ipiv);
    for (size_t i = 0; i < rows; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Fe factor = a[i][col];
      for (size_t j = col; j < cols; ++j)
        a[i][j] = f.sub(a[i][j], f.mul(factor, a[row][j]));
      b[i] = f.sub(b[i], f.mul(factor, b[row]));
    }
    pivot_of_col[col] = static_cast<int>(row);
    ++row;
  }
  for (size_t i = row; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Fe> x(cols, 0);
  for (size_t col = 0; col < cols; ++col)
    if (pivot_of_col[col] >= 0) x[col] = b[static_cast<size_t>(pivot_of_col[col])];
  return x;
}

}  // namespace

std::optional<Poly> rs_decode(const Field& f, int d, int r,
                              const std::vector<std::pair<Fe, Fe>>& points) {
  if (d < 0 || r < 0) throw std::invalid_argument("rs_decode: bad degree");
  {
    std::vector<Fe> xs;
    xs.reserve(points.size());
    for (auto& [x, y] : points) xs.push_back(x);
    check_distinct(f, xs);
  }
  int m = static_cast<int>(points.size());
  if (m < d + 2 * r + 1) return std::nullopt;

  auto verify = [&](const Poly& p) -> bool {
    int bad = 0;
    for (auto& [x, y] : points)
      if (p.eval(f, x) != f.reduce(y)) ++bad;
    return bad <= r;
  };

  if (r == 0) {
    std::vector<std::pair<Fe, Fe>> head(points.begin(),
                                        points.begin() + (d + 1));
    try {
      Poly p = interpolate(f, head, d);
      if (verify(p)) return p;
    } catch (const std::invalid_argument&) {
    }
    return std::nullopt;
  }

  // Berlekamp-Welch: find E of degree exactly r (monic) and Q of degree
  // <= d+r with Q(x_i) = y_i * E(x_i) for all i, then candidate = Q / E.
  // Unknowns: e_0..e_{r-1}, q_0..q_{d+r}.
  int ecols = r;
  int qcols = d + r + 1;
  std::vector<std::vector<Fe>> a(static_cast<size_t>(m),
                                 std::vector<Fe>(static_cast<size_t>(ecols + qcols), 0));
  std::vector<Fe> rhs(static_cast<size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    Fe x = f.reduce(points[static_cast<size_t>(i)].first);
    Fe y = f.reduce(points[static_cast<size_t>(i)].second);
    Fe xp = 1;
    for (int j = 0; j < ecols; ++j) {
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] = f.mul(y, xp);
      xp = f.mul(xp, x);
    }
    // monic x^r term moves to the right-hand side
    rhs[static_cast<size_t>(i)] = f.neg(f.mul(y, xp));
    xp = 1;
    for (int j = 0; j < qcols; ++j) {
      a[static_cast<size_t>(i)][static_cast<size_t>(ecols + j)] = f.neg(xp);
      xp = f.mul(xp, x);
    }
  }
  auto sol = solve(f, std::move(a), std::move(rhs));
  if (!sol) return std::nullopt;

  std::vector<Fe> e(sol->begin(), sol->begin() + ecols);
  e.push_back(1);  // monic
  std::vector<Fe> q(sol->begin() + ecols, sol->end());

  // Long division q / e; remainder must vanish.
  std::vector<Fe> quotient(static_cast<size_t>(d) + 1, 0);
  std::vector<Fe> rem = q;
  for (int k = d; k >= 0; --k) {
    Fe lead = rem[static_cast<size_t>(k + r)];
    quotient[static_cast<size_t>(k)] = lead;  // e is monic
    if (lead != 0)
      for (int j = 0; j <= r; ++j)
        rem[static_cast<size_t>(k + j)] =
            f.sub(rem[static_cast<size_t>(k + j)], f.mul(lead, e[static_cast<size_t>(j)]));
  }
  for (Fe c : rem)
    if (c != 0) return std::nullopt;
  Poly p{std::move(quotient)};
  if (!verify(p)) return std::nullopt;
  return p;
}

}  // namespace bobmpc
