#include "doctest.h"

#include "bobmpc/bivar.hpp"
#include "bobmpc/poly.hpp"
#include "support/oracles.hpp"

using namespace bobmpc;

TEST_CASE("field arithmetic basics") {
  Field f(17);
  CHECK(f.add(9, 12) == 4);
  CHECK(f.sub(3, 9) == 11);
  CHECK(f.mul(5, 7) == 1);
  CHECK(f.inv(5) == 7);
  CHECK(f.pow(3, 16) == 1);
  Field big(Field::kDefaultPrime);
  Fe x = 123456789012345ULL;
  CHECK(big.mul(x, big.inv(x)) == 1);
  CHECK(is_prime_u64(Field::kDefaultPrime));
  CHECK(is_prime_u64(101));
  CHECK(!is_prime_u64(1ULL << 61));
}

TEST_CASE("interpolate constant and identity") {
  Field f(101);
  Poly c = interpolate(f, {{1, 5}, {2, 5}}, 1);
  CHECK(c.eval(f, 77) == 5);
  Poly id = interpolate(f, {{1, 1}, {2, 2}, {3, 3}}, 2);
  CHECK(id.coeff(0) == 0);
  CHECK(id.coeff(1) == 1);
  CHECK(id.coeff(2) == 0);
}

TEST_CASE("interpolate round trip on random cubics") {
  Field f(101);
  Rng rng(7);
  for (int it = 0; it < 50; ++it) {
    Poly q = Poly::zero(3);
    for (auto& c : q.coeffs()) c = rng.next_fe(f);
    std::vector<std::pair<Fe, Fe>> pts;
    for (Fe x = 1; x <= 4; ++x) pts.emplace_back(x, q.eval(f, x));
    Poly back = interpolate(f, pts, 3);
    CHECK(back.equals(f, q));
  }
}

TEST_CASE("interpolate rejects duplicates and inconsistent extras") {
  Field f(101);
  CHECK_THROWS(interpolate(f, {{1, 1}, {1, 2}}, 1));
  CHECK_THROWS(interpolate(f, {{1, 1}, {2, 2}, {3, 4}}, 1));
  CHECK_NOTHROW(interpolate(f, {{1, 1}, {2, 2}, {3, 3}}, 1));
}

TEST_CASE("lagrange point coefficients") {
  Field f(17);
  // target inside the set: indicator vector
  auto ind = lagrange_point_coeffs(f, {2, 5, 9}, 5);
  CHECK(ind == std::vector<Fe>{0, 1, 0});
  // xs={1,2}, target 3: hand-solved (-1, 2)
  auto lam = lagrange_point_coeffs(f, {1, 2}, 3);
  CHECK(lam == std::vector<Fe>{16, 2});
  // coefficients always sum to 1 (constants preserved)
  Rng rng(3);
  for (int it = 0; it < 20; ++it) {
    std::vector<Fe> xs{1, 4, 7, 11};
    Fe target = rng.next_fe(f);
    bool dup = false;
    for (Fe x : xs) dup |= (target == x);
    if (dup) continue;
    auto l = lagrange_point_coeffs(f, xs, target);
    Fe sum = 0;
    for (Fe v : l) sum = f.add(sum, v);
    CHECK(sum == 1);
  }
}

TEST_CASE("rs_decode exact and bounded error") {
  Field f(17);
  // error-free, d=1 r=0 on y=x
  auto p = rs_decode(f, 1, 0, {{1, 1}, {2, 2}});
  REQUIRE(p.has_value());
  CHECK(p->eval(f, 5) == 5);
  // d=1, r=1, y=2x+1 with one corruption; brute force agrees
  std::vector<std::pair<Fe, Fe>> pts{{1, 3}, {2, 5}, {3, 7}, {4, 9}};
  pts[2].second = 11;  // corrupt one
  auto got = rs_decode(f, 1, 1, pts);
  auto want = oracle::rs_decode_exhaustive(f, 1, 1, pts);
  REQUIRE(got.has_value());
  REQUIRE(want.has_value());
  CHECK(got->equals(f, *want));
  CHECK(got->coeff(0) == 1);
  CHECK(got->coeff(1) == 2);
  // not enough points: 3 < d+2r+1 = 4
  CHECK(!rs_decode(f, 1, 1, {{1, 3}, {2, 5}, {3, 7}}).has_value());
}

TEST_CASE("rs_decode matches the exhaustive decoder on fuzzed cases") {
  Field f(17);
  Rng rng(42);
  for (int it = 0; it < 400; ++it) {
    int d = static_cast<int>(rng.next_below(3));
    int r = static_cast<int>(rng.next_below(3));
    int m = d + 2 * r + 1 + static_cast<int>(rng.next_below(3));
    if (m > 17) continue;
    Poly q = Poly::zero(d);
    for (auto& c : q.coeffs()) c = rng.next_fe(f);
    std::vector<std::pair<Fe, Fe>> pts;
    for (int i = 0; i < m; ++i)
      pts.emplace_back(static_cast<Fe>(i + 1), q.eval(f, static_cast<Fe>(i + 1)));
    // corrupt up to r+1 of them (sometimes too many on purpose)
    int errs = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(r) + 2));
    for (int e = 0; e < errs; ++e) {
      size_t idx = rng.next_below(pts.size());
      pts[idx].second = rng.next_fe(f);
    }
    auto got = rs_decode(f, d, r, pts);
    auto want = oracle::rs_decode_exhaustive(f, d, r, pts);
    CHECK(got.has_value() == want.has_value());
    if (got && want) CHECK(got->equals(f, *want));
  }
}

TEST_CASE("rs_decode corrects planted errors whenever count permits") {
  Field f(101);
  Rng rng(5);
  for (int it = 0; it < 200; ++it) {
    int d = static_cast<int>(rng.next_below(4));
    int r = static_cast<int>(rng.next_below(3));
    int m = d + 2 * r + 1;
    Poly q = Poly::zero(d);
    for (auto& c : q.coeffs()) c = rng.next_fe(f);
    std::vector<std::pair<Fe, Fe>> pts;
    for (int i = 0; i < m; ++i)
      pts.emplace_back(static_cast<Fe>(i + 1), q.eval(f, static_cast<Fe>(i + 1)));
    // corrupt exactly r distinct positions with wrong values
    for (int e = 0; e < r; ++e) {
      auto& [x, y] = pts[static_cast<size_t>(e)];
      Fe bad = y;
      while (bad == y) bad = rng.next_fe(f);
      y = bad;
    }
    auto got = rs_decode(f, d, r, pts);
    REQUIRE(got.has_value());
    CHECK(got->equals(f, q));
  }
}

TEST_CASE("bivariate embedding fixes F(0,y) and is symmetric") {
  Field f(17);
  Rng rng(9);
  Poly q = Poly::zero(1);
  q.coeffs() = {0, 0};
  SymBivar zero_f = SymBivar::embed_random(f, q, 1, rng);
  CHECK(zero_f.eval(f, 0, 0) == 0);
  for (Fe a = 1; a <= 5; ++a) CHECK(zero_f.eval(f, 0, a) == 0);

  Poly q2{std::vector<Fe>{3, 11}};
  for (int it = 0; it < 10; ++it) {
    SymBivar F = SymBivar::embed_random(f, q2, 1, rng);
    for (Fe y = 0; y < 17; ++y) CHECK(F.eval(f, 0, y) == q2.eval(f, y));
    for (Fe x = 0; x < 6; ++x)
      for (Fe y = 0; y < 6; ++y) CHECK(F.eval(f, x, y) == F.eval(f, y, x));
  }
}

TEST_CASE("sampled embeddings fall inside the enumerated completion set") {
  Field f(17);
  Poly q{std::vector<Fe>{4, 9}};
  auto all = oracle::enumerate_completions(f, q, 1);
  CHECK(all.size() == 17);  // one free coefficient at t=1
  Rng rng(12);
  for (int it = 0; it < 20; ++it) {
    SymBivar F = SymBivar::embed_random(f, q, 1, rng);
    bool found = false;
    for (const auto& cand : all) {
      bool same = true;
      for (int i = 0; i <= 1 && same; ++i)
        for (int j = 0; j <= 1 && same; ++j) same = cand.at(i, j) == F.at(i, j);
      found |= same;
    }
    CHECK(found);
  }
}

TEST_CASE("row polynomials are pairwise consistent and recover F") {
  Field f(101);
  Rng rng(31);
  EvalPoints pts = EvalPoints::make(f, 7, 3);
  Poly q = Poly::zero(2);
  for (auto& c : q.coeffs()) c = rng.next_fe(f);
  SymBivar F = SymBivar::embed_random(f, q, 2, rng);
  std::vector<Poly> rows;
  for (int i = 0; i < 7; ++i) rows.push_back(F.row_at(f, pts.alpha(i)));
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      CHECK(rows[static_cast<size_t>(i)].eval(f, pts.alpha(j)) ==
            rows[static_cast<size_t>(j)].eval(f, pts.alpha(i)));
  // t+1 rows pin every other row's points
  for (int j = 0; j < 7; ++j) {
    std::vector<std::pair<Fe, Fe>> col;
    for (int i = 0; i < 3; ++i)
      col.emplace_back(pts.alpha(i), rows[static_cast<size_t>(i)].eval(f, pts.alpha(j)));
    Poly rowj = interpolate(f, col, 2);
    CHECK(rowj.equals(f, rows[static_cast<size_t>(j)]));
  }
  // all-zero F has zero rows
  SymBivar z(2);
  Poly zr = z.row_at(f, pts.alpha(4));
  for (int i = 0; i <= 2; ++i) CHECK(zr.coeff(i) == 0);
}

TEST_CASE("a single observed row has an identical distribution for any secret") {
  // t=1, p=17, n=5, one corrupted party: enumerate all symmetric
  // completions for two secrets and compare the multisets of rows seen.
  Field f(17);
  EvalPoints pts = EvalPoints::make(f, 5, 2);
  int corrupt = 2;
  auto rows_multiset = [&](Fe secret) {
    std::vector<std::pair<Fe, Fe>> rows;  // (coeff0, coeff1) of the row
    for (Fe q1 = 0; q1 < 17; ++q1) {
      Poly q{std::vector<Fe>{secret, q1}};
      for (const auto& F : oracle::enumerate_completions(f, q, 1)) {
        Poly row = F.row_at(f, pts.alpha(corrupt));
        rows.emplace_back(row.coeff(0), row.coeff(1));
      }
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  CHECK(rows_multiset(3) == rows_multiset(14));
}
