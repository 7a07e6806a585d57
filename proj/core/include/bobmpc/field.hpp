#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bobmpc {

// A field element is a plain residue; all arithmetic goes through a Field,
// which carries the prime modulus. Simulated worlds are parameterized by
// the prime at runtime (big prime for speed, tiny primes so tests can
// enumerate), so the modulus is a value, not a template parameter.
using Fe = std::uint64_t;

class Field {
 public:
  // Largest prime that keeps a full product inside __uint128_t.
  static constexpr Fe kDefaultPrime = 2305843009213693951ULL;  // 2^61 - 1

  explicit Field(Fe prime) : p_(prime) {
    if (prime < 2) throw std::invalid_argument("field: modulus must be >= 2");
  }

  Fe prime() const { return p_; }

  Fe reduce(Fe a) const { return a % p_; }

  Fe add(Fe a, Fe b) const {
    Fe s = a + b;
    if (s >= p_ || s < a) s -= p_;
    return s;
  }

  Fe sub(Fe a, Fe b) const { return a >= b ? a - b : a + p_ - b; }

  Fe neg(Fe a) const { return a == 0 ? 0 : p_ - a; }

  Fe mul(Fe a, Fe b) const {
    return static_cast<Fe>((static_cast<__uint128_t>(a) * b) % p_);
  }

  Fe pow(Fe a, Fe e) const {
    Fe r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // p is prime, so a^(p-2) inverts.
  Fe inv(Fe a) const {
    if (a == 0) throw std::domain_error("field: division by zero");
    return pow(a, p_ - 2);
  }

  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

 private:
  Fe p_;
};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % d == 0) return n == d;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// The public evaluation points: alphas are the per-party points, betas the
// extra points used when deriving fresh shared values. All distinct and
// nonzero, which needs p > n + #betas.
struct EvalPoints {
  std::vector<Fe> alphas;
  std::vector<Fe> betas;

  static EvalPoints make(const Field& f, int n, int n_betas) {
    if (f.prime() <= static_cast<Fe>(n + n_betas))
      throw std::invalid_argument("eval points: prime too small for n");
    EvalPoints pts;
    pts.alphas.reserve(n);
    for (int i = 0; i < n; ++i) pts.alphas.push_back(static_cast<Fe>(i + 1));
    pts.betas.reserve(n_betas);
    for (int j = 0; j < n_betas; ++j)
      pts.betas.push_back(static_cast<Fe>(n + 1 + j));
    return pts;
  }

  Fe alpha(int i) const { return alphas.at(i); }
  Fe beta(int j) const { return betas.at(j); }
};

}  // namespace bobmpc
