#pragma once

// Integer utilities shared by the group, search and screening layers:
// gcd stripping, odd/coprime parts, the 4m | n^2-3n+2 screen, integer
// partitions and a 64-bit factorizer.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ltile {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace numtheory {

// Largest divisor of n coprime to b, by repeatedly dividing out gcd(n, b).
// No factorization is performed.
inline BigInt coprime_part(BigInt n, const BigInt& b) {
  if (n < 1 || b < 1) throw std::invalid_argument("coprime_part: arguments must be positive");
  BigInt g = boost::multiprecision::gcd(n, b);
  while (g > 1) {
    n /= g;
    g = boost::multiprecision::gcd(n, b);
  }
  return n;
}

inline std::uint64_t coprime_part(std::uint64_t n, std::uint64_t b) {
  if (n < 1 || b < 1) throw std::invalid_argument("coprime_part: arguments must be positive");
  std::uint64_t g = std::gcd(n, b);
  while (g > 1) {
    n /= g;
    g = std::gcd(n, b);
  }
  return n;
}

inline std::uint64_t odd_part(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("odd_part: zero has no odd part");
  while ((n & 1u) == 0) n >>= 1;
  return n;
}

inline BigInt odd_part(BigInt n) {
  if (n < 1) throw std::invalid_argument("odd_part: argument must be positive");
  while ((n & 1) == 0) n >>= 1;
  return n;
}

// 4m | n^2 - 3n + 2, i.e. 4m | (n-1)(n-2). Needed for an element of order 2m.
inline bool divisibility_screen(std::uint64_t m, std::uint64_t n) {
  if (m < 1 || n < 1) throw std::invalid_argument("divisibility_screen: m, n must be positive");
  unsigned __int128 v = static_cast<unsigned __int128>(n - 1) * static_cast<unsigned __int128>(n >= 2 ? n - 2 : 0);
  if (n < 2) v = 0;
  return v % (4 * static_cast<unsigned __int128>(m)) == 0;
}

// All partitions of k, parts in descending order, partitions listed in
// reverse lexicographic order ([k] first, [1,...,1] last).
inline std::vector<std::vector<int>> partitions(int k) {
  if (k < 0) throw std::invalid_argument("partitions: negative argument");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, k, k);
  return out;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_rec(d, primes);
  factor_rec(n / d, primes);
}

}  // namespace detail

struct PrimePower {
  std::uint64_t prime = 0;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// value = prod(p^e) * cofactor. `complete` is false when the cofactor could
// not be split (only possible above 64 bits).
struct FactoredInteger {
  BigInt value;
  std::vector<PrimePower> factors;
  BigInt cofactor = 1;
  bool complete = true;
};

inline std::vector<PrimePower> factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: zero");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  detail::factor_rec(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (std::uint64_t p : primes) {
    if (!out.empty() && out.back().prime == p)
      ++out.back().exponent;
    else
      out.push_back({p, 1});
  }
  return out;
}

// Trial division up to trial_bound, then 64-bit factorization of whatever is
// left if it fits; otherwise the remainder is kept as an unfactored cofactor.
inline FactoredInteger factorize(const BigInt& n, std::uint64_t trial_bound = 1000000) {
  if (n < 1) throw std::invalid_argument("factorize: argument must be positive");
  FactoredInteger out;
  out.value = n;
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    out.factors = factorize(static_cast<std::uint64_t>(n));
    return out;
  }
  BigInt rest = n;
  for (std::uint64_t p = 2; p <= trial_bound && rest > std::numeric_limits<std::uint64_t>::max(); ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e) out.factors.push_back({p, e});
  }
  if (rest <= std::numeric_limits<std::uint64_t>::max()) {
    for (auto pp : factorize(static_cast<std::uint64_t>(rest))) {
      auto it = std::find_if(out.factors.begin(), out.factors.end(),
                             [&](const PrimePower& f) { return f.prime == pp.prime; });
      if (it != out.factors.end())
        it->exponent += pp.exponent;
      else
        out.factors.push_back(pp);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  } else {
    out.cofactor = rest;
    out.complete = false;
  }
  return out;
}

inline std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

inline std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

// floor(log2(x)) for x >= 1.
inline int floor_log2(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("floor_log2: zero");
  return 63 - __builtin_clzll(x);
}

}  // namespace numtheory
}  // namespace ltile
