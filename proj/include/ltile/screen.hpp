#pragma once

// Non-existence screening for lattice tilings by B(n, 2, m, m-1).
//
// Every bound is evaluated on certified intervals (exact rationals with
// outward-rounded sqrt/log2). A verdict "excluded" is only issued when the
// contradiction is strict on the enclosures, and it is re-checked at half the
// precision (all rounding slacks doubled) before being accepted.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ltile/ball.hpp"
#include "ltile/interval.hpp"
#include "ltile/numtheory.hpp"
#include "ltile/structural.hpp"

namespace ltile::screen {

constexpr int kPrecision = Interval::kDefaultPrecision;

struct ScreenParams {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  BigInt ball_size;
  BigInt q_odd;    // odd part of |G|
  BigInt q_prime;  // largest divisor of |G| coprime to 2m
  int s = 0;       // floor(log2 m)
  int r = 0;       // floor(log2 s)

  static ScreenParams make(std::uint64_t m, std::uint64_t n) {
    if (m < 1 || n < 1) throw std::invalid_argument("ScreenParams: need m, n >= 1");
    ScreenParams p;
    p.m = m;
    p.n = n;
    p.ball_size = family_ball_size(m, n);
    p.q_odd = numtheory::odd_part(p.ball_size);
    p.q_prime = numtheory::coprime_part(p.ball_size, BigInt(2 * m));
    p.s = numtheory::floor_log2(m);
    p.r = p.s >= 1 ? numtheory::floor_log2(static_cast<std::uint64_t>(p.s)) : 0;
    return p;
  }
};

// ---------------------------------------------------------------- bounds on m_2

// m_2(G) >= n/2 + 1, valid for n >= 4m.
inline BigRational lb1(std::uint64_t m, std::uint64_t n) {
  if (n < 4 * m) throw std::domain_error("lb1: requires n >= 4m");
  return BigRational(BigInt(n), 2) + 1;
}

enum class M2mCase { positive, zero };

// Lower bound on (2m-3) m_2(G); needs n >= m + 4.
inline Interval lb2(std::uint64_t m, std::uint64_t n, const BigInt& q_prime, M2mCase c, int bits = kPrecision) {
  if (n < m + 4) throw std::domain_error("lb2: requires n >= m + 4");
  const BigRational M(static_cast<long long>(m)), N(static_cast<long long>(n));
  if (c == M2mCase::zero) return Interval((2 * M - BigRational(5, 2)) * N * N - (4 * M * M - BigRational(5, 2)) * N);
  if (q_prime < 1) throw std::invalid_argument("lb2: q' must be >= 1");
  // (2m-2)n^2 - (4m^2-3)n - (n/sqrt q' + 1)^2 - (2mn - 3n - 2m^2 - 2m + 6)(n/sqrt q' + 1)
  const Interval y = (divide(Interval(N), sqrt_enclosure(BigRational(q_prime), bits), bits) + Interval(1)).rounded(bits);
  const BigRational lin = 2 * M * N - 3 * N - 2 * M * M - 2 * M + 6;
  return (Interval((2 * M - 2) * N * N - (4 * M * M - 3) * N) - y * y - Interval(lin) * y).rounded(bits);
}

// Upper bound on log2(m_2(G) + 1). Weak for s = 1; still valid.
inline Interval ub1(std::uint64_t m, std::uint64_t n, int bits = kPrecision) {
  if (m < 2) throw std::domain_error("ub1: requires m >= 2");
  if (n < 1) throw std::domain_error("ub1: requires n >= 1");
  const int s = numtheory::floor_log2(m);
  const int r = numtheory::floor_log2(static_cast<std::uint64_t>(s));
  const BigRational tail = BigRational(r) + BigRational(s - (1 << (r + 1)), s + 1) + 5;
  return (Interval(BigRational(2, s + 1)) * log2_enclosure(BigRational(static_cast<long long>(n)), bits) + Interval(tail))
      .rounded(bits);
}

// (m-1)^2 (n^2-n)/2 + (m-1) n + 1
inline BigInt ub2_radicand_factor(std::uint64_t m, std::uint64_t n) {
  const BigInt k = BigInt(m) - 1, N = n;
  return k * k * (N * N - N) / 2 + k * N + 1;
}

// m_2(G) <= |G| / sqrt(q W) - 1 with q the odd part of |G|.
inline Interval ub2(const BigInt& ball_size, std::uint64_t m, std::uint64_t n, const BigInt& q_odd, int bits = kPrecision) {
  if (q_odd < 1 || q_odd % 2 == 0) throw std::invalid_argument("ub2: q must be odd and positive");
  if (ball_size % q_odd != 0) throw std::invalid_argument("ub2: q must divide |G|");
  BigInt rest = ball_size / q_odd;
  while (rest % 2 == 0) rest /= 2;
  if (rest != 1) throw std::invalid_argument("ub2: |G| / q must be a power of two");
  const BigRational rad(q_odd * ub2_radicand_factor(m, n));
  return (divide(Interval(BigRational(ball_size)), sqrt_enclosure(rad, bits), bits) - Interval(1)).rounded(bits);
}

// ---------------------------------------------------------------- weighted prefix maximum

inline std::int64_t techlem_max(int s) {
  if (s < 2) throw std::domain_error("techlem: requires s >= 2");
  const int r = numtheory::floor_log2(static_cast<std::uint64_t>(s));
  return 4LL * s + static_cast<std::int64_t>(r) * (s + 1) - (1LL << (r + 1)) + 2;
}

// max sum_{i} (s+1-i) x_i over x >= 0 with sum_{i<=j} i x_i <= 2j + 2 for all j.
inline std::int64_t techlem_bruteforce(int s, std::vector<int>* argmax = nullptr) {
  if (s < 2) throw std::domain_error("techlem: requires s >= 2");
  std::int64_t best = -1;
  std::vector<int> x(static_cast<std::size_t>(s) + 1, 0);
  auto rec = [&](auto&& self, int i, std::int64_t prefix, std::int64_t value) -> void {
    if (i > s) {
      if (value > best) {
        best = value;
        if (argmax) argmax->assign(x.begin() + 1, x.end());
      }
      return;
    }
    for (int xi = 0; prefix + static_cast<std::int64_t>(i) * xi <= 2 * i + 2; ++xi) {
      x[static_cast<std::size_t>(i)] = xi;
      self(self, i + 1, prefix + static_cast<std::int64_t>(i) * xi, value + static_cast<std::int64_t>(s + 1 - i) * xi);
    }
    x[static_cast<std::size_t>(i)] = 0;
  };
  rec(rec, 1, 0, 0);
  return best;
}

// ---------------------------------------------------------------- Diophantine pieces

// All (x, k) with 2^k - 7 = x^2, x >= 0, 1 <= k <= limit.
inline std::vector<std::pair<BigInt, int>> nagell_solutions(int limit) {
  if (limit < 1) throw std::domain_error("nagell_solutions: limit must be >= 1");
  std::vector<std::pair<BigInt, int>> out;
  for (int k = 3; k <= limit; ++k) {
    const BigInt v = (BigInt(1) << k) - 7;
    const BigInt x = boost::multiprecision::sqrt(v);
    if (x * x == v) out.emplace_back(x, k);
  }
  return out;
}

// All n >= 1 with (5n-1)(5n-2) = 2^a 3^b for some a, b >= 0 and n <= n_max,
// by scanning every product 2^a 3^b up to (5 n_max - 1)(5 n_max - 2).
inline std::vector<std::uint64_t> two_three_scan(std::uint64_t n_max) {
  const BigInt top = (BigInt(5) * n_max - 1) * (BigInt(5) * n_max - 2);
  std::vector<std::uint64_t> out;
  for (BigInt p2 = 1; p2 <= top; p2 *= 2) {
    for (BigInt v = p2; v <= top; v *= 3) {
      // 25 n^2 - 15 n + 2 = v  =>  n = (15 + sqrt(100 v + 25)) / 50
      const BigInt disc = 100 * v + 25;
      if (disc < 0) continue;
      const BigInt root = boost::multiprecision::sqrt(disc);
      if (root * root != disc || (15 + root) % 50 != 0) continue;
      const BigInt n = (15 + root) / 50;
      if (n >= 1 && n <= n_max) out.push_back(static_cast<std::uint64_t>(n));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every prime factor of N divides 2m; gcd stripping only.
inline bool euclid_screen(const BigInt& ball_size, std::uint64_t m) {
  if (ball_size < 1) throw std::domain_error("euclid_screen: N must be >= 1");
  return numtheory::coprime_part(ball_size, BigInt(2 * m)) == 1;
}

inline bool euclid_screen(std::uint64_t ball_size, std::uint64_t m) {
  if (ball_size < 1) throw std::domain_error("euclid_screen: N must be >= 1");
  return numtheory::coprime_part(ball_size, 2 * m) == 1;
}

// ---------------------------------------------------------------- dimension ceilings and divisibility conditions

// Largest n allowed for n >= 4m, or nullopt when no n >= 4m is possible.
inline std::optional<std::uint64_t> prop1_bound(std::uint64_t m) {
  if (m < 4) throw std::domain_error("prop1_bound: requires m >= 4");
  const int s = numtheory::floor_log2(m);
  const int r = numtheory::floor_log2(static_cast<std::uint64_t>(s));
  // log2 n <= E, an exact rational a/b
  const BigRational E = BigRational(s + 1, s - 1) * (BigRational(r) + BigRational(s - (1 << (r + 1)), s + 1) + 6);
  if (BigRational(s + 2) > E) return std::nullopt;
  const BigInt a = boost::multiprecision::numerator(E);
  const auto b = static_cast<unsigned>(boost::multiprecision::denominator(E));
  const BigInt two_a = BigInt(1) << static_cast<unsigned>(a);
  // largest N with N^b <= 2^a
  BigInt lo = 1, hi = BigInt(1) << (static_cast<unsigned>(a) / b + 1);
  while (lo < hi) {
    const BigInt mid = (lo + hi + 1) / 2;
    if (boost::multiprecision::pow(mid, b) <= two_a)
      lo = mid;
    else
      hi = mid - 1;
  }
  return static_cast<std::uint64_t>(lo);
}

inline bool prop2_c1(std::uint64_t m, std::uint64_t n) {
  // n <= (2 + 2 sqrt 2) m + 2  <=>  n - 2m - 2 <= 0  or  (n - 2m - 2)^2 <= 8 m^2
  const __int128 d = static_cast<__int128>(n) - 2 * static_cast<__int128>(m) - 2;
  return d <= 0 || d * d <= 8 * static_cast<__int128>(m) * m;
}

inline Interval prop2_c3_threshold(std::uint64_t m, int bits = kPrecision) {
  const Interval k = (Interval(BigRational(5, 2)) + Interval(BigRational(1, 2)) * sqrt_enclosure(3, bits) +
                      sqrt_enclosure(2, bits) + sqrt_enclosure(6, bits));
  return (k * Interval(static_cast<long long>(m)) + Interval(4)).rounded(bits);
}

// floor of the condition (3) threshold, refined until both ends of the
// enclosure agree (the threshold is irrational, so this terminates).
inline std::uint64_t prop2_c3_floor(std::uint64_t m) {
  for (int bits = kPrecision;; bits *= 2) {
    const auto T = prop2_c3_threshold(m, bits);
    const BigInt lo = ::ltile::detail::floor_rational(T.lo());
    if (lo == ::ltile::detail::floor_rational(T.hi())) return static_cast<std::uint64_t>(lo);
  }
}

inline bool prop2_c3_inequality(std::uint64_t m, std::uint64_t n) { return n <= prop2_c3_floor(m); }

struct Prop2 {
  bool c1 = false;
  bool divisible = false;  // 4m | n^2 - 3n + 2
  bool euclid = false;     // every prime of |G| divides 2m
  bool c2 = false;
  bool c3 = false;
};

inline Prop2 prop2_conditions(std::uint64_t m, std::uint64_t n, std::optional<std::uint64_t> c3_floor = std::nullopt) {
  if (n < 3 || m < 2) throw std::domain_error("prop2_conditions: requires n >= 3 and m >= 2");
  Prop2 p;
  p.c1 = prop2_c1(m, n);
  p.divisible = numtheory::divisibility_screen(m, n);
  if (p.divisible) {
    const BigInt G = family_ball_size(m, n);
    p.euclid = G <= std::numeric_limits<std::uint64_t>::max() ? euclid_screen(static_cast<std::uint64_t>(G), m)
                                                               : euclid_screen(G, m);
    p.c2 = p.euclid;
    p.c3 = n <= (c3_floor ? *c3_floor : prop2_c3_floor(m));
  }
  return p;
}

// ---------------------------------------------------------------- verdicts

enum class ScreenStatus { excluded, survivor_needs_search, survivor_condition2 };

inline const char* to_string(ScreenStatus s) {
  switch (s) {
    case ScreenStatus::excluded: return "excluded";
    case ScreenStatus::survivor_needs_search: return "survivor-needs-search";
    case ScreenStatus::survivor_condition2: return "survivor-condition2";
  }
  return "?";
}

// One side-by-side comparison. `contradicted` means the inequality that a
// tiling would force is certainly violated on the enclosures.
struct Evidence {
  std::string name;      // "sandwich", "mid", "mid_2", ...
  std::string relation;  // relation a tiling requires, e.g. "lhs > rhs"
  Interval lhs;
  Interval rhs;
  bool contradicted = false;
  bool stable = false;   // contradicted again with rounding slacks doubled
};

struct ScreenVerdict {
  ScreenStatus status = ScreenStatus::survivor_needs_search;
  std::string reason;  // m2-*/m3-* family cases, prop1, prop2-1/2/3, prop2-none, exact-mid, euclid-screen
  std::vector<Evidence> evidence;
  std::vector<std::string> notes;
};

namespace detail {

struct CaseSides {
  Interval sandwich_lhs, sandwich_rhs;  // (2m-3) ub2  vs  lb2 right-hand side
  Interval mid_lhs, mid_rhs;
  Interval mid2_lhs, mid2_rhs;
};

inline CaseSides case_sides(const ScreenParams& p, int bits) {
  const BigRational M(static_cast<long long>(p.m)), N(static_cast<long long>(p.n));
  CaseSides c;
  const Interval u = ub2(p.ball_size, p.m, p.n, p.q_odd, bits);
  c.sandwich_lhs = (Interval(2 * M - 3) * u).rounded(bits);
  c.sandwich_rhs = lb2(p.m, p.n, p.q_prime, M2mCase::positive, bits);

  const Interval rq = sqrt_enclosure(BigRational(p.q_prime), bits);
  const Interval inv_rq = divide(Interval(1), rq, bits);
  const Interval inv_q = Interval(BigRational(1) / BigRational(p.q_prime));
  const Interval lead = (Interval(2 * M - 2) - inv_q - Interval(2 * M - 3) * inv_rq).rounded(bits);

  c.mid_lhs = (Interval(2 * M - 3) * u - Interval(2 * M * M + 2 * M - 7)).rounded(bits);
  const Interval mid_lin =
      Interval(4 * M * M - 3 + 2 * M - 3) + Interval(2) * inv_rq - Interval(2 * M * M + 2 * M - 6) * inv_rq;
  c.mid_rhs = (lead * Interval(N * N) - mid_lin * Interval(N)).rounded(bits);

  const Interval rq_odd = sqrt_enclosure(BigRational(p.q_odd), bits);
  c.mid2_lhs = (divide(sqrt_enclosure(2, bits), rq_odd, bits) * Interval((2 * M - 1) * (2 * M - 1) * N)).rounded(bits);
  const Interval mid2_lin = Interval(4 * M * M - 3 + 2 * M - 3) - Interval(2 * M * M + 2 * M - 8) * inv_rq;
  c.mid2_rhs = (lead * Interval(N * N) - mid2_lin * Interval(N)).rounded(bits);
  return c;
}

}  // namespace detail

// The m_{2m}(G) > 0 branch: sandwich lb2 (positive case) against ub2, plus the
// two rearranged forms. Excluded iff the sandwich contradiction is certified
// and stable.
inline ScreenVerdict exact_case_contradiction(std::uint64_t m, std::uint64_t n) {
  if (m < 2) throw std::domain_error("exact_case_contradiction: requires m >= 2");
  if (!numtheory::divisibility_screen(m, n))
    throw std::domain_error("exact_case_contradiction: requires 4m | n^2 - 3n + 2");
  ScreenVerdict v;
  if (n < m + 4) {
    v.status = ScreenStatus::survivor_needs_search;
    v.reason = "exact-mid";
    v.notes.push_back("n < m + 4: the m_2 lower bound does not apply at this use site");
    return v;
  }
  const auto p = ScreenParams::make(m, n);
  const auto a = detail::case_sides(p, kPrecision);
  const auto b = detail::case_sides(p, kPrecision - 1);
  // a tiling forces sandwich_lhs > sandwich_rhs, mid_lhs > mid_rhs, mid2_lhs >= mid2_rhs
  auto le = [](const Interval& x, const Interval& y) { return certainly_less_equal(x, y); };
  auto lt = [](const Interval& x, const Interval& y) { return certainly_less(x, y); };
  v.evidence.push_back({"sandwich", "(2m-3) ub2 > lb2", a.sandwich_lhs, a.sandwich_rhs,
                        le(a.sandwich_lhs, a.sandwich_rhs), le(b.sandwich_lhs, b.sandwich_rhs)});
  v.evidence.push_back({"mid", "lhs > rhs", a.mid_lhs, a.mid_rhs, le(a.mid_lhs, a.mid_rhs), le(b.mid_lhs, b.mid_rhs)});
  v.evidence.push_back(
      {"mid_2", "lhs >= rhs", a.mid2_lhs, a.mid2_rhs, lt(a.mid2_lhs, a.mid2_rhs), lt(b.mid2_lhs, b.mid2_rhs)});
  const auto& sw = v.evidence[0];
  if (sw.contradicted && sw.stable) {
    v.status = ScreenStatus::excluded;
    v.reason = "exact-mid";
  } else {
    v.status = ScreenStatus::survivor_needs_search;
    v.reason = "exact-mid";
  }
  if (sw.contradicted != v.evidence[2].contradicted)
    v.notes.push_back(std::string("mid_2 ") + (v.evidence[2].contradicted ? "contradicts" : "does not contradict") +
                      " while the sandwich " + (sw.contradicted ? "does" : "does not"));
  return v;
}

// m = 2: search band, |G| a power of two (Nagell), exact contradiction.
inline ScreenVerdict case_m2(std::uint64_t n) {
  if (n < 3) throw std::domain_error("case_m2: requires n >= 3");
  const auto c = prop2_conditions(2, n);
  ScreenVerdict v;
  if (c.c1) {
    v.status = ScreenStatus::survivor_needs_search;
    v.reason = "m2-band";
    return v;
  }
  if (c.c2) {
    // (6n-1)^2 = 2^(alpha+3) - 7 with |G| = 2^alpha
    const BigInt G = family_ball_size(2, n);
    const auto alpha = static_cast<int>(boost::multiprecision::msb(G));
    const BigInt x = BigInt(6) * n - 1;
    if (x * x != (BigInt(1) << (alpha + 3)) - 7) throw std::logic_error("case_m2: power-of-two reduction identity failed");
    bool hit = false;
    for (const auto& [sx, k] : nagell_solutions(alpha + 3)) hit = hit || sx == x;
    v.status = hit ? ScreenStatus::survivor_condition2 : ScreenStatus::excluded;
    v.reason = "m2-power-of-two";
    v.notes.push_back("6n-1 = " + x.str() + (hit ? " is" : " is not") + " a Nagell solution");
    return v;
  }
  if (c.c3) {
    v = exact_case_contradiction(2, n);
    v.reason = "m2-exact";
    return v;
  }
  v.status = ScreenStatus::excluded;
  v.reason = "prop2-none";
  return v;
}

// m = 3: search band, (5n-1)(5n-2) = 2^a 3^b, exact contradiction.
inline ScreenVerdict case_m3(std::uint64_t n) {
  if (n < 3) throw std::domain_error("case_m3: requires n >= 3");
  const auto c = prop2_conditions(3, n);
  ScreenVerdict v;
  if (c.c1) {
    v.status = ScreenStatus::survivor_needs_search;
    v.reason = "m3-band";
    return v;
  }
  if (c.c2) {
    const auto sols = two_three_scan(n);
    const bool hit = std::find(sols.begin(), sols.end(), n) != sols.end();
    v.status = hit ? ScreenStatus::survivor_condition2 : ScreenStatus::excluded;
    v.reason = "m3-two-three";
    return v;
  }
  if (c.c3) {
    v = exact_case_contradiction(3, n);
    v.reason = "m3-exact";
    return v;
  }
  v.status = ScreenStatus::excluded;
  v.reason = "prop2-none";
  return v;
}

// Generic m >= 4 per-n classification below the dimension ceiling.
inline ScreenVerdict classify(std::uint64_t m, std::uint64_t n, std::optional<std::uint64_t> c3_floor = std::nullopt) {
  if (m == 2) return case_m2(n);
  if (m == 3) return case_m3(n);
  const auto c = prop2_conditions(m, n, c3_floor);
  ScreenVerdict v;
  if (c.c1) {
    v.status = ScreenStatus::survivor_needs_search;
    v.reason = "prop2-1";
  } else if (c.c2) {
    v.status = ScreenStatus::survivor_condition2;
    v.reason = "prop2-2";
  } else if (c.c3) {
    v = exact_case_contradiction(m, n);
    if (v.status != ScreenStatus::excluded) v.reason = "prop2-3";
  } else {
    v.status = ScreenStatus::excluded;
    v.reason = c.divisible ? "euclid-screen" : "prop2-none";
  }
  return v;
}

// ---------------------------------------------------------------- range screening

struct ScreenReport {
  std::uint64_t m = 0;
  std::optional<std::uint64_t> prop1_ceiling;  // m >= 4 only
  std::uint64_t scanned_to = 0;                // every n in [3, scanned_to] classified
  std::vector<std::uint64_t> survivors;
  std::vector<std::uint64_t> condition2;       // survivors through condition (2)
  std::vector<std::uint64_t> needs_search;     // survivors only a search can settle
  std::optional<std::uint64_t> max_survivor;
  BigRational dimension_bound;                  // max survivor must be below this
  bool ok = false;
  std::vector<std::pair<std::uint64_t, ScreenVerdict>> exact_cases;  // verdicts of the m_2m > 0 branch
};

inline BigRational dimension_bound(std::uint64_t m) {
  if (m <= 512) return BigRational(723 * static_cast<long long>(m), 100) + 4;
  return BigRational(4 * static_cast<long long>(m));
}

// n for which nothing but a search or condition (2) can decide; every larger
// n is excluded by the dimension ceiling or the divisibility conditions.
inline std::uint64_t scan_limit(std::uint64_t m) {
  if (m == 2 || m == 3) return prop2_c3_floor(m);
  const auto ceiling = prop1_bound(m);
  const std::uint64_t below = 4 * m - 1;
  return ceiling ? std::max(*ceiling, below) : below;
}

// `searched` lists n already settled as none-exhausted by an exhaustive search.
inline ScreenReport screen_m(std::uint64_t m, const std::vector<std::uint64_t>& searched = {}) {
  if (m < 2) throw std::domain_error("screen: requires m >= 2");
  ScreenReport rep;
  rep.m = m;
  if (m >= 4) rep.prop1_ceiling = prop1_bound(m);
  rep.scanned_to = scan_limit(m);
  rep.dimension_bound = dimension_bound(m);
  const auto c3 = prop2_c3_floor(m);
  for (std::uint64_t n = 3; n <= rep.scanned_to; ++n) {
    // fast path: below the c1 band everything survives as needs-search
    ScreenVerdict v;
    if (m >= 4 && prop2_c1(m, n)) {
      v.status = ScreenStatus::survivor_needs_search;
      v.reason = "prop2-1";
    } else if (m >= 4 && !numtheory::divisibility_screen(m, n)) {
      v.status = ScreenStatus::excluded;
      v.reason = "prop2-none";
    } else {
      v = classify(m, n, c3);
    }
    if (v.status == ScreenStatus::survivor_needs_search &&
        std::find(searched.begin(), searched.end(), n) != searched.end()) {
      v.status = ScreenStatus::excluded;
      v.reason += "+search";
    }
    if (!v.evidence.empty()) rep.exact_cases.emplace_back(n, v);
    if (v.status == ScreenStatus::excluded) continue;
    rep.survivors.push_back(n);
    (v.status == ScreenStatus::survivor_condition2 ? rep.condition2 : rep.needs_search).push_back(n);
  }
  if (!rep.survivors.empty()) rep.max_survivor = rep.survivors.back();
  rep.ok = !rep.max_survivor || BigRational(static_cast<long long>(*rep.max_survivor)) < rep.dimension_bound;
  return rep;
}

// Workers pull m values from a shared counter; reports land in m order.
inline std::vector<ScreenReport> screen_range(std::uint64_t m_lo, std::uint64_t m_hi, unsigned threads = 0) {
  if (m_lo < 2 || m_hi < m_lo) throw std::domain_error("screen_range: requires 2 <= m_lo <= m_hi");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t count = m_hi - m_lo + 1;
  std::vector<ScreenReport> out(count);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < count;) {
      try {
        out[i] = screen_m(m_lo + i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < std::min<std::uint64_t>(threads, count); ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace ltile::screen
