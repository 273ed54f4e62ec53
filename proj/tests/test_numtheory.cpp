#include <gtest/gtest.h>

#include <numeric>

#include "ltile/numtheory.hpp"

using namespace ltile;
using namespace ltile::numtheory;

namespace {

// Trial division; independent of the library's rho-based path.
std::vector<std::pair<std::uint64_t, int>> trial_factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

}  // namespace

TEST(CoprimePart, Examples) {
  EXPECT_EQ(coprime_part(std::uint64_t{352}, 4), 11u);
  EXPECT_EQ(coprime_part(std::uint64_t{512}, 4), 1u);
  EXPECT_EQ(coprime_part(std::uint64_t{45}, 4), 45u);
  EXPECT_EQ(coprime_part(BigInt(352), BigInt(4)), BigInt(11));
}

TEST(CoprimePart, AgreesWithFactorizationOracle) {
  for (std::uint64_t N = 1; N <= 20000; ++N) {
    for (std::uint64_t b : {2u, 4u, 6u, 10u, 12u, 30u}) {
      const auto c = coprime_part(N, b);
      ASSERT_EQ(N % c, 0u);
      ASSERT_EQ(std::gcd(c, b), 1u);
      std::uint64_t expect = 1;
      for (auto [p, e] : trial_factor(N))
        if (b % p != 0) expect *= ipow(p, e);
      ASSERT_EQ(c, expect) << N << " " << b;
    }
  }
}

TEST(OddPart, Examples) {
  EXPECT_EQ(odd_part(std::uint64_t{1432}), 179u);
  EXPECT_EQ(odd_part(std::uint64_t{352}), 11u);
  EXPECT_EQ(odd_part(BigInt(1432)), BigInt(179));
}

TEST(DivisibilityScreen, MatchesDirectArithmetic) {
  EXPECT_TRUE(divisibility_screen(2, 9));
  EXPECT_FALSE(divisibility_screen(2, 12));
  for (std::uint64_t m = 2; m < 40; ++m)
    for (std::uint64_t n = 3; n < 400; ++n) ASSERT_EQ(divisibility_screen(m, n), (n * n - 3 * n + 2) % (4 * m) == 0);
}

TEST(Partitions, SmallCaseAndCounts) {
  EXPECT_EQ(partitions(3), (std::vector<std::vector<int>>{{3}, {2, 1}, {1, 1, 1}}));
  // p(k) via Euler's recurrence for the generating function
  std::vector<std::uint64_t> p(41, 0);
  p[0] = 1;
  for (int k = 1; k <= 40; ++k)
    for (int j = k; j <= 40; ++j) p[j] += p[j - k];
  for (int k = 1; k <= 40; ++k) ASSERT_EQ(partitions(k).size(), p[k]) << k;
  EXPECT_EQ(p[40], 37338u);
}

TEST(Partitions, CanonicalDescendingOrder) {
  const auto ps = partitions(8);
  for (const auto& q : ps) {
    ASSERT_TRUE(std::is_sorted(q.rbegin(), q.rend()));
    ASSERT_EQ(std::accumulate(q.begin(), q.end(), 0), 8);
  }
  ASSERT_TRUE(std::is_sorted(ps.rbegin(), ps.rend()));
}

TEST(Factorize, MatchesTrialDivision) {
  for (std::uint64_t n = 1; n <= 30000; ++n) {
    const auto f = factorize(n);
    const auto t = trial_factor(n);
    ASSERT_EQ(f.size(), t.size()) << n;
    for (std::size_t i = 0; i < f.size(); ++i) {
      ASSERT_EQ(f[i].prime, t[i].first);
      ASSERT_EQ(f[i].exponent, t[i].second);
    }
  }
}

TEST(Factorize, LargeSemiprimes) {
  const std::uint64_t p = 1000000007, q = 998244353;
  const auto f = factorize(p * q);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].prime, q);
  EXPECT_EQ(f[1].prime, p);
  EXPECT_TRUE(is_prime(p));
  EXPECT_FALSE(is_prime(p * q));
  // p q^2 exceeds 64 bits and has no factor below the trial bound
  const auto big = factorize(BigInt(p) * q * q * 6);
  EXPECT_FALSE(big.complete);
  EXPECT_EQ(big.cofactor, BigInt(p) * q * q);
  EXPECT_EQ(big.factors, (std::vector<PrimePower>{{2, 1}, {3, 1}}));
  const auto fits = factorize(BigInt(p) * q * 6 * 1024);
  EXPECT_TRUE(fits.complete);
}

TEST(FloorLog2, Values) {
  EXPECT_EQ(floor_log2(1), 0);
  EXPECT_EQ(floor_log2(2), 1);
  EXPECT_EQ(floor_log2(3), 1);
  EXPECT_EQ(floor_log2(512), 9);
  EXPECT_EQ(floor_log2(1023), 9);
}
