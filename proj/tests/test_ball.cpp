#include <gtest/gtest.h>

#include <set>

#include "ltile/ball.hpp"
#include "oracles.hpp"

using namespace ltile;

using oracle::cube_count;

TEST(BallSize, Examples) {
  EXPECT_EQ(ball_size(ErrorBall(11, 2, 2, 1)), 529);
  EXPECT_EQ(ball_size(ErrorBall(1, 1, 1, 0)), 2);
  EXPECT_EQ(ball_size(ErrorBall(3, 2, 1, 0)), 7);
  EXPECT_EQ(ball_size(ErrorBall(2, 2, 1, 1)), 9);
  EXPECT_EQ(family_ball_size(2, 9), 352);
  EXPECT_EQ(family_ball_size(3, 26), 8256);
}

TEST(BallSize, CubeOracle) {
  for (int n = 1; n <= 5; ++n)
    for (int t = 1; t <= n; ++t)
      for (int kp = 1; kp <= 3; ++kp)
        for (int km = 0; km <= kp; ++km)
          ASSERT_EQ(ball_size(ErrorBall(n, t, kp, km)), cube_count(n, t, kp, km)) << n << t << kp << km;
}

TEST(BallSize, U64Overflow) {
  EXPECT_EQ(ball_size_u64(ErrorBall(11, 2, 2, 1)), 529u);
  EXPECT_THROW(ball_size_u64(ErrorBall(200, 200, 3, 3)), std::overflow_error);
}

TEST(BallEnumerate, Examples) {
  EXPECT_EQ(ball_enumerate(ErrorBall(1, 1, 2, 1)), (std::vector<std::vector<int>>{{0}, {-1}, {1}, {2}}));
  EXPECT_EQ(ball_enumerate(ErrorBall(2, 1, 1, 0)), (std::vector<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(ball_enumerate(ErrorBall(2, 2, 1, 1)).size(), 9u);
}

TEST(BallEnumerate, DistinctWeightBoundedAndOrdered) {
  for (int n = 1; n <= 5; ++n)
    for (int t = 1; t <= n; ++t) {
      const ErrorBall b(n, t, 2, 1);
      const auto pts = ball_enumerate(b);
      std::set<std::vector<int>> seen(pts.begin(), pts.end());
      ASSERT_EQ(seen.size(), pts.size());
      int prev_w = 0;
      for (const auto& p : pts) {
        int w = 0;
        for (int v : p) {
          w += v != 0;
          ASSERT_TRUE(v >= -1 && v <= 2);
        }
        ASSERT_LE(w, t);
        ASSERT_GE(w, prev_w);
        prev_w = w;
      }
    }
}

TEST(BallEnumerate, CapIsEnforced) { EXPECT_THROW(ball_enumerate(ErrorBall(6, 6, 3, 3), 1000), EnumerationCapExceeded); }

TEST(ErrorBall, ValidationAndParsing) {
  EXPECT_THROW(ErrorBall(0, 1, 1, 0), std::invalid_argument);
  EXPECT_THROW(ErrorBall(3, 4, 1, 0), std::invalid_argument);
  EXPECT_THROW(ErrorBall(3, 2, 1, 2), std::invalid_argument);
  const auto b = ErrorBall::parse("3,2,1,0");
  EXPECT_EQ(b.n, 3);
  EXPECT_EQ(b.to_string(), "3,2,1,0");
  EXPECT_THROW(ErrorBall::parse("3,2,1"), std::invalid_argument);
  EXPECT_THROW(ErrorBall::parse("3,2,x,0"), std::invalid_argument);
}

TEST(MagnitudeSet, SyntaxRoundTrip) {
  const auto M = MagnitudeSet::parse("-1..2");
  EXPECT_EQ(M.kplus, 2);
  EXPECT_EQ(M.kminus, 1);
  EXPECT_EQ(M.values(), (std::vector<int>{-1, 1, 2}));
  EXPECT_EQ(M.to_string(), "-1..2");
  EXPECT_EQ(M.family_m(), 2);
  EXPECT_EQ(MagnitudeSet::parse("-0..1").values(), std::vector<int>{1});
  EXPECT_EQ(MagnitudeSet::parse("-0..1").family_m(), 1);
  EXPECT_FALSE(MagnitudeSet::parse("-0..2").family_m());
  EXPECT_THROW(MagnitudeSet::parse("1..2"), std::invalid_argument);
}

TEST(Tau, Examples) {
  EXPECT_EQ(tau(3, 0), 4);
  EXPECT_EQ(tau(3, 6), 1);
  EXPECT_EQ(tau(3, -3), 2);
  // ordered pairs (-1,2) and (2,-1)
  EXPECT_EQ(tau(2, 1), 2);
  EXPECT_EQ(oracle::tau(2, 1), 2);
}

TEST(Tau, MatchesBruteForce) {
  for (int m = 2; m <= 64; ++m)
    for (std::int64_t x = -2 * m - 2; x <= 2 * m + 2; ++x) ASSERT_EQ(tau(m, x), oracle::tau(m, x)) << m << " " << x;
}

TEST(Tau, SumIdentities) {
  EXPECT_EQ(tau_identities(2), (TauSums{3, 1, 4}));
  EXPECT_EQ(tau_identities(3), (TauSums{6, 3, 12}));
  EXPECT_EQ(tau_identities(10), (TauSums{55, 45, 180}));
  for (std::int64_t m = 2; m <= 64; ++m) {
    const auto s = tau_identities(static_cast<int>(m));
    ASSERT_EQ(s.upper, (m * m + m) / 2);
    ASSERT_EQ(s.lower, (m * m - m) / 2);
    ASSERT_EQ(s.odd, 2 * m * m - 2 * m);
  }
}
