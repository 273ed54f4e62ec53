#pragma once

// Necessary conditions on the group alone for G = [-(m-1), m]* <>_2 S.

#include <cstdint>

#include "ltile/ball.hpp"
#include "ltile/group.hpp"

namespace ltile::screen {

// sum_{i=1}^{j} i * d_{2^i} <= 2j + 2 for every 1 <= j <= floor(log2 m).
inline bool d2_profile_check(const AbelianGroup& G, int m) {
  if (m < 1) return true;
  const int s = numtheory::floor_log2(static_cast<std::uint64_t>(m));
  std::int64_t acc = 0;
  for (int j = 1; j <= s; ++j) {
    acc += static_cast<std::int64_t>(j) * G.d(1ull << j);
    if (acc > 2 * j + 2) return false;
  }
  return true;
}

// Projecting 2S onto G' = G / (Z_2 factors) gives a partial 2-splitting of
// G' by [-floor((m-1)/2), floor(m/2)]*, so |G'| >= |B(n, 2, floor(m/2), floor((m-1)/2))|.
inline bool q2_projection_check(const AbelianGroup& G, int m, int n) {
  if (m < 2 || n < 2) return true;
  const std::uint64_t g_prime = G.order() >> G.d(2);
  return BigInt(g_prime) >= ball_size(ErrorBall(n, 2, m / 2, (m - 1) / 2));
}

}  // namespace ltile::screen
