#pragma once

// Slow, independent reference implementations used by the unit tests and the
// acceptance runner. None of them calls the code under test except to build
// inputs.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "ltile/ltile.hpp"

namespace oracle {

using namespace ltile;

// Scan the whole cube [-k-, k+]^n and keep weight <= t.
inline std::uint64_t cube_count(int n, int t, int kp, int km) {
  std::vector<int> x(static_cast<std::size_t>(n), -km);
  std::uint64_t count = 0;
  for (;;) {
    int w = 0;
    for (int v : x) w += v != 0;
    count += w <= t;
    int i = 0;
    while (i < n && x[static_cast<std::size_t>(i)] == kp) x[static_cast<std::size_t>(i++)] = -km;
    if (i == n) break;
    ++x[static_cast<std::size_t>(i)];
  }
  return count;
}

inline std::int64_t tau(int m, std::int64_t x) {
  std::int64_t c = 0;
  for (int a = -(m - 1); a <= m; ++a)
    for (int b = -(m - 1); b <= m; ++b)
      if (a != 0 && b != 0 && a + b == x) ++c;
  return c;
}

struct Split {
  bool partial;
  bool complete;
};

// Evaluates e . S for every ball vector e, in coordinates.
inline Split splitting(const SplitterSet& S) {
  const auto& G = S.group();
  std::set<GroupElement> values;
  bool distinct = true;
  for (const auto& e : ball_enumerate(S.ball())) {
    GroupElement v = G.identity();
    for (std::size_t i = 0; i < e.size(); ++i) v = G.add(v, G.scalar_mul(e[i], S.elements()[i]));
    if (!values.insert(v).second) distinct = false;
  }
  return {distinct, values.size() == G.order()};
}

// Every increasing n-subset of G \ {0} that fully splits G.
inline std::set<std::vector<std::uint64_t>> all_splittings(const AbelianGroup& G, const MagnitudeSet& M, int t, int n) {
  std::set<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> pick(static_cast<std::size_t>(n));
  auto rec = [&](auto&& self, std::size_t pos, std::uint64_t start) -> void {
    if (pos == pick.size()) {
      std::vector<GroupElement> e;
      for (auto i : pick) e.push_back(G.element_at(i));
      const auto s = splitting(SplitterSet(G, M, t, e));
      if (s.partial && s.complete) out.insert(pick);
      return;
    }
    for (std::uint64_t i = start; i < G.order(); ++i) {
      pick[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 1);
  return out;
}

// Every prime factor of N divides 2m, by trial division.
inline bool euclid(std::uint64_t N, std::uint64_t m) {
  std::uint64_t r = N;
  for (std::uint64_t p = 2; p * p <= r; ++p) {
    if (r % p) continue;
    if ((2 * m) % p) return false;
    while (r % p == 0) r /= p;
  }
  return r == 1 || (2 * m) % r == 0;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  auto A = matrix::zeros(r, c);
  for (auto& row : A)
    for (auto& x : row) x = d(rng);
  return A;
}

inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  auto U = matrix::identity(n);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int k = 0; k < 12; ++k) {
    const auto i = rng() % n, j = rng() % n;
    const int f = d(rng);
    if (i == j) continue;
    for (std::size_t c = 0; c < n; ++c) U[i][c] += f * U[j][c];
  }
  return U;
}

// Random instance for the verifier: group, magnitudes, t and distinct elements.
inline SplitterSet random_instance(std::mt19937_64& rng) {
  static const std::vector<std::string> groups = {"Z7",  "Z8",     "Z2xZ4",  "Z9",   "Z3xZ3", "Z11",
                                                  "Z13", "Z16",    "Z2xZ8",  "Z4xZ4", "Z2xZ2xZ4", "Z19",
                                                  "Z25", "Z5xZ5",  "Z27",    "Z3xZ9", "Z37",   "Z2xZ3xZ5"};
  for (;;) {
    const auto G = AbelianGroup::parse(groups[rng() % groups.size()]);
    const int kp = 1 + static_cast<int>(rng() % 3);
    const int km = static_cast<int>(rng() % static_cast<std::uint64_t>(kp + 1));
    const int n = 1 + static_cast<int>(rng() % 4);
    const int t = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    if (G.order() <= static_cast<std::uint64_t>(n)) continue;
    std::set<std::uint64_t> idx;
    while (idx.size() < static_cast<std::size_t>(n)) idx.insert(rng() % G.order());
    std::vector<GroupElement> elems;
    for (auto i : idx) elems.push_back(G.element_at(i));
    std::shuffle(elems.begin(), elems.end(), rng);
    return SplitterSet(G, MagnitudeSet(kp, km), t, elems);
  }
}

}  // namespace oracle
