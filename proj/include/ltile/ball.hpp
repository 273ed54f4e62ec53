#pragma once

// Limited-magnitude error balls B(n, t, k+, k-): integer vectors of Hamming
// weight at most t whose entries lie in [-k-, k+].

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltile/numtheory.hpp"

namespace ltile {

// M = [-kminus, kplus] \ {0}
struct MagnitudeSet {
  int kplus = 1;
  int kminus = 0;

  MagnitudeSet() = default;
  MagnitudeSet(int kp, int km) : kplus(kp), kminus(km) {
    if (kminus < 0 || kplus < kminus) throw std::invalid_argument("MagnitudeSet: need kplus >= kminus >= 0");
    if (kplus < 1) throw std::invalid_argument("MagnitudeSet: empty magnitude set");
  }

  // The (m, m-1) family.
  static MagnitudeSet asymmetric(int m) { return {m, m - 1}; }

  int size() const { return kplus + kminus; }

  // ascending: -kminus, ..., -1, 1, ..., kplus
  std::vector<int> values() const {
    std::vector<int> v;
    v.reserve(static_cast<std::size_t>(size()));
    for (int a = -kminus; a <= kplus; ++a)
      if (a != 0) v.push_back(a);
    return v;
  }

  bool contains(int a) const { return a != 0 && a >= -kminus && a <= kplus; }

  // m when kplus = kminus + 1
  std::optional<int> family_m() const {
    if (kplus == kminus + 1) return kplus;
    return std::nullopt;
  }

  // `-kminus..kplus`, e.g. "-1..2"
  std::string to_string() const {
    std::ostringstream os;
    os << '-' << kminus << ".." << kplus;
    return os.str();
  }

  static MagnitudeSet parse(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos || text.empty() || text[0] != '-')
      throw std::invalid_argument("magnitude set must look like -kminus..kplus, got '" + text + "'");
    try {
      std::size_t used = 0;
      int km = std::stoi(text.substr(1, dots - 1), &used);
      if (used != dots - 1) throw std::invalid_argument("trailing characters");
      std::string tail = text.substr(dots + 2);
      int kp = std::stoi(tail, &used);
      if (used != tail.size()) throw std::invalid_argument("trailing characters");
      return {kp, km};
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed magnitude set '" + text + "'");
    }
  }

  friend bool operator==(const MagnitudeSet&, const MagnitudeSet&) = default;
};

struct ErrorBall {
  int n = 1;
  int t = 1;
  int kplus = 1;
  int kminus = 0;

  ErrorBall() = default;
  ErrorBall(int n_, int t_, int kp, int km) : n(n_), t(t_), kplus(kp), kminus(km) { validate(); }

  void validate() const {
    if (n < 1) throw std::invalid_argument("ErrorBall: n must be >= 1");
    if (t < 1 || t > n) throw std::invalid_argument("ErrorBall: need 1 <= t <= n");
    if (kminus < 0 || kplus < kminus) throw std::invalid_argument("ErrorBall: need kplus >= kminus >= 0");
    if (kplus < 1) throw std::invalid_argument("ErrorBall: kplus must be >= 1");
  }

  MagnitudeSet magnitudes() const { return {kplus, kminus}; }
  std::optional<int> m() const { return magnitudes().family_m(); }

  // `n,t,k+,k-`
  static ErrorBall parse(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        parts.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed ball descriptor '" + text + "'");
      }
    }
    if (parts.size() != 4) throw std::invalid_argument("ball descriptor must be n,t,k+,k- ; got '" + text + "'");
    return {parts[0], parts[1], parts[2], parts[3]};
  }

  std::string to_string() const {
    std::ostringstream os;
    os << n << ',' << t << ',' << kplus << ',' << kminus;
    return os.str();
  }

  friend bool operator==(const ErrorBall&, const ErrorBall&) = default;
};

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// sum_{i=0}^{t} C(n, i) (k+ + k-)^i
inline BigInt ball_size(const ErrorBall& ball) {
  ball.validate();
  BigInt total = 0;
  BigInt power = 1;
  for (int i = 0; i <= ball.t; ++i) {
    total += binomial(ball.n, i) * power;
    power *= ball.kplus + ball.kminus;
  }
  return total;
}

inline std::uint64_t ball_size_u64(const ErrorBall& ball) {
  BigInt s = ball_size(ball);
  if (s > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("ball size exceeds 64 bits");
  return static_cast<std::uint64_t>(s);
}

// |B(n, 2, m, m-1)| = (2m-1)^2 C(n,2) + (2m-1) n + 1
inline BigInt family_ball_size(std::uint64_t m, std::uint64_t n) {
  BigInt k = 2 * BigInt(m) - 1;
  return k * k * (BigInt(n) * (n - 1) / 2) + k * n + 1;
}

class EnumerationCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Every vector of the ball. Order: by weight, then support in lexicographic
// order, then entries lexicographically by value (each in ascending order).
inline std::vector<std::vector<int>> ball_enumerate(const ErrorBall& ball, std::uint64_t cap = 10'000'000) {
  BigInt size = ball_size(ball);
  if (size > cap) {
    std::ostringstream os;
    os << "ball_enumerate: ball size " << size << " exceeds enumeration cap " << cap;
    throw EnumerationCapExceeded(os.str());
  }
  const auto mags = ball.magnitudes().values();
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(size));
  std::vector<int> support;
  std::vector<int> x(static_cast<std::size_t>(ball.n), 0);

  auto fill_values = [&](auto&& self, std::size_t pos) -> void {
    if (pos == support.size()) {
      out.push_back(x);
      return;
    }
    for (int a : mags) {
      x[static_cast<std::size_t>(support[pos])] = a;
      self(self, pos + 1);
    }
    x[static_cast<std::size_t>(support[pos])] = 0;
  };
  auto choose = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      fill_values(fill_values, 0);
      return;
    }
    for (int i = start; i <= ball.n - remaining; ++i) {
      support.push_back(i);
      self(self, i + 1, remaining - 1);
      support.pop_back();
    }
  };
  for (int w = 0; w <= ball.t; ++w) choose(choose, 0, w);
  return out;
}

// Number of ordered pairs (a, b) in M^2 with a + b = x, M = [-(m-1), m]*.
inline std::int64_t tau(int m, std::int64_t x) {
  if (m < 2) throw std::invalid_argument("tau: m must be >= 2");
  const std::int64_t mm = m;
  if (x >= mm + 1 && x <= 2 * mm) return 2 * mm + 1 - x;
  if (x >= 1 && x <= mm) return 2 * mm - 1 - x;
  if (x == 0) return 2 * mm - 2;
  if (x >= -mm + 1 && x <= -1) return 2 * mm - 3 + x;
  if (x >= -2 * mm + 2 && x <= -mm) return 2 * mm - 1 + x;
  return 0;
}

struct TauSums {
  std::int64_t upper = 0;  // x in [m+1, 2m]
  std::int64_t lower = 0;  // x in [-2m+2, -m]
  std::int64_t odd = 0;    // odd x in [-2m+3, 2m-1]
  friend bool operator==(const TauSums&, const TauSums&) = default;
};

inline TauSums tau_identities(int m) {
  if (m < 2) throw std::invalid_argument("tau_identities: m must be >= 2");
  TauSums s;
  for (std::int64_t x = m + 1; x <= 2 * m; ++x) s.upper += tau(m, x);
  for (std::int64_t x = -2 * m + 2; x <= -m; ++x) s.lower += tau(m, x);
  for (std::int64_t x = -2 * m + 3; x <= 2 * m - 1; x += 2) s.odd += tau(m, x);
  return s;
}

}  // namespace ltile
