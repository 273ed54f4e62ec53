#pragma once

// Finite Abelian groups in primary (prime-power) decomposition
//   G = Z_{p1^e1} x ... x Z_{pk^ek},   factors sorted by (p, e).
// Elements are residue tuples, one coordinate per factor. Elements are also
// numbered 0..|G|-1 by a mixed-radix encoding with the first factor most
// significant, so index order is lexicographic order on coordinates.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltile/numtheory.hpp"

namespace ltile {

struct CyclicFactor {
  std::uint64_t prime = 2;
  int exponent = 1;

  std::uint64_t order() const { return numtheory::ipow(prime, exponent); }

  friend bool operator==(const CyclicFactor&, const CyclicFactor&) = default;
  friend auto operator<=>(const CyclicFactor& a, const CyclicFactor& b) {
    if (auto c = a.prime <=> b.prime; c != 0) return c;
    return a.exponent <=> b.exponent;
  }
};

struct GroupElement {
  std::vector<std::uint64_t> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class AbelianGroup {
 public:
  AbelianGroup() { rebuild(); }

  explicit AbelianGroup(std::vector<CyclicFactor> factors) : factors_(std::move(factors)) {
    for (const auto& f : factors_) {
      if (f.exponent < 1 || !numtheory::is_prime(f.prime))
        throw std::invalid_argument("AbelianGroup: factors must be prime powers p^e with e >= 1");
    }
    std::sort(factors_.begin(), factors_.end());
    rebuild();
  }

  // Z_{n1} x Z_{n2} x ... with arbitrary positive orders, decomposed into
  // prime-power factors.
  static AbelianGroup from_cyclic_orders(const std::vector<std::uint64_t>& orders) {
    std::vector<CyclicFactor> fs;
    for (auto o : orders) {
      if (o == 0) throw std::invalid_argument("AbelianGroup: cyclic factor of order 0");
      if (o == 1) continue;
      for (auto pp : numtheory::factorize(o)) fs.push_back({pp.prime, pp.exponent});
    }
    return AbelianGroup(std::move(fs));
  }

  static AbelianGroup cyclic(std::uint64_t order) { return from_cyclic_orders({order}); }

  // `Z4xZ2xZ9` (case-insensitive, any order, composite orders allowed).
  static AbelianGroup parse(const std::string& text) {
    std::vector<std::uint64_t> orders;
    std::string lower;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    std::size_t pos = 0;
    if (lower.empty()) throw std::invalid_argument("empty group literal");
    while (pos < lower.size()) {
      if (lower[pos] != 'z') throw std::invalid_argument("group literal must look like Z4xZ2xZ9, got '" + text + "'");
      ++pos;
      std::size_t start = pos;
      while (pos < lower.size() && std::isdigit(static_cast<unsigned char>(lower[pos]))) ++pos;
      if (start == pos) throw std::invalid_argument("missing cyclic order in group literal '" + text + "'");
      orders.push_back(std::stoull(lower.substr(start, pos - start)));
      if (pos < lower.size()) {
        if (lower[pos] != 'x') throw std::invalid_argument("expected 'x' between factors in '" + text + "'");
        ++pos;
        if (pos == lower.size()) throw std::invalid_argument("dangling 'x' in group literal '" + text + "'");
      }
    }
    return from_cyclic_orders(orders);
  }

  // Canonical literal, e.g. "Z2xZ4xZ9"; the trivial group is "Z1".
  std::string to_string() const {
    if (factors_.empty()) return "Z1";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) os << 'x';
      os << 'Z' << factors_[i].order();
    }
    return os.str();
  }

  const std::vector<CyclicFactor>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::uint64_t order() const { return order_; }
  std::uint64_t exponent() const { return exponent_; }
  const std::vector<std::uint64_t>& moduli() const { return moduli_; }
  bool is_cyclic() const {
    for (std::size_t i = 1; i < factors_.size(); ++i)
      if (factors_[i].prime == factors_[i - 1].prime) return false;
    return true;
  }

  // d_l: multiplicity of the cyclic factor Z_l.
  int d(std::uint64_t l) const {
    return static_cast<int>(std::count_if(factors_.begin(), factors_.end(),
                                          [&](const CyclicFactor& f) { return f.order() == l; }));
  }

  GroupElement identity() const { return GroupElement{std::vector<std::uint64_t>(factors_.size(), 0)}; }

  bool contains(const GroupElement& a) const {
    if (a.coords.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < moduli_.size(); ++i)
      if (a.coords[i] >= moduli_[i]) return false;
    return true;
  }

  void require(const GroupElement& a) const {
    if (!contains(a)) throw std::invalid_argument("element does not belong to group " + to_string());
  }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    require(a);
    require(b);
    GroupElement r = a;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      r.coords[i] += b.coords[i];
      if (r.coords[i] >= moduli_[i]) r.coords[i] -= moduli_[i];
    }
    return r;
  }

  GroupElement neg(const GroupElement& a) const {
    require(a);
    GroupElement r = a;
    for (std::size_t i = 0; i < moduli_.size(); ++i) r.coords[i] = r.coords[i] == 0 ? 0 : moduli_[i] - r.coords[i];
    return r;
  }

  GroupElement scalar_mul(std::int64_t k, const GroupElement& a) const {
    require(a);
    GroupElement r = a;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      const auto mod = static_cast<std::int64_t>(moduli_[i]);
      std::int64_t km = k % mod;
      if (km < 0) km += mod;
      r.coords[i] = numtheory::mulmod(static_cast<std::uint64_t>(km), a.coords[i], moduli_[i]);
    }
    return r;
  }

  std::uint64_t element_order(const GroupElement& a) const {
    require(a);
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      ord = numtheory::lcm(ord, moduli_[i] / std::gcd(moduli_[i], a.coords[i]));
    }
    return ord;
  }

  // Number of elements whose order divides l: prod gcd(l, p^e).
  std::uint64_t count_dividing(std::uint64_t l) const {
    std::uint64_t c = 1;
    for (auto mod : moduli_) c *= std::gcd(l, mod);
    return c;
  }

  // m_l(G), by Moebius inversion over the divisors of l.
  std::uint64_t count_order(std::uint64_t l) const {
    if (l < 1) throw std::invalid_argument("count_order: l must be >= 1");
    auto primes = numtheory::factorize(l);
    // sum over squarefree divisors d of rad(l): mu(d) * count_dividing(l / d)
    std::int64_t total = 0;
    const std::size_t k = primes.size();
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
      std::uint64_t d = 1;
      int bits = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (1ull << i)) {
          d *= primes[i].prime;
          ++bits;
        }
      }
      auto c = static_cast<std::int64_t>(count_dividing(l / d));
      total += (bits % 2 ? -c : c);
    }
    return static_cast<std::uint64_t>(total);
  }

  // m_2(G) = 2^{sum_i d_{2^i}} - 1
  std::uint64_t count_order_two_closed_form() const {
    int twos = static_cast<int>(std::count_if(factors_.begin(), factors_.end(),
                                              [](const CyclicFactor& f) { return f.prime == 2; }));
    return (1ull << twos) - 1;
  }

  std::uint64_t index_of(const GroupElement& a) const {
    require(a);
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + a.coords[i];
    return idx;
  }

  GroupElement element_at(std::uint64_t idx) const {
    if (idx >= order_) throw std::out_of_range("element index out of range");
    GroupElement r = identity();
    for (std::size_t i = moduli_.size(); i-- > 0;) {
      r.coords[i] = idx % moduli_[i];
      idx /= moduli_[i];
    }
    return r;
  }

  // "(1,0,2)"
  std::string format(const GroupElement& a) const {
    require(a);
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
      if (i) os << ',';
      os << a.coords[i];
    }
    os << ')';
    return os.str();
  }

  GroupElement parse_element(const std::string& text) const {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
      throw std::invalid_argument("element must look like (a,b,...), got '" + text + "'");
    GroupElement e;
    std::string body = s.substr(1, s.size() - 2);
    if (!body.empty()) {
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          throw std::invalid_argument("malformed element coordinate in '" + text + "'");
        e.coords.push_back(std::stoull(item));
      }
    }
    if (!contains(e)) throw std::invalid_argument("element " + text + " is not in group " + to_string());
    return e;
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) { return a.factors_ == b.factors_; }

 private:
  void rebuild() {
    moduli_.clear();
    order_ = 1;
    exponent_ = 1;
    for (const auto& f : factors_) {
      moduli_.push_back(f.order());
      order_ *= f.order();
      exponent_ = numtheory::lcm(exponent_, f.order());
    }
  }

  std::vector<CyclicFactor> factors_;
  std::vector<std::uint64_t> moduli_;
  std::uint64_t order_ = 1;
  std::uint64_t exponent_ = 1;
};

// One group per isomorphism class of order N: for each prime p^e || N, one
// factor list per partition of e. Primes ascending; partitions in reverse
// lexicographic order, so the cyclic group comes first.
inline std::vector<AbelianGroup> enumerate_groups(std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("enumerate_groups: N must be >= 1");
  auto primes = numtheory::factorize(N);
  std::vector<std::vector<CyclicFactor>> acc{{}};
  for (const auto& pp : primes) {
    std::vector<std::vector<CyclicFactor>> next;
    const auto parts = numtheory::partitions(pp.exponent);
    for (const auto& prefix : acc) {
      for (const auto& part : parts) {
        auto fs = prefix;
        for (int e : part) fs.push_back({pp.prime, e});
        next.push_back(std::move(fs));
      }
    }
    acc = std::move(next);
  }
  std::vector<AbelianGroup> out;
  out.reserve(acc.size());
  for (auto& fs : acc) out.emplace_back(std::move(fs));
  return out;
}

}  // namespace ltile
