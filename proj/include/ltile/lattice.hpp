#pragma once

// Splittings <-> lattice tilings. The kernel of phi(x) = x . (s_1..s_n) is a
// lattice whose translates of the error ball tile Z^n exactly when S splits
// G; conversely Z^n / Lambda with the images of e_i gives back a splitting.

#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltile/ball.hpp"
#include "ltile/group.hpp"
#include "ltile/normal_form.hpp"
#include "ltile/splitting.hpp"

namespace ltile {

class IntegerLattice {
 public:
  explicit IntegerLattice(IntMatrix generator) : gen_(std::move(generator)) {
    matrix::require_rectangular(gen_);
    if (gen_.empty() || matrix::cols(gen_) != gen_.size())
      throw std::invalid_argument("lattice generator must be a non-empty square matrix");
    det_ = abs(matrix::determinant(gen_));
    if (det_ == 0) throw std::invalid_argument("lattice generator is not full rank");
  }

  std::size_t dimension() const { return gen_.size(); }
  const IntMatrix& generator() const { return gen_; }
  const BigInt& determinant() const { return det_; }

  // Same lattice, generator in Hermite normal form.
  IntegerLattice canonical() const { return IntegerLattice(hermite_normal_form(gen_).H); }

  bool contains(const std::vector<BigInt>& x) const {
    // x in row span iff appending it leaves the HNF unchanged in rank and determinant
    IntMatrix A = gen_;
    A.push_back(x);
    auto h = hermite_normal_form(A);
    h.H.pop_back();
    return abs(matrix::determinant(h.H)) == det_;
  }

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
    return a.canonical().gen_ == b.canonical().gen_;
  }

 private:
  IntMatrix gen_;
  BigInt det_;
};

// "n" then n rows of n integers.
inline IntegerLattice parse_lattice(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n < 1 || n > 64) throw std::invalid_argument("lattice file: first token must be the dimension n >= 1");
  IntMatrix A = matrix::zeros(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (auto& row : A)
    for (auto& x : row) {
      std::string tok;
      if (!(in >> tok)) throw std::invalid_argument("lattice file: expected " + std::to_string(n * n) + " entries");
      try {
        x = BigInt(tok);
      } catch (const std::exception&) {
        throw std::invalid_argument("lattice file: bad integer '" + tok + "'");
      }
    }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("lattice file: trailing data '" + extra + "'");
  return IntegerLattice(std::move(A));
}

inline IntegerLattice parse_lattice(const std::string& text) {
  std::istringstream is(text);
  return parse_lattice(is);
}

inline std::string emit_lattice(const IntegerLattice& L) {
  std::ostringstream os;
  os << L.dimension() << '\n' << matrix::to_string(L.generator());
  return os.str();
}

// Kernel of Z^n -> G, x |-> sum x_i s_i, in canonical HNF.
inline IntegerLattice kernel_lattice(const AbelianGroup& G, const std::vector<GroupElement>& images) {
  const std::size_t n = images.size(), K = G.rank();
  if (n == 0) throw std::invalid_argument("kernel_lattice: no generators");
  // [[A, I_n], [D, 0]] with A the image coordinates and D = diag(factor orders)
  IntMatrix M = matrix::zeros(n + K, K + n);
  for (std::size_t i = 0; i < n; ++i) {
    G.require(images[i]);
    for (std::size_t j = 0; j < K; ++j) M[i][j] = images[i].coords[j];
    M[i][K + i] = 1;
  }
  for (std::size_t j = 0; j < K; ++j) M[n + j][j] = G.moduli()[j];
  auto h = hermite_normal_form(M);
  IntMatrix ker = matrix::zeros(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ker[i][j] = h.H[K + i][K + j];
  return IntegerLattice(ker).canonical();
}

inline IntegerLattice lattice_from_splitting(const SplitterSet& S) {
  if (!verify_full(S)) throw std::invalid_argument("lattice_from_splitting: splitter set is not a verified full splitting");
  auto L = kernel_lattice(S.group(), S.elements());
  if (L.determinant() != BigInt(S.group().order()))
    throw std::logic_error("lattice_from_splitting: |det| differs from |G|");
  return L;
}

struct QuotientMap {
  AbelianGroup target;
  std::vector<GroupElement> images;  // images of e_1..e_n
};

// Z^n / Lambda via Smith normal form: with U L V = D, x |-> (x V)_j mod d_j.
inline QuotientMap quotient_map(const IntegerLattice& L) {
  const std::size_t n = L.dimension();
  auto snf = smith_normal_form(L.generator());
  struct Column {
    CyclicFactor factor;
    std::size_t snf_index;
  };
  std::vector<Column> columns;
  for (std::size_t j = 0; j < n; ++j) {
    const BigInt& d = snf.D[j][j];
    if (d == 1) continue;
    if (d > BigInt(std::numeric_limits<std::uint64_t>::max()))
      throw std::length_error("quotient_map: invariant factor exceeds 64 bits");
    for (auto pp : numtheory::factorize(static_cast<std::uint64_t>(d))) columns.push_back({{pp.prime, pp.exponent}, j});
  }
  std::stable_sort(columns.begin(), columns.end(), [](const Column& a, const Column& b) { return a.factor < b.factor; });
  std::vector<CyclicFactor> factors;
  for (const auto& c : columns) factors.push_back(c.factor);
  QuotientMap q{AbelianGroup(factors), {}};
  for (std::size_t i = 0; i < n; ++i) {
    GroupElement e = q.target.identity();
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const BigInt mod = columns[c].factor.order();
      BigInt r = snf.V[i][columns[c].snf_index] % mod;
      if (r < 0) r += mod;
      e.coords[c] = static_cast<std::uint64_t>(r);
    }
    q.images.push_back(std::move(e));
  }
  return q;
}

class DeterminantMismatch : public std::invalid_argument {
 public:
  DeterminantMismatch(const BigInt& det, const BigInt& ball)
      : std::invalid_argument("lattice determinant " + det.str() + " differs from ball size " + ball.str()),
        determinant(det),
        ball_size(ball) {}
  BigInt determinant;
  BigInt ball_size;
};

struct QuotientSplitting {
  QuotientMap map;
  SplitStatus status = SplitStatus::none;
  std::optional<SplitterSet> splitter;  // empty when images repeat
};

inline QuotientSplitting quotient_splitting(const IntegerLattice& L, const ErrorBall& ball) {
  ball.validate();
  if (static_cast<std::size_t>(ball.n) != L.dimension())
    throw std::invalid_argument("quotient_splitting: ball dimension differs from lattice dimension");
  const BigInt bsize = ball_size(ball);
  if (L.determinant() != bsize) throw DeterminantMismatch(L.determinant(), bsize);
  QuotientSplitting out{quotient_map(L), SplitStatus::none, std::nullopt};
  auto sorted = out.map.images;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return out;
  SplitterSet S(out.map.target, ball.magnitudes(), ball.t, out.map.images);
  out.status = S.certify();
  out.splitter = std::move(S);
  return out;
}

enum class TilingStatus { tiles, fails, inconclusive };

inline const char* to_string(TilingStatus s) {
  switch (s) {
    case TilingStatus::tiles: return "tiles";
    case TilingStatus::fails: return "fails";
    case TilingStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

struct TilingCheck {
  TilingStatus status = TilingStatus::inconclusive;
  std::vector<long long> witness;  // a point covered `witness_count` != 1 times
  int witness_count = 0;
  std::uint64_t lattice_points = 0;
  std::uint64_t interior_points = 0;
};

// Geometric check on the box |p|_inf <= R - k+ - 1, using all lattice points
// with |v|_inf <= R + k+. Integer arithmetic only.
inline TilingCheck verify_tiling_box(const ErrorBall& ball, const IntegerLattice& L, long long R, std::size_t cap = 6) {
  ball.validate();
  const std::size_t n = L.dimension();
  if (static_cast<std::size_t>(ball.n) != n) throw std::invalid_argument("verify_tiling_box: dimension mismatch");
  if (R < 2LL * (ball.kplus + ball.kminus)) throw std::invalid_argument("verify_tiling_box: need R >= 2(k+ + k-)");
  TilingCheck out;
  if (n > cap) return out;

  const long long outer = R + ball.kplus;
  const long long inner = R - ball.kplus - 1;
  const auto H = L.canonical().generator();
  std::vector<std::vector<long long>> h(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (abs(H[i][j]) > BigInt(std::numeric_limits<int>::max())) return out;
      h[i][j] = static_cast<long long>(H[i][j]);
    }

  const long long side = 2 * inner + 1;
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) cells *= static_cast<std::uint64_t>(side);
  out.interior_points = cells;
  std::vector<std::uint8_t> count(cells, 0);
  const auto ball_pts = ball_enumerate(ball);

  auto cell_of = [&](const std::vector<long long>& p) -> std::optional<std::uint64_t> {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (p[j] < -inner || p[j] > inner) return std::nullopt;
      idx = idx * static_cast<std::uint64_t>(side) + static_cast<std::uint64_t>(p[j] + inner);
    }
    return idx;
  };

  // HNF rows are upper triangular: coordinate j depends only on c_0..c_j.
  std::vector<long long> v(n, 0), p(n);
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == n) {
      ++out.lattice_points;
      for (const auto& b : ball_pts) {
        for (std::size_t k = 0; k < n; ++k) p[k] = v[k] + b[k];
        if (auto c = cell_of(p); c && count[*c] < 255) ++count[*c];
      }
      return;
    }
    const long long piv = h[j][j];
    const long long base = v[j];
    // |base + c * piv| <= outer
    const long long lo = -((outer + base) / piv);
    const long long hi = (outer - base) / piv;
    for (long long c = lo - 1; c <= hi + 1; ++c) {
      const long long val = base + c * piv;
      if (val < -outer || val > outer) continue;
      for (std::size_t k = j; k < n; ++k) v[k] += c * h[j][k];
      self(self, j + 1);
      for (std::size_t k = j; k < n; ++k) v[k] -= c * h[j][k];
    }
  };
  rec(rec, 0);

  for (std::uint64_t idx = 0; idx < cells; ++idx) {
    if (count[idx] == 1) continue;
    out.status = TilingStatus::fails;
    out.witness_count = count[idx];
    out.witness.assign(n, 0);
    std::uint64_t rest = idx;
    for (std::size_t j = n; j-- > 0;) {
      out.witness[j] = static_cast<long long>(rest % static_cast<std::uint64_t>(side)) - inner;
      rest /= static_cast<std::uint64_t>(side);
    }
    return out;
  }
  out.status = TilingStatus::tiles;
  return out;
}

}  // namespace ltile
