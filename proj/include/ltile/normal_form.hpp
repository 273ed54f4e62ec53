#pragma once

// Hermite and Smith normal forms over Z with unimodular transforms, on
// unbounded integers.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ltile/interval.hpp"
#include "ltile/numtheory.hpp"

namespace ltile {

using IntMatrix = std::vector<std::vector<BigInt>>;

namespace matrix {

inline IntMatrix zeros(std::size_t rows, std::size_t cols) { return IntMatrix(rows, std::vector<BigInt>(cols, 0)); }

inline IntMatrix identity(std::size_t n) {
  auto I = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline std::size_t rows(const IntMatrix& A) { return A.size(); }
inline std::size_t cols(const IntMatrix& A) { return A.empty() ? 0 : A.front().size(); }

inline void require_rectangular(const IntMatrix& A) {
  for (const auto& r : A)
    if (r.size() != cols(A)) throw std::invalid_argument("matrix rows have different lengths");
}

inline IntMatrix multiply(const IntMatrix& A, const IntMatrix& B) {
  if (cols(A) != rows(B)) throw std::invalid_argument("matrix dimensions do not match");
  auto C = zeros(rows(A), cols(B));
  for (std::size_t i = 0; i < rows(A); ++i)
    for (std::size_t k = 0; k < cols(A); ++k) {
      if (A[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols(B); ++j) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

inline IntMatrix transpose(const IntMatrix& A) {
  auto T = zeros(cols(A), rows(A));
  for (std::size_t i = 0; i < rows(A); ++i)
    for (std::size_t j = 0; j < cols(A); ++j) T[j][i] = A[i][j];
  return T;
}

// Bareiss fraction-free elimination.
inline BigInt determinant(IntMatrix A) {
  const std::size_t n = rows(A);
  if (n != cols(A)) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && A[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(A[k], A[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
    prev = A[k][k];
  }
  return sign * A[n - 1][n - 1];
}

inline std::string to_string(const IntMatrix& A) {
  std::ostringstream os;
  for (const auto& r : A) {
    for (std::size_t j = 0; j < r.size(); ++j) os << (j ? " " : "") << r[j];
    os << '\n';
  }
  return os.str();
}

}  // namespace matrix

namespace detail {

// row_i += c * row_j
inline void add_row(IntMatrix& A, std::size_t i, std::size_t j, const BigInt& c) {
  if (c == 0) return;
  for (std::size_t k = 0; k < A[i].size(); ++k) A[i][k] += c * A[j][k];
}
inline void add_col(IntMatrix& A, std::size_t i, std::size_t j, const BigInt& c) {
  if (c == 0) return;
  for (auto& r : A) r[i] += c * r[j];
}
inline void swap_cols(IntMatrix& A, std::size_t i, std::size_t j) {
  for (auto& r : A) std::swap(r[i], r[j]);
}
inline void negate_row(IntMatrix& A, std::size_t i) {
  for (auto& x : A[i]) x = -x;
}
inline void negate_col(IntMatrix& A, std::size_t j) {
  for (auto& r : A) r[j] = -r[j];
}
}  // namespace detail

struct HermiteForm {
  IntMatrix H;  // H = U * A
  IntMatrix U;
  std::size_t rank = 0;
};

// Row-style HNF: echelon form, pivots positive, entries above each pivot
// reduced into [0, pivot), zero rows at the bottom.
inline HermiteForm hermite_normal_form(const IntMatrix& A) {
  matrix::require_rectangular(A);
  HermiteForm out{A, matrix::identity(matrix::rows(A)), 0};
  auto& H = out.H;
  auto& U = out.U;
  const std::size_t m = matrix::rows(A), n = matrix::cols(A);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (H[i][c] != 0 && (best == m || abs(H[i][c]) < abs(H[best][c]))) best = i;
      if (best == m) break;
      std::swap(H[r], H[best]);
      std::swap(U[r], U[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H[i][c] == 0) continue;
        const BigInt q = H[i][c] / H[r][c];
        detail::add_row(H, i, r, -q);
        detail::add_row(U, i, r, -q);
        if (H[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (H[r][c] == 0) continue;
    if (H[r][c] < 0) {
      detail::negate_row(H, r);
      detail::negate_row(U, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const BigInt q = detail::floor_div(H[i][c], H[r][c]);
      detail::add_row(H, i, r, -q);
      detail::add_row(U, i, r, -q);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

struct SmithForm {
  IntMatrix D;  // D = U * A * V, diagonal with d_1 | d_2 | ...
  IntMatrix U;
  IntMatrix V;

  std::vector<BigInt> diagonal() const {
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < std::min(D.size(), D.empty() ? 0 : D[0].size()); ++i) d.push_back(D[i][i]);
    return d;
  }
};

inline SmithForm smith_normal_form(const IntMatrix& A) {
  matrix::require_rectangular(A);
  const std::size_t m = matrix::rows(A), n = matrix::cols(A);
  SmithForm out{A, matrix::identity(m), matrix::identity(n)};
  auto& D = out.D;
  auto& U = out.U;
  auto& V = out.V;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest non-zero entry of the trailing block goes to (t, t)
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D[i][j] != 0 && (bi == m || abs(D[i][j]) < abs(D[bi][bj]))) bi = i, bj = j;
      if (bi == m) return out;
      std::swap(D[t], D[bi]);
      std::swap(U[t], U[bi]);
      detail::swap_cols(D, t, bj);
      detail::swap_cols(V, t, bj);
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D[i][t] == 0) continue;
        const BigInt q = D[i][t] / D[t][t];
        detail::add_row(D, i, t, -q);
        detail::add_row(U, i, t, -q);
        if (D[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D[t][j] == 0) continue;
        const BigInt q = D[t][j] / D[t][t];
        detail::add_col(D, j, t, -q);
        detail::add_col(V, j, t, -q);
        if (D[t][j] != 0) dirty = true;
      }
      if (dirty) continue;
      // divisibility: fold an offending row into row t and retry
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D[i][j] % D[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      detail::add_row(D, t, bad, 1);
      detail::add_row(U, t, bad, 1);
    }
    if (D[t][t] < 0) {
      detail::negate_row(D, t);
      detail::negate_row(U, t);
    }
  }
  return out;
}

}  // namespace ltile
