#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace gvz {
namespace modp {

using i64 = std::int64_t;

inline i64 add(i64 a, i64 b, i64 p) { return (a + b) % p; }
inline i64 sub(i64 a, i64 b, i64 p) { return ((a - b) % p + p) % p; }
inline i64 mul(i64 a, i64 b, i64 p) { return a * b % p; }  // p < 2^31

inline i64 pow(i64 b, i64 e, i64 p) {
  i64 r = 1 % p;
  b %= p;
  while (e > 0) {
    if (e & 1) r = mul(r, b, p);
    b = mul(b, b, p);
    e >>= 1;
  }
  return r;
}

inline i64 inv(i64 a, i64 p) { return pow(((a % p) + p) % p, p - 2, p); }

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Smallest prime p with p = 1 (mod e) and p > bound.
inline i64 prime_one_mod(i64 e, i64 bound) {
  for (i64 p = e + 1;; p += e)
    if (p > bound && is_prime(p)) return p;
}

/// Smallest primitive root modulo a prime p.
inline i64 primitive_root(i64 p) {
  if (p == 2) return 1;
  std::vector<i64> qs;
  i64 m = p - 1;
  for (i64 d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      qs.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) qs.push_back(m);
  for (i64 g = 2; g < p; ++g) {
    bool ok = true;
    for (i64 q : qs)
      if (pow(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw InternalError("no primitive root found");
}

/// Dense row-major matrix over F_p.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<i64> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  i64& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  i64 at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

/// In-place reduced row echelon form; returns the pivot column of each of the
/// leading nonzero rows.
inline std::vector<int> rref(Mat& m, i64 p) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int r = row; r < m.rows; ++r)
      if (m.at(r, col) % p != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(row, c));
    i64 f = inv(m.at(row, col), p);
    for (int c = 0; c < m.cols; ++c) m.at(row, c) = mul(((m.at(row, c) % p) + p) % p, f, p);
    for (int r = 0; r < m.rows; ++r) {
      if (r == row) continue;
      i64 g = ((m.at(r, col) % p) + p) % p;
      if (g == 0) continue;
      for (int c = 0; c < m.cols; ++c)
        m.at(r, c) = sub(((m.at(r, c) % p) + p) % p, mul(g, m.at(row, c), p), p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Basis of the right nullspace {v : m v = 0}, deterministic: one vector per
/// free column in ascending column order.
inline std::vector<std::vector<i64>> nullspace(Mat m, i64 p) {
  auto pivots = rref(m, p);
  std::vector<int> pivot_row(m.cols, -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = static_cast<int>(r);
  std::vector<std::vector<i64>> basis;
  for (int c = 0; c < m.cols; ++c) {
    if (pivot_row[c] >= 0) continue;
    std::vector<i64> v(m.cols, 0);
    v[c] = 1;
    for (int pc = 0; pc < m.cols; ++pc)
      if (pivot_row[pc] >= 0) v[pc] = sub(0, m.at(pivot_row[pc], c), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial of a square matrix, coefficients ascending,
/// monic.  Reduces to upper Hessenberg form by similarity transforms, then
/// expands the leading principal minors.
inline std::vector<i64> charpoly(Mat h, i64 p) {
  const int d = h.rows;
  if (d != h.cols) throw InternalError("charpoly needs a square matrix");
  for (auto& v : h.a) v = ((v % p) + p) % p;
  // Hessenberg reduction.
  for (int j = 0; j + 2 < d; ++j) {
    int piv = -1;
    for (int r = j + 1; r < d; ++r)
      if (h.at(r, j) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != j + 1) {
      for (int c = 0; c < d; ++c) std::swap(h.at(piv, c), h.at(j + 1, c));
      for (int r = 0; r < d; ++r) std::swap(h.at(r, piv), h.at(r, j + 1));
    }
    i64 dinv = inv(h.at(j + 1, j), p);
    for (int r = j + 2; r < d; ++r) {
      i64 f = mul(h.at(r, j), dinv, p);
      if (f == 0) continue;
      for (int c = 0; c < d; ++c) h.at(r, c) = sub(h.at(r, c), mul(f, h.at(j + 1, c), p), p);
      for (int r2 = 0; r2 < d; ++r2)
        h.at(r2, j + 1) = add(h.at(r2, j + 1), mul(f, h.at(r2, r), p), p);
    }
  }
  // p_k = charpoly of the leading k x k block of the Hessenberg matrix.
  std::vector<std::vector<i64>> pk(d + 1);
  pk[0] = {1};
  for (int k = 1; k <= d; ++k) {
    std::vector<i64> cur(k + 1, 0);
    // (x - h[k-1,k-1]) * p_{k-1}
    for (int i = 0; i < k; ++i) {
      cur[i + 1] = add(cur[i + 1], pk[k - 1][i], p);
      cur[i] = sub(cur[i], mul(h.at(k - 1, k - 1), pk[k - 1][i], p), p);
    }
    i64 beta = 1;
    for (int i = 1; i < k; ++i) {
      beta = mul(beta, h.at(k - i, k - i - 1), p);
      if (beta == 0) break;
      i64 coef = mul(h.at(k - 1 - i, k - 1), beta, p);
      if (coef == 0) continue;
      for (int t = 0; t < k - i; ++t)
        cur[t] = sub(cur[t], mul(coef, pk[k - 1 - i][t], p), p);
    }
    pk[k] = std::move(cur);
  }
  return pk[d];
}

/// All roots in F_p of a polynomial (ascending coefficients), by direct scan;
/// returned in increasing order without multiplicity.
inline std::vector<i64> roots_in_fp(const std::vector<i64>& poly, i64 p) {
  std::vector<i64> out;
  for (i64 x = 0; x < p; ++x) {
    i64 v = 0;
    for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i)
      v = (mul(v, x, p) + ((poly[i] % p) + p)) % p;
    if (v == 0) out.push_back(x);
  }
  return out;
}

}  // namespace modp
}  // namespace gvz
