#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace gvz {

namespace detail {

/// Exact division of integer polynomials (divisor monic); remainder must be
/// zero.  Coefficients ascending.
inline std::vector<long long> exact_poly_div(std::vector<long long> num,
                                             const std::vector<long long>& den) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  if (dd < 0 || den.back() != 1) throw InternalError("division by non-monic polynomial");
  if (dn < dd) throw InternalError("polynomial division underflow");
  std::vector<long long> quo(dn - dd + 1, 0);
  for (int i = dn; i >= dd; --i) {
    long long c = num[i];
    if (c == 0) continue;
    quo[i - dd] = c;
    for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (long long c : num)
    if (c != 0) throw InternalError("polynomial division is not exact");
  return quo;
}

/// m-th cyclotomic polynomial, coefficients ascending, computed by dividing
/// x^m - 1 by all proper-divisor cyclotomics.  Cached per thread so parallel
/// analyses share no mutable state.
inline const std::vector<long long>& cyclotomic_polynomial(int m) {
  thread_local std::map<int, std::vector<long long>> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<long long> poly(m + 1, 0);
  poly[0] = -1;
  poly[m] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) poly = exact_poly_div(std::move(poly), cyclotomic_polynomial(d));
  return cache.emplace(m, std::move(poly)).first->second;
}

}  // namespace detail

/// Element of Z[zeta_m]: integer coefficients on the powers
/// zeta_m^0..zeta_m^{m-1}.  The representation is not unique; equality and
/// the zero test reduce modulo the m-th cyclotomic polynomial, under which
/// the canonical form (degree below phi(m)) is unique.
class CyclotomicInt {
 public:
  CyclotomicInt() : m_(1), c_{0} {}
  explicit CyclotomicInt(long long v) : m_(1), c_{v} {}
  CyclotomicInt(int conductor, std::vector<long long> coeffs)
      : m_(conductor), c_(std::move(coeffs)) {
    if (m_ < 1 || static_cast<int>(c_.size()) != m_)
      throw InternalError("cyclotomic coefficient vector must have length m");
  }

  /// zeta_m^k.
  static CyclotomicInt root(int m, long long k) {
    std::vector<long long> c(m, 0);
    c[static_cast<std::size_t>(((k % m) + m) % m)] = 1;
    return CyclotomicInt(m, std::move(c));
  }

  int conductor() const { return m_; }
  const std::vector<long long>& coeffs() const { return c_; }

  /// Rewrites over Z[zeta_M] for any multiple M of the conductor.
  CyclotomicInt lifted_to(int M) const {
    if (M % m_ != 0) throw InternalError("conductor lift must be to a multiple");
    if (M == m_) return *this;
    std::vector<long long> c(M, 0);
    const int t = M / m_;
    for (int i = 0; i < m_; ++i) c[static_cast<std::size_t>(i) * t] = c_[i];
    return CyclotomicInt(M, std::move(c));
  }

  friend CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b) {
    int L = std::lcm(a.m_, b.m_);
    CyclotomicInt x = a.lifted_to(L), y = b.lifted_to(L);
    for (int i = 0; i < L; ++i) x.c_[i] += y.c_[i];
    return x;
  }
  friend CyclotomicInt operator-(const CyclotomicInt& a, const CyclotomicInt& b) {
    int L = std::lcm(a.m_, b.m_);
    CyclotomicInt x = a.lifted_to(L), y = b.lifted_to(L);
    for (int i = 0; i < L; ++i) x.c_[i] -= y.c_[i];
    return x;
  }
  friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    int L = std::lcm(a.m_, b.m_);
    CyclotomicInt x = a.lifted_to(L), y = b.lifted_to(L);
    std::vector<long long> r(L, 0);
    for (int i = 0; i < L; ++i) {
      if (x.c_[i] == 0) continue;
      for (int j = 0; j < L; ++j) {
        if (y.c_[j] == 0) continue;
        int k = i + j;
        if (k >= L) k -= L;
        r[k] += x.c_[i] * y.c_[j];
      }
    }
    return CyclotomicInt(L, std::move(r));
  }
  friend CyclotomicInt operator*(long long s, const CyclotomicInt& a) {
    CyclotomicInt x = a;
    for (auto& c : x.c_) c *= s;
    return x;
  }
  CyclotomicInt& operator+=(const CyclotomicInt& o) { return *this = *this + o; }

  /// Complex conjugate: zeta^k -> zeta^{-k}.
  CyclotomicInt conjugate() const {
    std::vector<long long> c(m_, 0);
    for (int i = 0; i < m_; ++i) c[(m_ - i) % m_] += c_[i];
    return CyclotomicInt(m_, std::move(c));
  }

  /// Canonical coefficients: remainder modulo the m-th cyclotomic polynomial,
  /// zero-padded back to length m.
  std::vector<long long> canonical() const {
    std::vector<long long> r = c_;
    const auto& phi = detail::cyclotomic_polynomial(m_);
    const int deg = static_cast<int>(phi.size()) - 1;
    for (int i = m_ - 1; i >= deg; --i) {
      long long c = r[i];
      if (c == 0) continue;
      for (int j = 0; j <= deg; ++j) r[i - deg + j] -= c * phi[j];
    }
    return r;
  }

  bool is_zero() const {
    for (long long c : canonical())
      if (c != 0) return false;
    return true;
  }

  bool operator==(const CyclotomicInt& o) const {
    if (m_ == o.m_ && c_ == o.c_) return true;
    return (*this - o).is_zero();
  }
  bool operator==(long long v) const { return *this == CyclotomicInt(v); }

  /// The rational integer equal to this value, if it is one.
  std::optional<long long> as_integer() const {
    auto r = canonical();
    for (std::size_t i = 1; i < r.size(); ++i)
      if (r[i] != 0) return std::nullopt;
    return r[0];
  }

  /// Exact division by a nonzero rational integer; throws if any canonical
  /// coefficient is not divisible.
  CyclotomicInt divided_by(long long d) const {
    if (d == 0) throw InternalError("division by zero");
    auto r = canonical();
    for (auto& c : r) {
      if (c % d != 0)
        throw InternalError("cyclotomic value is not divisible by " +
                            std::to_string(d));
      c /= d;
    }
    return CyclotomicInt(m_, std::move(r));
  }

  std::complex<double> approx() const {
    auto r = canonical();
    std::complex<double> s(0.0, 0.0);
    const double tau = 6.283185307179586476925286766559;
    for (int i = 0; i < m_; ++i)
      if (r[i] != 0)
        s += static_cast<double>(r[i]) *
             std::complex<double>(std::cos(tau * i / m_), std::sin(tau * i / m_));
    return s;
  }

  /// "m:c_0,c_1,...,c_{m-1}" with canonical coefficients.
  std::string dump() const {
    auto r = canonical();
    std::ostringstream out;
    out << m_ << ":";
    for (int i = 0; i < m_; ++i) out << (i ? "," : "") << r[i];
    return out.str();
  }

 private:
  int m_;
  std::vector<long long> c_;
};

}  // namespace gvz
