#pragma once

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "io.hpp"

namespace gvz {

namespace detail {

inline bool is_prime_int(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void check_order_cap(long long order, const Limits& lim,
                            const std::string& what) {
  if (order > lim.order_cap)
    throw ParamOutOfRange(what + " order " + std::to_string(order) +
                          " exceeds cap " + std::to_string(lim.order_cap));
}

}  // namespace detail

/// Cyclic group C_n; element i is g^i.
inline Group cyclic_group(int n, const Limits& lim = {}) {
  if (n < 1) throw ParamOutOfRange("cyclic order must be at least 1");
  detail::check_order_cap(n, lim, "cyclic");
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      mul[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  return Group(n, std::move(mul), "C" + std::to_string(n), Group::Check::full,
               lim);
}

/// Direct sum of cyclic groups C_{d1} x ... x C_{dk}; elements are tuples in
/// mixed-radix order with the first factor most significant.
inline Group abelian_group(const std::vector<int>& parts, const Limits& lim = {}) {
  if (parts.empty()) throw ParamOutOfRange("abelian family needs at least one part");
  long long n = 1;
  for (int d : parts) {
    if (d < 1) throw ParamOutOfRange("abelian part must be at least 1");
    n *= d;
    detail::check_order_cap(n, lim, "abelian");
  }
  const int nn = static_cast<int>(n);
  const int k = static_cast<int>(parts.size());
  std::vector<int> digits(k), other(k);
  std::vector<int> mul(static_cast<std::size_t>(nn) * nn);
  auto decode = [&](int x, std::vector<int>& d) {
    for (int i = k - 1; i >= 0; --i) {
      d[i] = x % parts[i];
      x /= parts[i];
    }
  };
  for (int a = 0; a < nn; ++a) {
    decode(a, digits);
    for (int b = 0; b < nn; ++b) {
      decode(b, other);
      int v = 0;
      for (int i = 0; i < k; ++i) v = v * parts[i] + (digits[i] + other[i]) % parts[i];
      mul[static_cast<std::size_t>(a) * nn + b] = v;
    }
  }
  std::string name;
  for (int i = 0; i < k; ++i) name += (i ? "x" : "") + ("C" + std::to_string(parts[i]));
  return Group(nn, std::move(mul), std::move(name), Group::Check::full, lim);
}

/// Dihedral group of the given (even) order 2m: indices 0..m-1 are r^i,
/// indices m..2m-1 are s r^i.
inline Group dihedral_group(int order, const Limits& lim = {}) {
  if (order < 2 || order % 2 != 0)
    throw ParamOutOfRange("dihedral order must be even and at least 2");
  detail::check_order_cap(order, lim, "dihedral");
  const int m = order / 2;
  const int n = order;
  auto idx = [m](int flip, int i) { return flip * m + ((i % m) + m) % m; };
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int f1 = 0; f1 < 2; ++f1)
    for (int i = 0; i < m; ++i)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int j = 0; j < m; ++j) {
          // (s^f1 r^i)(s^f2 r^j) = s^(f1+f2) r^(j + i*(-1)^f2)
          int v = f2 ? idx((f1 + 1) & 1, j - i) : idx(f1, i + j);
          mul[static_cast<std::size_t>(idx(f1, i)) * n + idx(f2, j)] = v;
        }
  return Group(n, std::move(mul), "D" + std::to_string(order), Group::Check::full,
               lim);
}

/// Generalized quaternion (dicyclic) group of order 4m, m >= 2:
/// <a, b | a^{2m} = 1, b^2 = a^m, b^{-1} a b = a^{-1}>; index of a^i b^j is
/// i + 2m*j.
inline Group generalized_quaternion_group(int order, const Limits& lim = {}) {
  if (order < 8 || order % 4 != 0)
    throw ParamOutOfRange(
        "generalized quaternion order must be a multiple of 4, at least 8");
  detail::check_order_cap(order, lim, "generalized quaternion");
  const int m = order / 4;
  const int tm = 2 * m;
  const int n = order;
  auto idx = [tm](int i, int j) { return ((i % tm) + tm) % tm + tm * j; };
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < tm; ++i)
    for (int j = 0; j < 2; ++j)
      for (int i2 = 0; i2 < tm; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          // (a^i b^j)(a^i2 b^j2): move b^j across a^i2, fold b^2 = a^m.
          int ii = j ? i - i2 : i + i2;
          int v = (j && j2) ? idx(ii + m, 0) : idx(ii, j ^ j2);
          mul[static_cast<std::size_t>(idx(i, j)) * n + idx(i2, j2)] = v;
        }
  return Group(n, std::move(mul), "Q" + std::to_string(order), Group::Check::full,
               lim);
}

/// Semidihedral group of order 2^k, k >= 4:
/// <r, s | r^{2^{k-1}} = s^2 = 1, s r s = r^{2^{k-2}-1}>; index of r^i s^j is
/// i + 2^{k-1}*j.
inline Group semidihedral_group(int order, const Limits& lim = {}) {
  int k = 0;
  while ((1 << k) < order) ++k;
  if ((1 << k) != order || order < 16)
    throw ParamOutOfRange("semidihedral order must be a power of 2, at least 16");
  detail::check_order_cap(order, lim, "semidihedral");
  const int m = order / 2;
  const int t = m / 2 - 1;  // s r s = r^t
  const int n = order;
  auto idx = [m](int i, int j) { return ((i % m) + m) % m + m * j; };
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < 2; ++j)
      for (int i2 = 0; i2 < m; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          long long ii = j ? i + static_cast<long long>(i2) * t : i + i2;
          int v = idx(static_cast<int>(ii % m), j ^ j2);
          mul[static_cast<std::size_t>(idx(i, j)) * n + idx(i2, j2)] = v;
        }
  return Group(n, std::move(mul), "SD" + std::to_string(order),
               Group::Check::full, lim);
}

/// Heisenberg-type group of order p^(2w+1): tuples (a, b, c) with a, b in
/// (Z/p)^w, c in Z/p and (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a.b').
/// For odd p this is extraspecial of exponent p.
inline Group heisenberg_group(int p, int width = 1, const Limits& lim = {}) {
  if (!detail::is_prime_int(p)) throw ParamOutOfRange("heisenberg modulus must be prime");
  if (width < 1) throw ParamOutOfRange("heisenberg width must be at least 1");
  long long n64 = 1;
  for (int i = 0; i < 2 * width + 1; ++i) {
    n64 *= p;
    detail::check_order_cap(n64, lim, "heisenberg");
  }
  const int n = static_cast<int>(n64);
  const int w = width;
  const int digits = 2 * w + 1;
  std::vector<int> da(digits), db(digits);
  auto decode = [&](int x, std::vector<int>& d) {
    for (int i = digits - 1; i >= 0; --i) {
      d[i] = x % p;
      x /= p;
    }
  };
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    decode(x, da);
    for (int y = 0; y < n; ++y) {
      decode(y, db);
      int dot = 0;
      for (int i = 0; i < w; ++i) dot = (dot + da[i] * db[w + i]) % p;
      int v = 0;
      for (int i = 0; i < 2 * w; ++i) v = v * p + (da[i] + db[i]) % p;
      v = v * p + (da[2 * w] + db[2 * w] + dot) % p;
      mul[static_cast<std::size_t>(x) * n + y] = v;
    }
  }
  std::string name = "Heis(" + std::to_string(p) + ")";
  if (w > 1) name = "Heis(" + std::to_string(p) + ",w" + std::to_string(w) + ")";
  return Group(n, std::move(mul), std::move(name), Group::Check::full, lim);
}

/// Modular group of order p^3 for odd p:
/// <a, b | a^{p^2} = b^p = 1, b^{-1} a b = a^{1+p}>; extraspecial of
/// exponent p^2.  Index of a^i b^j is i*p + j.
inline Group modular_p3_group(int p, const Limits& lim = {}) {
  if (!detail::is_prime_int(p) || p == 2)
    throw ParamOutOfRange("modular p^3 group needs an odd prime");
  long long n64 = static_cast<long long>(p) * p * p;
  detail::check_order_cap(n64, lim, "extraspecial");
  const int p2 = p * p;
  const int n = static_cast<int>(n64);
  // powers of (1+p) mod p^2
  std::vector<int> pw(p);
  pw[0] = 1;
  for (int j = 1; j < p; ++j)
    pw[j] = static_cast<int>(static_cast<long long>(pw[j - 1]) * (1 + p) % p2);
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < p2; ++i)
    for (int j = 0; j < p; ++j)
      for (int i2 = 0; i2 < p2; ++i2)
        for (int j2 = 0; j2 < p; ++j2) {
          // b^j a^{i2} = a^{i2 (1+p)^j} b^j
          int ii = static_cast<int>((i + static_cast<long long>(i2) * pw[j]) % p2);
          int jj = (j + j2) % p;
          mul[static_cast<std::size_t>(i) * p * n + j * n + i2 * p + j2] =
              ii * p + jj;
        }
  return Group(n, std::move(mul), "M" + std::to_string(n), Group::Check::full,
               lim);
}

/// Central product identifying the (cyclic, prime-order) centers of A and B:
/// (A x B) / <(z_A, z_B^{-1})> with z_* the minimal-index generator of each
/// center.
inline Group central_product(const Group& A, const Group& B,
                             const Limits& lim = {}) {
  Subgroup ZA = center(A), ZB = center(B);
  if (ZA.order() != ZB.order() || !detail::is_prime_int(ZA.order()))
    throw ParamOutOfRange(
        "central product requires centers of equal prime order");
  int zA = ZA.elements()[1];
  int zB = ZB.elements()[1];
  Limits wide = lim;
  wide.order_cap = std::max(lim.order_cap, A.order() * B.order());
  Group D = direct_product(A, B, wide);
  int glue = zA * B.order() + B.inv(zB);
  QuotientMap q = quotient(D, subgroup_generated(D, {glue}));
  Group out = std::move(q.image);
  detail::check_order_cap(out.order(), lim, "central product");
  out.set_name(A.name() + " o " + B.name());
  return out;
}

/// Extraspecial group of order p^(2w+1).  exponent_p selects the exponent-p
/// type for odd p (the '+' type for p = 2); the other choice gives exponent
/// p^2 (the '-' type for p = 2).
inline Group extraspecial_group(int p, bool exponent_p, int width = 1,
                                const Limits& lim = {}) {
  if (!detail::is_prime_int(p)) throw ParamOutOfRange("extraspecial p must be prime");
  if (width < 1) throw ParamOutOfRange("extraspecial width must be at least 1");
  long long n64 = 1;
  for (int i = 0; i < 2 * width + 1; ++i) {
    n64 *= p;
    detail::check_order_cap(n64, lim, "extraspecial");
  }
  Group E = [&]() {
    if (p == 2) {
      Group base = exponent_p ? dihedral_group(8, lim)
                              : generalized_quaternion_group(8, lim);
      for (int i = 1; i < width; ++i) base = central_product(base, dihedral_group(8, lim), lim);
      return base;
    }
    if (exponent_p) return heisenberg_group(p, width, lim);
    Group base = modular_p3_group(p, lim);
    for (int i = 1; i < width; ++i) base = central_product(base, heisenberg_group(p, 1, lim), lim);
    return base;
  }();
  std::string suffix = p == 2 ? (exponent_p ? "_plus" : "_minus")
                              : (exponent_p ? "_exp_p" : "_exp_p2");
  E.set_name("E" + std::to_string(n64) + suffix);
  return E;
}

/// Symmetric group on {0..n-1}, n <= 5, as the closure of (0 1) and the
/// n-cycle.
inline Group symmetric_group(int n, const Limits& lim = {}) {
  if (n < 1 || n > 5) throw ParamOutOfRange("symmetric degree must be in [1,5]");
  std::vector<std::vector<int>> gens;
  if (n >= 2) {
    std::vector<int> t(n);
    for (int i = 0; i < n; ++i) t[i] = i;
    t[0] = 1;
    t[1] = 0;
    gens.push_back(t);
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
    gens.push_back(c);
  }
  return group_from_permutations(std::max(n, 1), gens, "S" + std::to_string(n),
                                 lim);
}

/// Alternating group on {0..n-1}, n <= 5.
inline Group alternating_group(int n, const Limits& lim = {}) {
  if (n < 1 || n > 5) throw ParamOutOfRange("alternating degree must be in [1,5]");
  std::vector<std::vector<int>> gens;
  auto cycle = [n](std::vector<int> pts) {
    std::vector<int> g(n);
    for (int i = 0; i < n; ++i) g[i] = i;
    for (std::size_t i = 0; i < pts.size(); ++i)
      g[pts[i]] = pts[(i + 1) % pts.size()];
    return g;
  };
  if (n >= 3) gens.push_back(cycle({0, 1, 2}));
  if (n == 4) gens.push_back(cycle({1, 2, 3}));
  if (n == 5) gens.push_back(cycle({0, 1, 2, 3, 4}));
  return group_from_permutations(std::max(n, 1), gens, "A" + std::to_string(n),
                                 lim);
}

namespace detail {

inline long long parse_family_int(const std::string& tok) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParamOutOfRange("expected integer family parameter, got '" + tok + "'");
  }
}

}  // namespace detail

/// Named family constructor.  Recognized ids: cyclic:n, abelian:d1,...,dk,
/// dihedral:order, generalized_quaternion:order (alias quaternion),
/// semidihedral:order, extraspecial:p,exp_p|exp_p2[,width],
/// symmetric:n, alternating:n, heisenberg_mod:p.
inline Group family(const std::string& id, const std::vector<std::string>& params,
                    const Limits& lim = {}) {
  auto want = [&](std::size_t k) {
    if (params.size() != k)
      throw ParamOutOfRange("family '" + id + "' expects " + std::to_string(k) +
                            " parameter(s), got " + std::to_string(params.size()));
  };
  if (id == "cyclic") {
    want(1);
    return cyclic_group(static_cast<int>(detail::parse_family_int(params[0])), lim);
  }
  if (id == "abelian") {
    if (params.empty())
      throw ParamOutOfRange("family 'abelian' expects at least one parameter");
    std::vector<int> parts;
    for (const auto& t : params)
      parts.push_back(static_cast<int>(detail::parse_family_int(t)));
    return abelian_group(parts, lim);
  }
  if (id == "dihedral") {
    want(1);
    return dihedral_group(static_cast<int>(detail::parse_family_int(params[0])), lim);
  }
  if (id == "generalized_quaternion" || id == "quaternion") {
    want(1);
    return generalized_quaternion_group(
        static_cast<int>(detail::parse_family_int(params[0])), lim);
  }
  if (id == "semidihedral") {
    want(1);
    return semidihedral_group(static_cast<int>(detail::parse_family_int(params[0])),
                              lim);
  }
  if (id == "extraspecial") {
    if (params.size() != 2 && params.size() != 3)
      throw ParamOutOfRange("family 'extraspecial' expects p,exp_p|exp_p2[,width]");
    int p = static_cast<int>(detail::parse_family_int(params[0]));
    bool exp_p;
    if (params[1] == "exp_p" || params[1] == "plus" || params[1] == "+")
      exp_p = true;
    else if (params[1] == "exp_p2" || params[1] == "minus" || params[1] == "-")
      exp_p = false;
    else
      throw ParamOutOfRange("extraspecial variant must be exp_p or exp_p2, got '" +
                            params[1] + "'");
    int width = params.size() == 3
                    ? static_cast<int>(detail::parse_family_int(params[2]))
                    : 1;
    return extraspecial_group(p, exp_p, width, lim);
  }
  if (id == "symmetric") {
    want(1);
    return symmetric_group(static_cast<int>(detail::parse_family_int(params[0])), lim);
  }
  if (id == "alternating") {
    want(1);
    return alternating_group(static_cast<int>(detail::parse_family_int(params[0])),
                             lim);
  }
  if (id == "heisenberg_mod" || id == "heisenberg") {
    want(1);
    return heisenberg_group(static_cast<int>(detail::parse_family_int(params[0])), 1,
                            lim);
  }
  throw UnknownFamily("unknown family '" + id + "'");
}

/// Parses "name:p1,p2,..." (parameters optional for none-parameter families).
inline Group family_from_spec(const std::string& spec, const Limits& lim = {}) {
  std::string id = spec;
  std::vector<std::string> params;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    id = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    std::string tok;
    std::istringstream ss(rest);
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) params.push_back(tok);
  }
  return family(id, params, lim);
}

}  // namespace gvz
