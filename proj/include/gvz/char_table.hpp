#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "modular.hpp"

namespace gvz {

/// One irreducible character.  values[c] is the exact value on class c,
/// stored over conductor = order of the class representative; the raw
/// coefficient vector is the eigenvalue multiplicity vector produced by the
/// lift, so it is deterministic.
struct Character {
  int index = 0;
  int degree = 0;
  std::vector<CyclotomicInt> values;
};

struct CharacterTable {
  const Group* group;
  ConjugacyClasses classes;
  std::vector<std::vector<int>> power_maps;  // [c][j] = class of rep_c^j
  std::vector<Character> chars;
  modp::i64 prime;      // Dixon prime used for the modular stage
  Subgroup center_sub;  // center of the group, reused by derived operations

  int count() const { return static_cast<int>(chars.size()); }
  int power_class(int c, long long j) const {
    return power_maps[c][static_cast<std::size_t>(j % static_cast<long long>(
        power_maps[c].size()))];
  }
};

/// Class multiplication coefficients a_{ijk}: K_i K_j = sum_k a_{ijk} K_k in
/// the class algebra.  Stored as a dense k^3 tensor.
struct ClassMatrices {
  int k = 0;
  std::vector<long long> a;
  long long at(int i, int j, int kk) const {
    return a[(static_cast<std::size_t>(i) * k + j) * k + kk];
  }
};

inline ClassMatrices class_matrices(const Group& G, const ConjugacyClasses& cc) {
  const int k = cc.count();
  ClassMatrices cm;
  cm.k = k;
  cm.a.assign(static_cast<std::size_t>(k) * k * k, 0);
  for (int x = 0; x < G.order(); ++x) {
    int i = cc.class_of[x];
    for (int y = 0; y < G.order(); ++y)
      ++cm.a[(static_cast<std::size_t>(i) * k + cc.class_of[y]) * k +
             cc.class_of[G.mul(x, y)]];
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      long long total = 0;
      for (int c = 0; c < k; ++c) {
        long long t = cm.a[(static_cast<std::size_t>(i) * k + j) * k + c];
        if (t % cc.sizes[c] != 0)
          throw InternalError("class product count not divisible by class size");
        cm.a[(static_cast<std::size_t>(i) * k + j) * k + c] = t / cc.sizes[c];
        total += t;
      }
      if (total != static_cast<long long>(cc.sizes[i]) * cc.sizes[j])
        throw InternalError("class matrix row sum mismatch");
    }
  return cm;
}

namespace detail {

/// Class matrix A_i over F_p, (A_i)_{jk} = a_{ijk}, built without the full
/// tensor.
inline modp::Mat class_matrix_mod_p(const Group& G, const ConjugacyClasses& cc,
                                    int i, modp::i64 p) {
  const int k = cc.count();
  std::vector<long long> tally(static_cast<std::size_t>(k) * k, 0);
  for (int x : cc.members[i])
    for (int y = 0; y < G.order(); ++y)
      ++tally[static_cast<std::size_t>(cc.class_of[y]) * k +
              cc.class_of[G.mul(x, y)]];
  modp::Mat m(k, k);
  for (int j = 0; j < k; ++j)
    for (int c = 0; c < k; ++c) {
      long long t = tally[static_cast<std::size_t>(j) * k + c];
      if (t % cc.sizes[c] != 0)
        throw InternalError("class product count not divisible by class size");
      m.at(j, c) = (t / cc.sizes[c]) % p;
    }
  return m;
}

/// Invariant subspace of F_p^k, kept as an RREF row basis so the splitting
/// process is deterministic.
struct Subspace {
  modp::Mat basis;          // dim x k, RREF
  std::vector<int> pivots;  // pivot column per row
};

inline Subspace make_subspace(modp::Mat rows, modp::i64 p) {
  Subspace s;
  auto piv = modp::rref(rows, p);
  s.basis = modp::Mat(static_cast<int>(piv.size()), rows.cols);
  for (int r = 0; r < s.basis.rows; ++r)
    for (int c = 0; c < rows.cols; ++c) s.basis.at(r, c) = rows.at(r, c);
  s.pivots = std::move(piv);
  return s;
}

}  // namespace detail

/// Exact character table by Dixon's method: all arithmetic happens in F_p for
/// a prime p = 1 (mod exponent) with p > 2 sqrt(|G|), after which the values
/// are lifted to cyclotomic integers by the inverse discrete Fourier
/// transform over the eigenvalue multiplicities.  Fully deterministic: class
/// matrices are applied in class order and eigenvalues are scanned in
/// ascending order, rows are sorted with the principal character first, then
/// by degree, then lexicographically on the value coefficient vectors.
inline CharacterTable character_table(const Group& G) {
  using modp::i64;
  const int n = G.order();
  ConjugacyClasses cc = conjugacy_classes(G);
  const int k = cc.count();

  // Power maps.
  std::vector<std::vector<int>> pm(k);
  for (int c = 0; c < k; ++c) {
    int o = cc.rep_orders[c];
    pm[c].resize(o);
    int g = 0;
    for (int j = 0; j < o; ++j) {
      pm[c][j] = cc.class_of[g];
      g = G.mul(g, cc.reps[c]);
    }
  }

  long long e = 1;
  for (int c = 0; c < k; ++c) e = std::lcm(e, (long long)cc.rep_orders[c]);
  const i64 p = modp::prime_one_mod(e, static_cast<i64>(2.0 * std::sqrt((double)n)) + 1);
  const i64 z_e = modp::pow(modp::primitive_root(p), (p - 1) / e, p);

  // Split F_p^k into common eigenspaces of the class matrices.
  std::vector<detail::Subspace> spaces;
  {
    modp::Mat id(k, k);
    for (int i = 0; i < k; ++i) id.at(i, i) = 1;
    spaces.push_back(detail::make_subspace(std::move(id), p));
  }
  for (int i = 1; i < k; ++i) {
    bool done = true;
    for (const auto& s : spaces) done = done && s.basis.rows == 1;
    if (done) break;
    modp::Mat A = detail::class_matrix_mod_p(G, cc, i, p);
    std::vector<detail::Subspace> next;
    for (auto& s : spaces) {
      const int dim = s.basis.rows;
      if (dim == 1) {
        next.push_back(std::move(s));
        continue;
      }
      // Restriction R with A * b_s = sum_t R[t][s] b_t; coordinates can be
      // read off the pivot columns because the basis is in RREF.
      std::vector<std::vector<i64>> img(dim, std::vector<i64>(k, 0));
      for (int sidx = 0; sidx < dim; ++sidx)
        for (int r = 0; r < k; ++r) {
          i64 acc = 0;
          for (int c = 0; c < k; ++c)
            acc = (acc + A.at(r, c) * s.basis.at(sidx, c)) % p;
          img[sidx][r] = acc;
        }
      modp::Mat R(dim, dim);
      for (int t = 0; t < dim; ++t)
        for (int sidx = 0; sidx < dim; ++sidx)
          R.at(t, sidx) = img[sidx][s.pivots[t]];
      // Verify invariance exactly: the image must equal B^T R.
      for (int sidx = 0; sidx < dim; ++sidx)
        for (int c = 0; c < k; ++c) {
          i64 acc = 0;
          for (int t = 0; t < dim; ++t)
            acc = (acc + s.basis.at(t, c) * R.at(t, sidx)) % p;
          if (acc != img[sidx][c])
            throw LiftFailure("class matrix does not preserve subspace");
        }
      auto poly = modp::charpoly(R, p);
      auto roots = modp::roots_in_fp(poly, p);
      int total = 0;
      for (i64 lambda : roots) {
        modp::Mat M = R;
        for (int t = 0; t < dim; ++t) M.at(t, t) = modp::sub(M.at(t, t), lambda, p);
        auto null = modp::nullspace(std::move(M), p);
        if (null.empty()) continue;
        total += static_cast<int>(null.size());
        modp::Mat rows(static_cast<int>(null.size()), k);
        for (std::size_t v = 0; v < null.size(); ++v)
          for (int c = 0; c < k; ++c) {
            i64 acc = 0;
            for (int t = 0; t < dim; ++t)
              acc = (acc + null[v][t] * s.basis.at(t, c)) % p;
            rows.at(static_cast<int>(v), c) = acc;
          }
        next.push_back(detail::make_subspace(std::move(rows), p));
      }
      if (total != dim)
        throw LiftFailure("class matrix restriction is not diagonalizable");
    }
    spaces = std::move(next);
  }
  for (const auto& s : spaces)
    if (s.basis.rows != 1)
      throw LiftFailure("class algebra failed to split into one-dimensional eigenspaces");
  if (static_cast<int>(spaces.size()) != k)
    throw LiftFailure("expected " + std::to_string(k) + " eigenspaces, got " +
                      std::to_string(spaces.size()));

  // Each eigenvector, normalized to w[0] = 1, carries one irreducible
  // character: w[j] = |C_j| chi(g_j) / chi(1) mod p.
  std::vector<Character> chars;
  long long degree_sq_sum = 0;
  const i64 sqrt_n = static_cast<i64>(std::sqrt((double)n) + 1e-9);
  for (const auto& s : spaces) {
    std::vector<i64> w(k);
    if (s.basis.at(0, 0) == 0)
      throw LiftFailure("eigenvector vanishes on the identity class");
    i64 norm = modp::inv(s.basis.at(0, 0), p);
    for (int j = 0; j < k; ++j) w[j] = modp::mul(s.basis.at(0, j), norm, p);

    i64 ssum = 0;
    for (int j = 0; j < k; ++j) {
      i64 term = modp::mul(w[j], w[cc.inverse_class[j]], p);
      ssum = modp::add(ssum, modp::mul(term, modp::inv(cc.sizes[j] % p, p), p), p);
    }
    if (ssum == 0) throw LiftFailure("degree formula has zero denominator");
    i64 d2 = modp::mul(n % p, modp::inv(ssum, p), p);
    int degree = 0;
    for (i64 d = 1; d <= sqrt_n; ++d)
      if (modp::mul(d % p, d % p, p) == d2) {
        degree = static_cast<int>(d);
        break;
      }
    if (degree == 0) throw LiftFailure("no integer degree matches the eigenvector");
    if (n % degree != 0)
      throw LiftFailure("degree " + std::to_string(degree) + " does not divide " +
                        std::to_string(n));
    degree_sq_sum += static_cast<long long>(degree) * degree;

    std::vector<i64> chi_p(k);
    for (int j = 0; j < k; ++j)
      chi_p[j] = modp::mul(modp::mul(degree % p, w[j], p),
                           modp::inv(cc.sizes[j] % p, p), p);

    Character chi;
    chi.degree = degree;
    chi.values.reserve(k);
    for (int c = 0; c < k; ++c) {
      const int o = cc.rep_orders[c];
      const i64 z_o = modp::pow(z_e, e / o, p);
      const i64 z_inv = modp::inv(z_o, p);
      const i64 o_inv = modp::inv(o % p, p);
      std::vector<long long> mult(o);
      long long total = 0;
      for (int t = 0; t < o; ++t) {
        i64 acc = 0;
        for (int sdx = 0; sdx < o; ++sdx)
          acc = modp::add(
              acc,
              modp::mul(chi_p[pm[c][sdx]],
                        modp::pow(z_inv, static_cast<i64>(sdx) * t % o, p), p),
              p);
        i64 m = modp::mul(acc, o_inv, p);
        if (m > degree)
          throw LiftFailure("eigenvalue multiplicity " + std::to_string(m) +
                            " exceeds degree " + std::to_string(degree));
        mult[t] = m;
        total += m;
      }
      if (total != degree)
        throw LiftFailure("eigenvalue multiplicities do not sum to the degree");
      chi.values.emplace_back(o, std::move(mult));
    }
    chars.push_back(std::move(chi));
  }
  if (degree_sq_sum != n)
    throw LiftFailure("degree squares sum to " + std::to_string(degree_sq_sum) +
                      ", expected " + std::to_string(n));

  // Deterministic row order: principal first, then by degree, then by the
  // value coefficient vectors.
  auto is_principal = [&](const Character& c) {
    if (c.degree != 1) return false;
    for (const auto& v : c.values) {
      const auto& raw = v.coeffs();
      if (raw[0] != 1) return false;
      for (std::size_t i = 1; i < raw.size(); ++i)
        if (raw[i] != 0) return false;
    }
    return true;
  };
  std::sort(chars.begin(), chars.end(), [&](const Character& a, const Character& b) {
    bool pa = is_principal(a), pb = is_principal(b);
    if (pa != pb) return pa;
    if (a.degree != b.degree) return a.degree < b.degree;
    for (int c = 0; c < k; ++c) {
      const auto& ca = a.values[c].coeffs();
      const auto& cb = b.values[c].coeffs();
      if (ca != cb) return ca < cb;
    }
    return false;
  });
  for (int i = 0; i < k; ++i) chars[i].index = i;

  // Exact row norms: sum_c |C_c| chi(c) conj(chi(c)) = |G|.
  for (const auto& chi : chars) {
    CyclotomicInt acc(0);
    for (int c = 0; c < k; ++c)
      acc += static_cast<long long>(cc.sizes[c]) *
             (chi.values[c] * chi.values[c].conjugate());
    if (!(acc == static_cast<long long>(n)))
      throw LiftFailure("character row norm is not |G|");
  }

  Subgroup Z = center(G);
  return CharacterTable{&G, std::move(cc), std::move(pm), std::move(chars), p,
                        std::move(Z)};
}

/// ker(chi) = {g : chi(g) = chi(1)}; a union of classes, hence normal.
inline Subgroup kernel_of(const CharacterTable& T, int chi) {
  const auto& ch = T.chars[chi];
  Bitset bits(T.group->order());
  for (int c = 0; c < T.classes.count(); ++c)
    if (ch.values[c] == static_cast<long long>(ch.degree))
      for (int g : T.classes.members[c]) bits.set(g);
  Subgroup K(*T.group, std::move(bits));
  if (!K.is_normal()) throw InternalError("character kernel is not normal");
  return K;
}

/// Z(chi) = {g : |chi(g)| = chi(1)}, decided exactly via
/// chi(g) conj(chi(g)) = chi(1)^2.  Also checks the characterization
/// Z(chi)/ker(chi) = Z(G/ker(chi)) through an explicit quotient.
inline Subgroup center_of(const CharacterTable& T, int chi) {
  const auto& ch = T.chars[chi];
  const long long d2 = static_cast<long long>(ch.degree) * ch.degree;
  Bitset bits(T.group->order());
  for (int c = 0; c < T.classes.count(); ++c)
    if (ch.values[c] * ch.values[c].conjugate() == d2)
      for (int g : T.classes.members[c]) bits.set(g);
  Subgroup Z(*T.group, std::move(bits));
  if (!Z.is_normal()) throw InternalError("character center is not normal");
  Subgroup K = kernel_of(T, chi);
  QuotientMap q = quotient(*T.group, K);
  Subgroup Zq = center(q.image);
  for (int g = 0; g < T.group->order(); ++g)
    if (Zq.contains(q.proj[g]) != Z.contains(g))
      throw InternalError("Z(chi)/ker(chi) does not match Z(G/ker chi)");
  return Z;
}

/// True iff chi vanishes on every class whose representative lies outside S.
inline bool vanishes_off(const CharacterTable& T, int chi, const Subgroup& S) {
  const auto& ch = T.chars[chi];
  for (int c = 0; c < T.classes.count(); ++c)
    if (!S.contains(T.classes.reps[c]) && !ch.values[c].is_zero()) return false;
  return true;
}

namespace detail {

/// Recognizes v = zeta_o^j and returns j; the candidate comes from a floating
/// approximation and is then verified exactly (with a full scan fallback).
inline int root_exponent(const CyclotomicInt& v, int o) {
  auto z = v.approx();
  double ang = std::atan2(z.imag(), z.real());
  const double tau = 6.283185307179586476925286766559;
  if (ang < 0) ang += tau;
  int guess = static_cast<int>(std::llround(ang * o / tau)) % o;
  if (v == CyclotomicInt::root(o, guess)) return guess;
  for (int j = 0; j < o; ++j)
    if (v == CyclotomicInt::root(o, j)) return j;
  throw InternalError("value is not a root of unity of the expected order");
}

inline std::pair<long long, long long> reduced_fraction(long long num, long long den) {
  num = ((num % den) + den) % den;
  long long g = std::gcd(num == 0 ? den : num, den);
  return {num / g, den / g};
}

}  // namespace detail

/// Restriction of chi to the center: the unique linear lambda on Z(G) with
/// chi(z) = chi(1) lambda(z).  Generated values are exact roots of unity;
/// construction verifies lambda is a homomorphism with
/// ker(lambda) = ker(chi) intersect Z(G).
struct CentralCharacter {
  std::vector<int> z_elements;                          // ascending in G
  std::vector<CyclotomicInt> values;                    // lambda(z)
  std::vector<std::pair<long long, long long>> turns;   // lambda(z) = e^(2 pi i num/den)

  bool operator==(const CentralCharacter& o) const {
    return z_elements == o.z_elements && turns == o.turns;
  }

  const CyclotomicInt& value_at(int g) const {
    auto it = std::lower_bound(z_elements.begin(), z_elements.end(), g);
    if (it == z_elements.end() || *it != g)
      throw NotCentralElement("element " + std::to_string(g) +
                              " is not in the center");
    return values[static_cast<std::size_t>(it - z_elements.begin())];
  }

  bool is_faithful() const {
    for (std::size_t i = 0; i < turns.size(); ++i)
      if (turns[i].first == 0 && z_elements[i] != 0) return false;
    return true;
  }

  /// Membership bitset of ker(lambda) in a parent group of order n.
  Bitset kernel_bits(int n) const {
    Bitset b(n);
    for (std::size_t i = 0; i < turns.size(); ++i)
      if (turns[i].first == 0) b.set(z_elements[i]);
    return b;
  }
};

inline CentralCharacter central_character(const CharacterTable& T, int chi) {
  const Group& G = *T.group;
  const auto& ch = T.chars[chi];
  const Subgroup& Z = T.center_sub;
  CentralCharacter lam;
  lam.z_elements = Z.elements();
  for (int z : lam.z_elements) {
    CyclotomicInt v = ch.values[T.classes.class_of[z]].divided_by(ch.degree);
    int o = G.element_order(z);
    int j = detail::root_exponent(v, o);
    lam.values.push_back(CyclotomicInt::root(o, j));
    lam.turns.push_back(detail::reduced_fraction(j, o));
  }
  // Homomorphism check on the rotation numbers.
  auto turn_of = [&](int g) {
    auto it = std::lower_bound(lam.z_elements.begin(), lam.z_elements.end(), g);
    return lam.turns[static_cast<std::size_t>(it - lam.z_elements.begin())];
  };
  for (int a : lam.z_elements)
    for (int b : lam.z_elements) {
      auto ta = turn_of(a), tb = turn_of(b), tc = turn_of(G.mul(a, b));
      long long den = std::lcm(ta.second, tb.second);
      auto sum = detail::reduced_fraction(
          ta.first * (den / ta.second) + tb.first * (den / tb.second), den);
      if (sum != tc)
        throw InternalError("central character is not a homomorphism");
    }
  // ker(lambda) = ker(chi) intersect Z(G).
  Subgroup K = kernel_of(T, chi);
  for (std::size_t i = 0; i < lam.z_elements.size(); ++i) {
    bool in_ker_lam = lam.turns[i].first == 0;
    if (in_ker_lam != K.contains(lam.z_elements[i]))
      throw InternalError("ker(lambda) differs from ker(chi) on the center");
  }
  return lam;
}

/// All irreducible characters of Z(G) as central characters on the parent's
/// center elements, in the row order of the character table of Z(G).
inline std::vector<CentralCharacter> irr_of_center(const Group& G,
                                                   const Subgroup& Z) {
  std::vector<int> to_parent;
  Group Zg = subgroup_as_group(G, Z, to_parent, "Z(" + G.name() + ")");
  CharacterTable TZ = character_table(Zg);
  std::vector<CentralCharacter> out;
  for (int r = 0; r < TZ.count(); ++r) {
    if (TZ.chars[r].degree != 1)
      throw InternalError("center has a nonlinear character");
    CentralCharacter lam;
    lam.z_elements = to_parent;
    for (int i = 0; i < Zg.order(); ++i) {
      const CyclotomicInt& v = TZ.chars[r].values[TZ.classes.class_of[i]];
      int o = Zg.element_order(i);
      int j = detail::root_exponent(v, o);
      lam.values.push_back(CyclotomicInt::root(o, j));
      lam.turns.push_back(detail::reduced_fraction(j, o));
    }
    out.push_back(std::move(lam));
  }
  return out;
}

inline std::vector<CentralCharacter> all_central_characters(const CharacterTable& T) {
  std::vector<CentralCharacter> out;
  out.reserve(T.count());
  for (int i = 0; i < T.count(); ++i) out.push_back(central_character(T, i));
  return out;
}

/// Number of irreducible constituents of lambda^G, i.e. of characters whose
/// central restriction is lambda (Frobenius reciprocity).  The restrictions
/// argument must be all_central_characters(T).
inline int induced_constituent_count(
    const CharacterTable& T, const CentralCharacter& lambda,
    const std::vector<CentralCharacter>& restrictions) {
  (void)T;
  int count = 0;
  for (const auto& r : restrictions)
    if (r == lambda) ++count;
  return count;
}

inline int induced_constituent_count(const CharacterTable& T,
                                     const CentralCharacter& lambda) {
  return induced_constituent_count(T, lambda, all_central_characters(T));
}

/// lambda is fully ramified iff lambda^G has a unique constituent chi; when
/// true, chi(1)^2 = |G : Z(G)| and chi vanishes off the center (classical
/// facts, verified here on every call).
inline bool is_fully_ramified(const CharacterTable& T,
                              const CentralCharacter& lambda,
                              const std::vector<CentralCharacter>& restrictions) {
  int found = -1, count = 0;
  for (int i = 0; i < T.count(); ++i)
    if (restrictions[i] == lambda) {
      ++count;
      found = i;
    }
  if (count == 0) throw InternalError("central character has no constituent");
  if (count != 1) return false;
  const Group& G = *T.group;
  long long index = G.order() / T.center_sub.order();
  long long d = T.chars[found].degree;
  if (d * d != index)
    throw InternalError("unique constituent does not satisfy chi(1)^2 = |G:Z|");
  if (!vanishes_off(T, found, T.center_sub))
    throw InternalError("unique constituent does not vanish off the center");
  return true;
}

inline bool is_fully_ramified(const CharacterTable& T,
                              const CentralCharacter& lambda) {
  return is_fully_ramified(T, lambda, all_central_characters(T));
}

/// Text dump: "order n classes k", the class sizes, then one line per
/// character: the degree followed by each value as "m:c_0,...,c_{m-1}"
/// (canonical cyclotomic coefficients over the conductor m = order of the
/// class representative).
inline std::string dump_table(const CharacterTable& T) {
  std::ostringstream out;
  out << "order " << T.group->order() << " classes " << T.classes.count() << "\n";
  for (int c = 0; c < T.classes.count(); ++c)
    out << (c ? " " : "") << T.classes.sizes[c];
  out << "\n";
  for (const auto& ch : T.chars) {
    out << ch.degree;
    for (const auto& v : ch.values) out << " " << v.dump();
    out << "\n";
  }
  return out.str();
}

}  // namespace gvz
