#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"

namespace gvz {

/// Construction-time limits, overridable from config.
struct Limits {
  int order_cap = 5000;
  bool exhaustive_assoc = false;  // force the O(n^3) associativity check
};

/// Finite group given by its full multiplication table.  Elements are the
/// indices 0..n-1 with the identity at index 0.  mul(a, b) is the product
/// "a then b" in whatever convention the source used; all derived notions
/// (conjugation, commutators) are defined on top of this single table.
class Group {
 public:
  enum class Check {
    full,     // Latin square + identity + inverses + associativity
    trusted,  // Latin square + identity + inverses (table built by us from
              // an associativity-preserving construction)
  };

  Group(int n, std::vector<int> mul, std::string name, Check check,
        const Limits& lim = {})
      : n_(n), mul_(std::move(mul)), name_(std::move(name)) {
    if (n_ < 1) throw NotAGroup("group order must be at least 1");
    if (static_cast<long long>(n_) * n_ != static_cast<long long>(mul_.size()))
      throw NotAGroup("multiplication table is not n x n");
    validate(check, lim);
  }

  /// Ingest an arbitrary table: locates the identity (relabeling it to index
  /// 0 if necessary) and runs the full group-law validation.
  static Group from_table(int n, std::vector<int> mul, std::string name,
                          const Limits& lim = {}) {
    if (n < 1) throw NotAGroup("group order must be at least 1");
    if (static_cast<long long>(n) * n != static_cast<long long>(mul.size()))
      throw NotAGroup("multiplication table is not n x n");
    for (int v : mul)
      if (v < 0 || v >= n)
        throw NotAGroup("table entry " + std::to_string(v) +
                        " out of range [0," + std::to_string(n) + ")");
    int e = -1;
    for (int c = 0; c < n && e < 0; ++c) {
      bool id = true;
      for (int a = 0; a < n && id; ++a)
        id = mul[static_cast<std::size_t>(c) * n + a] == a &&
             mul[static_cast<std::size_t>(a) * n + c] == a;
      if (id) e = c;
    }
    if (e < 0) throw NotAGroup("no identity element");
    if (e != 0) {
      // Swap labels 0 and e so the identity sits at index 0.
      auto rel = [&](int x) { return x == 0 ? e : x == e ? 0 : x; };
      std::vector<int> m2(mul.size());
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          m2[static_cast<std::size_t>(rel(a)) * n + rel(b)] =
              rel(mul[static_cast<std::size_t>(a) * n + b]);
      mul = std::move(m2);
    }
    return Group(n, std::move(mul), std::move(name), Check::full, lim);
  }

  int order() const { return n_; }
  const std::string& name() const { return name_; }
  void set_name(std::string s) { name_ = std::move(s); }

  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }

  /// x^-1 g x.
  int conjugate(int g, int x) const { return mul(mul(inv(x), g), x); }
  /// [g, x] = g^-1 x^-1 g x, so that x^-1 g x = g [g, x].
  int commutator(int g, int x) const {
    return mul(mul(mul(inv(g), inv(x)), g), x);
  }

  int element_order(int g) const {
    int o = 1;
    for (int a = g; a != 0; a = mul(a, g)) ++o;
    return o;
  }

  int exponent() const {
    long long e = 1;
    for (int g = 0; g < n_; ++g) e = std::lcm(e, (long long)element_order(g));
    return static_cast<int>(e);
  }

  bool is_abelian() const {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  const std::vector<int>& table() const { return mul_; }

 private:
  void validate(Check check, const Limits& lim) {
    // Entry range.
    for (int v : mul_)
      if (v < 0 || v >= n_)
        throw NotAGroup("table entry " + std::to_string(v) +
                        " out of range [0," + std::to_string(n_) + ")");
    // Latin square: every row and column is a permutation.
    std::vector<char> seen(n_);
    for (int a = 0; a < n_; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int b = 0; b < n_; ++b) {
        int v = mul(a, b);
        if (seen[v])
          throw NotAGroup("row " + std::to_string(a) +
                          " is not a permutation (value " + std::to_string(v) +
                          " repeated)");
        seen[v] = 1;
      }
    }
    for (int b = 0; b < n_; ++b) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int a = 0; a < n_; ++a) {
        int v = mul(a, b);
        if (seen[v])
          throw NotAGroup("column " + std::to_string(b) +
                          " is not a permutation (value " + std::to_string(v) +
                          " repeated)");
        seen[v] = 1;
      }
    }
    // Identity at index 0.
    for (int a = 0; a < n_; ++a)
      if (mul(0, a) != a || mul(a, 0) != a)
        throw NotAGroup("index 0 is not a two-sided identity");
    // Two-sided inverses.
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b)
        if (mul(a, b) == 0 && mul(b, a) == 0) {
          inv_[a] = b;
          break;
        }
      if (inv_[a] < 0)
        throw NotAGroup("element " + std::to_string(a) +
                        " has no two-sided inverse");
    }
    // Associativity: exhaustive for small orders or when forced, otherwise a
    // fixed-seed sample of 3n^2 triples.
    if (check == Check::full) {
      if (n_ <= 512 || lim.exhaustive_assoc) {
        for (int a = 0; a < n_; ++a)
          for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c)
              if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                throw NotAGroup("associativity fails at (" +
                                std::to_string(a) + "," + std::to_string(b) +
                                "," + std::to_string(c) + ")");
      } else {
        std::mt19937_64 rng(0x67767a5eed);
        std::uniform_int_distribution<int> d(0, n_ - 1);
        long long samples = 3LL * n_ * n_;
        for (long long s = 0; s < samples; ++s) {
          int a = d(rng), b = d(rng), c = d(rng);
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw NotAGroup("associativity fails at (" + std::to_string(a) +
                            "," + std::to_string(b) + "," +
                            std::to_string(c) + ")");
        }
      }
    }
  }

  int n_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::string name_;
};

/// Subgroup of a fixed parent group, stored as a membership bitset.
/// Construction checks that the set really is a subgroup and precomputes
/// normality.
class Subgroup {
 public:
  Subgroup(const Group& parent, Bitset members)
      : parent_(&parent), members_(std::move(members)) {
    if (members_.size() != parent.order())
      throw InternalError("subgroup bitset has wrong universe size");
    if (!members_.test(0)) throw InternalError("subgroup must contain identity");
    elems_ = members_.to_vector();
    for (int a : elems_) {
      if (!members_.test(parent.inv(a)))
        throw InternalError("subgroup not closed under inverse at " +
                            std::to_string(a));
      for (int b : elems_)
        if (!members_.test(parent.mul(a, b)))
          throw InternalError("subgroup not closed under product at (" +
                              std::to_string(a) + "," + std::to_string(b) + ")");
    }
    if (parent.order() % order() != 0)
      throw InternalError("subgroup order does not divide group order");
    normal_ = true;
    for (int h : elems_) {
      for (int x = 0; x < parent.order() && normal_; ++x)
        if (!members_.test(parent.conjugate(h, x))) normal_ = false;
      if (!normal_) break;
    }
  }

  const Group& parent() const { return *parent_; }
  const Bitset& members() const { return members_; }
  int order() const { return static_cast<int>(elems_.size()); }
  bool contains(int g) const { return members_.test(g); }
  bool is_normal() const { return normal_; }
  const std::vector<int>& elements() const { return elems_; }
  bool is_trivial() const { return order() == 1; }
  bool is_whole_group() const { return order() == parent_->order(); }

  bool operator==(const Subgroup& o) const {
    return parent_ == o.parent_ && members_ == o.members_;
  }
  bool is_subset_of(const Subgroup& o) const {
    return members_.is_subset_of(o.members_);
  }

 private:
  const Group* parent_;
  Bitset members_;
  std::vector<int> elems_;
  bool normal_ = false;
};

/// Conjugacy classes in a deterministic order: sorted by (order of the
/// representative, representative index); the representative of each class is
/// its minimal element, so the identity class always comes first.
struct ConjugacyClasses {
  std::vector<int> class_of;             // element -> class index
  std::vector<int> reps;                 // class -> minimal element
  std::vector<int> sizes;                // class -> size
  std::vector<std::vector<int>> members; // class -> sorted elements
  std::vector<int> rep_orders;           // class -> order of representative
  std::vector<int> inverse_class;        // class -> class of rep^-1

  int count() const { return static_cast<int>(reps.size()); }
};

inline ConjugacyClasses conjugacy_classes(const Group& G) {
  const int n = G.order();
  std::vector<int> cls(n, -1);
  std::vector<int> reps;
  for (int g = 0; g < n; ++g) {
    if (cls[g] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(g);
    for (int x = 0; x < n; ++x) cls[G.conjugate(g, x)] = id;
  }
  const int k = static_cast<int>(reps.size());
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> ords(k);
  for (int c = 0; c < k; ++c) ords[c] = G.element_order(reps[c]);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (ords[a] != ords[b]) return ords[a] < ords[b];
    return reps[a] < reps[b];
  });
  std::vector<int> inv_perm(k);
  for (int c = 0; c < k; ++c) inv_perm[perm[c]] = c;

  ConjugacyClasses cc;
  cc.class_of.resize(n);
  cc.reps.resize(k);
  cc.sizes.assign(k, 0);
  cc.members.resize(k);
  cc.rep_orders.resize(k);
  for (int g = 0; g < n; ++g) {
    int c = inv_perm[cls[g]];
    cc.class_of[g] = c;
    cc.members[c].push_back(g);
  }
  for (int c = 0; c < k; ++c) {
    cc.sizes[c] = static_cast<int>(cc.members[c].size());
    cc.reps[c] = cc.members[c].front();
    cc.rep_orders[c] = G.element_order(cc.reps[c]);
  }
  cc.inverse_class.resize(k);
  for (int c = 0; c < k; ++c) cc.inverse_class[c] = cc.class_of[G.inv(cc.reps[c])];
  return cc;
}

/// Subgroup generated by a seed set (closure under products and inverses).
inline Subgroup subgroup_generated(const Group& G, const std::vector<int>& seed) {
  const int n = G.order();
  Bitset in(n);
  std::vector<int> elems;
  auto add = [&](int g) {
    if (!in.test(g)) {
      in.set(g);
      elems.push_back(g);
    }
  };
  add(0);
  for (int g : seed) {
    add(g);
    add(G.inv(g));
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      add(G.mul(elems[i], elems[j]));
      add(G.mul(elems[j], elems[i]));
    }
  }
  return Subgroup(G, in);
}

inline Subgroup center(const Group& G) {
  const int n = G.order();
  Bitset z(n);
  for (int a = 0; a < n; ++a) {
    bool central = true;
    for (int b = 0; b < n && central; ++b) central = G.mul(a, b) == G.mul(b, a);
    if (central) z.set(a);
  }
  Subgroup Z(G, z);
  if (!Z.is_normal()) throw InternalError("center is not normal");
  return Z;
}

inline Subgroup centralizer(const Group& G, int g) {
  Bitset c(G.order());
  for (int x = 0; x < G.order(); ++x)
    if (G.mul(x, g) == G.mul(g, x)) c.set(x);
  return Subgroup(G, c);
}

/// Raw commutator set {[g, x] : x in G}, sorted and deduplicated.  Not a
/// subgroup in general.
inline std::vector<int> commutator_set(const Group& G, int g) {
  Bitset seen(G.order());
  for (int x = 0; x < G.order(); ++x) seen.set(G.commutator(g, x));
  return seen.to_vector();
}

/// [g, G]: subgroup generated by all commutators of g.
inline Subgroup commutator_subgroup_of_element(const Group& G, int g) {
  return subgroup_generated(G, commutator_set(G, g));
}

inline Subgroup derived_subgroup(const Group& G) {
  Bitset seen(G.order());
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b) seen.set(G.commutator(a, b));
  return subgroup_generated(G, seen.to_vector());
}

/// D_G(g) = {x : [x, g] in Z(G)}.  That this set is a subgroup containing
/// both Z(G) and C_G(g) is checked on every call.
inline Subgroup d_subgroup(const Group& G, int g, const Subgroup& Z) {
  Bitset d(G.order());
  for (int x = 0; x < G.order(); ++x)
    if (Z.contains(G.commutator(x, g))) d.set(x);
  Subgroup D(G, d);  // constructor throws if not closed
  if (!Z.members().is_subset_of(D.members()))
    throw InternalError("D_G(g) does not contain the center");
  for (int x = 0; x < G.order(); ++x)
    if (G.mul(x, g) == G.mul(g, x) && !D.contains(x))
      throw InternalError("D_G(g) does not contain the centralizer of g");
  return D;
}

inline Subgroup d_subgroup(const Group& G, int g) {
  return d_subgroup(G, g, center(G));
}

/// Canonical projection G -> G/N.  Image element indices are assigned in
/// increasing order of the minimal member of each coset, so the identity
/// coset is image element 0.
struct QuotientMap {
  const Group* source;
  Subgroup kernel;
  Group image;
  std::vector<int> proj;  // source element -> image element
};

inline QuotientMap quotient(const Group& G, const Subgroup& N) {
  if (&N.parent() != &G) throw InternalError("subgroup belongs to another group");
  if (!N.is_normal())
    throw NotNormal("quotient by non-normal subgroup of order " +
                    std::to_string(N.order()));
  const int n = G.order();
  const int q = n / N.order();
  std::vector<int> proj(n, -1);
  int next = 0;
  for (int a = 0; a < n; ++a) {
    if (proj[a] >= 0) continue;
    for (int h : N.elements()) proj[G.mul(a, h)] = next;
    ++next;
  }
  if (next != q) throw InternalError("coset count mismatch");
  std::vector<int> mul(static_cast<std::size_t>(q) * q, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int& cell = mul[static_cast<std::size_t>(proj[a]) * q + proj[b]];
      int v = proj[G.mul(a, b)];
      if (cell < 0)
        cell = v;
      else if (cell != v)
        throw InternalError("projection is not a homomorphism");
    }
  Group img(q, std::move(mul), G.name() + "/N" + std::to_string(N.order()),
            Group::Check::trusted);
  return QuotientMap{&G, N, std::move(img), std::move(proj)};
}

/// Materialize a subgroup as a group in its own right.  Element i of the
/// result corresponds to to_parent[i] (ascending), so index 0 stays the
/// identity.
inline Group subgroup_as_group(const Group& G, const Subgroup& H,
                               std::vector<int>& to_parent,
                               const std::string& name) {
  to_parent = H.elements();
  const int m = H.order();
  std::vector<int> pos(G.order(), -1);
  for (int i = 0; i < m; ++i) pos[to_parent[i]] = i;
  std::vector<int> mul(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      mul[static_cast<std::size_t>(i) * m + j] =
          pos[G.mul(to_parent[i], to_parent[j])];
  return Group(m, std::move(mul), name, Group::Check::trusted);
}

/// Minimal normal subgroups: minimal elements among all normal closures of
/// single non-identity elements, deduplicated, sorted by (order, membership).
inline std::vector<Subgroup> minimal_normal_subgroups(const Group& G) {
  std::set<Bitset> closures;
  for (int g = 1; g < G.order(); ++g) {
    Bitset conj(G.order());
    for (int x = 0; x < G.order(); ++x) conj.set(G.conjugate(g, x));
    Subgroup N = subgroup_generated(G, conj.to_vector());
    if (!N.is_normal()) throw InternalError("normal closure is not normal");
    closures.insert(N.members());
  }
  std::vector<Bitset> minimal;
  for (const auto& a : closures) {
    bool is_min = true;
    for (const auto& b : closures)
      if (b != a && b.is_subset_of(a)) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(a);
  }
  std::sort(minimal.begin(), minimal.end(), [](const Bitset& a, const Bitset& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });
  std::vector<Subgroup> out;
  out.reserve(minimal.size());
  for (auto& m : minimal) out.emplace_back(G, std::move(m));
  return out;
}

/// A group is monolithic if it has a unique minimal normal subgroup.  The
/// trivial group has none and is not monolithic.
inline bool is_monolithic(const Group& G) {
  if (G.order() == 1) return false;
  return minimal_normal_subgroups(G).size() == 1;
}

/// Nilpotency via the lower central series gamma_{i+1} = [gamma_i, G].
inline bool is_nilpotent(const Group& G) {
  Bitset all(G.order());
  for (int g = 0; g < G.order(); ++g) all.set(g);
  Subgroup gamma(G, all);
  while (true) {
    Bitset seeds(G.order());
    for (int a : gamma.elements())
      for (int x = 0; x < G.order(); ++x) seeds.set(G.commutator(a, x));
    Subgroup next = subgroup_generated(G, seeds.to_vector());
    if (next.is_trivial()) return true;
    if (next.order() == gamma.order()) return false;  // series stabilized
    gamma = next;
  }
}

/// For nilpotent G, the internal direct factorization into Sylow subgroups
/// (ascending primes).  Returns nullopt for non-nilpotent groups.
inline std::optional<std::vector<std::pair<int, Subgroup>>> sylow_factorization(
    const Group& G) {
  if (!is_nilpotent(G)) return std::nullopt;
  std::vector<int> primes;
  int n = G.order();
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) primes.push_back(n);
  std::vector<std::pair<int, Subgroup>> parts;
  long long prod = 1;
  for (int p : primes) {
    Bitset mem(G.order());
    for (int g = 0; g < G.order(); ++g) {
      int o = G.element_order(g);
      while (o % p == 0) o /= p;
      if (o == 1) mem.set(g);  // order is a power of p (includes identity)
    }
    Subgroup P(G, mem);
    if (!P.is_normal()) throw InternalError("Sylow part is not normal");
    prod *= P.order();
    parts.emplace_back(p, std::move(P));
  }
  if (prod != G.order())
    throw InternalError("Sylow part orders do not multiply to |G|");
  return parts;
}

/// Direct product with index pairing (a, b) -> a*|B| + b.
inline Group direct_product(const Group& A, const Group& B,
                            const Limits& lim = {}) {
  long long n = static_cast<long long>(A.order()) * B.order();
  if (n > lim.order_cap)
    throw OrderCapExceeded("direct product order " + std::to_string(n) +
                           " exceeds cap " + std::to_string(lim.order_cap));
  const int nb = B.order();
  const int nn = static_cast<int>(n);
  std::vector<int> mul(static_cast<std::size_t>(nn) * nn);
  for (int a1 = 0; a1 < A.order(); ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < A.order(); ++a2)
        for (int b2 = 0; b2 < nb; ++b2)
          mul[static_cast<std::size_t>(a1 * nb + b1) * nn + (a2 * nb + b2)] =
              A.mul(a1, a2) * nb + B.mul(b1, b2);
  return Group(nn, std::move(mul), A.name() + " x " + B.name(),
               Group::Check::trusted);
}

}  // namespace gvz
