#pragma once

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "char_table.hpp"
#include "errors.hpp"
#include "group.hpp"

namespace gvz {

/// Flat element: the conjugacy class of g equals the coset g<[g, G]>.  The
/// class is always contained in that coset (x^-1 g x = g [g, x]), so equality
/// amounts to the class filling it, i.e. the raw commutator set {[g, x]}
/// being closed into the subgroup it generates.
inline bool is_flat_element(const Group& G, const ConjugacyClasses& cc, int g) {
  Subgroup H = commutator_subgroup_of_element(G, g);
  return cc.sizes[cc.class_of[g]] == H.order();
}

/// Oracle B: G is GVZ iff every element is flat (character-free criterion).
inline bool gvz_by_flatness(const Group& G, const ConjugacyClasses& cc) {
  for (int g = 0; g < G.order(); ++g)
    if (!is_flat_element(G, cc, g)) return false;
  return true;
}

inline bool gvz_by_flatness(const Group& G) {
  return gvz_by_flatness(G, conjugacy_classes(G));
}

/// Per-character analysis record.  central_type is the agreed value of the
/// three sub-criteria (definition via the quotient, degree, commutator);
/// any disagreement among them throws SubVerdictDisagreement.
struct CharacterAnalysis {
  int char_index = 0;
  int degree = 0;
  Subgroup kernel;
  Subgroup center;
  bool monolithic = false;  // G/ker(chi) is monolithic
  bool central_type = false;
  bool sub_definition = false;
  bool sub_degree = false;
  bool sub_commutator = false;
};

struct LemmaCheck {
  enum class Status { pass, fail, skipped };
  std::string name;
  Status status = Status::pass;
  std::string witness;  // failure witness or skip reason

  static const char* status_name(Status s) {
    switch (s) {
      case Status::pass: return "pass";
      case Status::fail: return "fail";
      default: return "skipped";
    }
  }
};

struct OracleReport {
  std::string name;
  int order = 0;
  int class_count = 0;
  bool abelian = false;  // thm2/thm3 verdicts use the abelian convention
  bool verdict_definition = false;
  bool verdict_flat = false;
  bool verdict_thm2 = false;
  bool verdict_thm3 = false;
  bool agreement = false;
  std::vector<CharacterAnalysis> characters;
  std::vector<LemmaCheck> lemma_checks;

  bool is_gvz() const { return verdict_definition; }
  bool lemmas_ok() const {
    for (const auto& l : lemma_checks)
      if (l.status == LemmaCheck::Status::fail) return false;
    return true;
  }
};

/// Orchestrates the per-group computation, sharing the character table,
/// quotient tables and commutator caches across the oracles and lemma
/// checks.  All state is local to one group analysis.
class Analyzer {
 public:
  explicit Analyzer(const Group& G) : G_(G), table_(character_table(G)) {
    analyses_.resize(table_.count());
    dsubs_.resize(G.order());
    comm_bits_.resize(G.order());
  }

  const Group& group() const { return G_; }
  const CharacterTable& table() const { return table_; }
  const Subgroup& group_center() const { return table_.center_sub; }

  /// is_central_type_char: evaluates the three central-type sub-criteria for
  /// one character and requires them to agree.
  const CharacterAnalysis& character(int chi) {
    if (analyses_[chi]) return *analyses_[chi];
    const Character& ch = table_.chars[chi];
    CharacterAnalysis a{chi, ch.degree, kernel_of(table_, chi),
                        center_of(table_, chi)};
    const QuotientInfo& q = quotient_info(a.kernel.members());
    a.monolithic = q.monolithic;

    // (a) Definition on the faithful quotient: the central character of
    // chi-bar on Z(G/ker) induces with a unique constituent.
    {
      int bar = matching_row(q, chi);
      if (!kernel_of(*q.table, bar).is_trivial())
        throw InternalError("character is not faithful on G/ker");
      CentralCharacter lam = q.restrictions[bar];
      a.sub_definition =
          induced_constituent_count(*q.table, lam, q.restrictions) == 1;
    }
    // (b) Degree: chi(1)^2 = |G : Z(chi)|.
    a.sub_degree = static_cast<long long>(ch.degree) * ch.degree *
                       a.center.order() ==
                   G_.order();
    // (c) Commutator: every g outside Z(chi) has some [g, x] in
    // Z(chi) \ ker(chi).
    a.sub_commutator = true;
    for (int g = 0; g < G_.order() && a.sub_commutator; ++g) {
      if (a.center.contains(g)) continue;
      bool found = false;
      for (int x = 0; x < G_.order() && !found; ++x) {
        int c = G_.commutator(g, x);
        found = a.center.contains(c) && !a.kernel.contains(c);
      }
      a.sub_commutator = found;
    }
    if (a.sub_definition != a.sub_degree || a.sub_degree != a.sub_commutator) {
      std::ostringstream w;
      w << G_.name() << " character " << chi << ": definition="
        << a.sub_definition << " degree=" << a.sub_degree
        << " commutator=" << a.sub_commutator;
      throw SubVerdictDisagreement(w.str());
    }
    a.central_type = a.sub_definition;
    analyses_[chi] = std::move(a);
    return *analyses_[chi];
  }

  /// Oracle A: every character is central type; cross-checked per character
  /// against the direct phrasing "chi vanishes off Z(chi)".
  bool gvz_by_definition() {
    bool all = true;
    for (int i = 0; i < table_.count(); ++i) {
      const CharacterAnalysis& a = character(i);
      bool vanish = vanishes_off(table_, i, a.center);
      if (vanish != a.central_type)
        throw SubVerdictDisagreement(
            G_.name() + " character " + std::to_string(i) +
            ": vanishing phrasing disagrees with central-type verdict");
      all = all && a.central_type;
    }
    return all;
  }

  /// Oracle C: for every monolithic chi, every g outside Z(chi) admits x with
  /// [g, x] in Z(chi) \ ker(chi).  Abelian groups are GVZ by convention.
  bool gvz_by_thm2() {
    if (G_.is_abelian()) return true;
    for (int i = 0; i < table_.count(); ++i) {
      const CharacterAnalysis& a = character(i);
      if (!a.monolithic) continue;
      for (int g = 0; g < G_.order(); ++g) {
        if (a.center.contains(g)) continue;
        bool found = false;
        for (int x = 0; x < G_.order() && !found; ++x) {
          int c = G_.commutator(g, x);
          found = a.center.contains(c) && !a.kernel.contains(c);
        }
        if (!found) return false;
      }
    }
    return true;
  }

  /// Oracle D: G nilpotent, and for every normal N with G/N monolithic
  /// (candidates: character kernels) and every g not central modulo N there
  /// is x with [g, x] outside N but central modulo N ([[g, x], G] <= N).
  bool gvz_by_thm3() {
    if (G_.is_abelian()) return true;
    if (!is_nilpotent(G_)) return false;
    std::map<Bitset, bool> seen;
    for (int i = 0; i < table_.count(); ++i) {
      const CharacterAnalysis& a = character(i);
      if (!a.monolithic) continue;
      const Bitset& N = a.kernel.members();
      if (!seen.emplace(N, true).second) continue;
      for (int g = 0; g < G_.order(); ++g) {
        if (comm_bits(g).is_subset_of(N)) continue;  // g central mod N
        bool found = false;
        for (int x = 0; x < G_.order() && !found; ++x) {
          int c = G_.commutator(g, x);
          found = !N.test(c) && comm_bits(c).is_subset_of(N);
        }
        if (!found) return false;
      }
    }
    return true;
  }

  /// Gallagher count: constituents of theta^G (theta a faithful linear
  /// character of a cyclic center) = number of classes of G/Z(G) whose
  /// representatives g satisfy [g, D_G(g)] = 1.
  LemmaCheck check_lemma_fr1() {
    LemmaCheck out{"fr1_gallagher_count", LemmaCheck::Status::pass, ""};
    const Subgroup& Z = group_center();
    bool cyclic = false;
    for (int z : Z.elements())
      if (G_.element_order(z) == Z.order()) {
        cyclic = true;
        break;
      }
    if (!cyclic) {
      out.status = LemmaCheck::Status::skipped;
      out.witness = "center is not cyclic (order " + std::to_string(Z.order()) + ")";
      return out;
    }
    auto lams = irr_of_center(G_, Z);
    int theta = -1;
    for (std::size_t i = 0; i < lams.size(); ++i)
      if (lams[i].is_faithful()) {
        theta = static_cast<int>(i);
        break;
      }
    if (theta < 0) throw InternalError("cyclic center has no faithful character");
    int constituents =
        induced_constituent_count(table_, lams[theta], central_restrictions());

    const QuotientInfo& q = quotient_info(Z.members());
    ConjugacyClasses qcc = conjugacy_classes(q.map->image);
    int count = 0;
    for (int c = 0; c < qcc.count(); ++c) {
      int g = -1;
      for (int cand = 0; cand < G_.order() && g < 0; ++cand)
        if (q.map->proj[cand] == qcc.reps[c]) g = cand;
      const Subgroup& D = dsub(g);
      bool all_commute = true;
      for (int x : D.elements())
        if (G_.commutator(g, x) != 0) {
          all_commute = false;
          break;
        }
      if (all_commute) ++count;
    }
    if (count != constituents) {
      out.status = LemmaCheck::Status::fail;
      out.witness = "counted " + std::to_string(count) + " classes, theta^G has " +
                    std::to_string(constituents) + " constituents";
    }
    return out;
  }

  /// For every irreducible lambda of Z(G): lambda fully ramified iff
  /// [g, D_G(g)] is not contained in ker(lambda) for every g outside Z(G);
  /// the existential restatement is checked to agree pointwise.
  LemmaCheck check_lemma_fullyram() {
    LemmaCheck out{"fullyram_equivalence", LemmaCheck::Status::pass, ""};
    const Subgroup& Z = group_center();
    auto lams = irr_of_center(G_, Z);
    const auto& restrictions = central_restrictions();
    for (std::size_t li = 0; li < lams.size(); ++li) {
      int count = 0;
      for (const auto& r : restrictions)
        if (r == lams[li]) ++count;
      if (count < 1) throw InternalError("central character without constituents");
      bool fr = count == 1;
      if (fr && !is_fully_ramified(table_, lams[li], restrictions))
        throw InternalError("constituent count disagrees with is_fully_ramified");
      Bitset ker = lams[li].kernel_bits(G_.order());
      bool all = true;
      for (int g = 0; g < G_.order(); ++g) {
        if (Z.contains(g)) continue;
        const Subgroup& D = dsub(g);
        bool escapes_d = false;  // [g, D(g)] not inside ker lambda
        for (int x : D.elements())
          if (!ker.test(G_.commutator(g, x))) {
            escapes_d = true;
            break;
          }
        bool escapes_any = false;  // exists x in G with [g,x] in Z \ ker
        for (int x = 0; x < G_.order() && !escapes_any; ++x) {
          int c = G_.commutator(g, x);
          escapes_any = Z.contains(c) && !ker.test(c);
        }
        if (escapes_d != escapes_any) {
          out.status = LemmaCheck::Status::fail;
          out.witness = "restatements disagree at g=" + std::to_string(g) +
                        ", lambda=" + std::to_string(li);
          return out;
        }
        all = all && escapes_d;
      }
      if (fr != all) {
        out.status = LemmaCheck::Status::fail;
        out.witness = "lambda=" + std::to_string(li) + ": fully_ramified=" +
                      (fr ? "true" : "false") + " commutator condition=" +
                      (all ? "true" : "false");
        return out;
      }
    }
    return out;
  }

  /// G nilpotent iff ker(chi) < Z(chi) strictly for every nonprincipal
  /// monolithic character.
  LemmaCheck check_mono_nilp() {
    LemmaCheck out{"mono_nilp", LemmaCheck::Status::pass, ""};
    bool char_side = true;
    int witness_chi = -1;
    for (int i = 1; i < table_.count(); ++i) {
      const CharacterAnalysis& a = character(i);
      if (!a.monolithic) continue;
      if (a.center.order() <= a.kernel.order()) {
        char_side = false;
        witness_chi = i;
        break;
      }
    }
    bool nilp = is_nilpotent(G_);
    if (char_side != nilp) {
      out.status = LemmaCheck::Status::fail;
      std::ostringstream w;
      w << "nilpotent=" << (nilp ? "true" : "false") << " character condition="
        << (char_side ? "true" : "false");
      if (witness_chi >= 0) w << " (character " << witness_chi << ")";
      out.witness = w.str();
    }
    return out;
  }

  /// Whenever G/Z(chi) is abelian, chi must be central type.
  LemmaCheck check_abelian_quotient_remark() {
    LemmaCheck out{"abelian_quotient_remark", LemmaCheck::Status::pass, ""};
    for (int i = 0; i < table_.count(); ++i) {
      const CharacterAnalysis& a = character(i);
      const QuotientInfo& q = quotient_info(a.center.members());
      if (q.map->image.is_abelian() && !a.central_type) {
        out.status = LemmaCheck::Status::fail;
        out.witness = "character " + std::to_string(i) +
                      " has abelian G/Z(chi) but is not central type";
        return out;
      }
    }
    return out;
  }

  /// For nilpotent non-prime-power G: characters factor over the Sylow
  /// decomposition, kernels and centers multiply, and central-type verdicts
  /// reduce to the factors.
  LemmaCheck check_sylow_reduction() {
    LemmaCheck out{"sylow_reduction", LemmaCheck::Status::pass, ""};
    auto parts = sylow_factorization(G_);
    if (!parts) {
      out.status = LemmaCheck::Status::skipped;
      out.witness = "group is not nilpotent";
      return out;
    }
    if (parts->size() < 2) {
      out.status = LemmaCheck::Status::skipped;
      out.witness = "order is a prime power";
      return out;
    }
    struct PartCtx {
      Group grp;
      std::vector<int> to_parent;
      std::optional<Analyzer> an;
    };
    std::vector<std::unique_ptr<PartCtx>> ctxs;
    for (const auto& [p, P] : *parts) {
      auto ctx = std::make_unique<PartCtx>(
          PartCtx{Group(1, {0}, "tmp", Group::Check::trusted), {}, std::nullopt});
      ctx->grp = subgroup_as_group(G_, P, ctx->to_parent,
                                   G_.name() + "_p" + std::to_string(p));
      ctx->an.emplace(ctx->grp);
      ctxs.push_back(std::move(ctx));
    }
    for (int i = 0; i < table_.count(); ++i) {
      const CharacterAnalysis& a = character(i);
      const Character& chi = table_.chars[i];
      long long degree_product = 1;
      bool factors_central = true;
      std::vector<const CharacterAnalysis*> nus;
      for (auto& ctx : ctxs) {
        const CharacterTable& TP = ctx->an->table();
        int match = -1;
        for (int r = 0; r < TP.count(); ++r) {
          bool ok = true;
          for (int h = 0; h < ctx->grp.order() && ok; ++h) {
            // chi(h) nu(1) = chi(1) nu(h) pins down the factor exactly.
            CyclotomicInt lhs = static_cast<long long>(TP.chars[r].degree) *
                                chi.values[table_.classes.class_of[ctx->to_parent[h]]];
            CyclotomicInt rhs = static_cast<long long>(chi.degree) *
                                TP.chars[r].values[TP.classes.class_of[h]];
            ok = lhs == rhs;
          }
          if (ok) {
            if (match >= 0)
              throw InternalError("Sylow factor of a character is not unique");
            match = r;
          }
        }
        if (match < 0) throw InternalError("character has no Sylow factor");
        const CharacterAnalysis& nu = ctx->an->character(match);
        nus.push_back(&nu);
        degree_product *= nu.degree;
        factors_central = factors_central && nu.central_type;
      }
      auto product_bits = [&](auto pick) {
        Bitset acc(G_.order());
        acc.set(0);
        for (std::size_t pi = 0; pi < ctxs.size(); ++pi) {
          Bitset next(G_.order());
          const auto& sub = pick(*nus[pi]);
          for (int x : acc.to_vector())
            for (int h : sub.elements())
              next.set(G_.mul(x, ctxs[pi]->to_parent[h]));
          acc = std::move(next);
        }
        return acc;
      };
      Bitset ker_prod = product_bits([](const CharacterAnalysis& n) -> const Subgroup& {
        return n.kernel;
      });
      Bitset cen_prod = product_bits([](const CharacterAnalysis& n) -> const Subgroup& {
        return n.center;
      });
      if (degree_product != a.degree || ker_prod != a.kernel.members() ||
          cen_prod != a.center.members() || factors_central != a.central_type) {
        out.status = LemmaCheck::Status::fail;
        out.witness = "character " + std::to_string(i) +
                      " does not reduce to its Sylow factors";
        return out;
      }
    }
    return out;
  }

  OracleReport run() {
    OracleReport r;
    r.name = G_.name();
    r.order = G_.order();
    r.class_count = table_.count();
    r.abelian = G_.is_abelian();
    for (int i = 0; i < table_.count(); ++i) r.characters.push_back(character(i));
    r.verdict_definition = gvz_by_definition();
    r.verdict_flat = gvz_by_flatness(G_, table_.classes);
    r.verdict_thm2 = gvz_by_thm2();
    r.verdict_thm3 = gvz_by_thm3();
    r.agreement = r.verdict_definition == r.verdict_flat &&
                  r.verdict_flat == r.verdict_thm2 &&
                  r.verdict_thm2 == r.verdict_thm3;
    r.lemma_checks.push_back(check_lemma_fr1());
    r.lemma_checks.push_back(check_lemma_fullyram());
    r.lemma_checks.push_back(check_mono_nilp());
    r.lemma_checks.push_back(check_abelian_quotient_remark());
    r.lemma_checks.push_back(check_sylow_reduction());
    return r;
  }

 private:
  struct QuotientInfo {
    std::optional<QuotientMap> map;
    std::optional<CharacterTable> table;
    std::vector<CentralCharacter> restrictions;
    bool monolithic = false;
  };

  const QuotientInfo& quotient_info(const Bitset& normal_bits) {
    auto it = quotients_.find(normal_bits);
    if (it != quotients_.end()) return *it->second;
    auto info = std::make_shared<QuotientInfo>();
    info->map.emplace(quotient(G_, Subgroup(G_, normal_bits)));
    info->table.emplace(character_table(info->map->image));
    info->restrictions = all_central_characters(*info->table);
    info->monolithic = is_monolithic(info->map->image);
    return *quotients_.emplace(normal_bits, std::move(info)).first->second;
  }

  /// Row of the quotient table matching chi through the projection.
  int matching_row(const QuotientInfo& q, int chi) {
    const Character& ch = table_.chars[chi];
    int match = -1;
    for (int r = 0; r < q.table->count(); ++r) {
      if (q.table->chars[r].degree != ch.degree) continue;
      bool ok = true;
      for (int c = 0; c < table_.classes.count() && ok; ++c) {
        int qc = q.table->classes.class_of[q.map->proj[table_.classes.reps[c]]];
        ok = q.table->chars[r].values[qc] == ch.values[c];
      }
      if (ok) {
        if (match >= 0) throw InternalError("quotient character match not unique");
        match = r;
      }
    }
    if (match < 0) throw InternalError("character does not factor through G/ker");
    return match;
  }

  const Subgroup& dsub(int g) {
    if (!dsubs_[g]) dsubs_[g] = d_subgroup(G_, g, group_center());
    return *dsubs_[g];
  }

  /// Central restrictions chi|Z for every row, computed once per analysis.
  const std::vector<CentralCharacter>& central_restrictions() {
    if (!restrictions_) restrictions_ = all_central_characters(table_);
    return *restrictions_;
  }

  const Bitset& comm_bits(int g) {
    if (!comm_bits_[g]) {
      Bitset b(G_.order());
      for (int x = 0; x < G_.order(); ++x) b.set(G_.commutator(g, x));
      comm_bits_[g] = std::move(b);
    }
    return *comm_bits_[g];
  }

  const Group& G_;
  CharacterTable table_;
  std::vector<std::optional<CharacterAnalysis>> analyses_;
  std::vector<std::optional<Subgroup>> dsubs_;
  std::vector<std::optional<Bitset>> comm_bits_;
  std::optional<std::vector<CentralCharacter>> restrictions_;
  std::map<Bitset, std::shared_ptr<QuotientInfo>> quotients_;
};

/// Full four-oracle report for one group.
inline OracleReport analyze(const Group& G) { return Analyzer(G).run(); }

inline bool gvz_by_definition(const Group& G) { return Analyzer(G).gvz_by_definition(); }
inline bool gvz_by_thm2(const Group& G) { return Analyzer(G).gvz_by_thm2(); }
inline bool gvz_by_thm3(const Group& G) { return Analyzer(G).gvz_by_thm3(); }

}  // namespace gvz
