#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "brute_oracle.hpp"
#include "gvz/families.hpp"
#include "gvz/group.hpp"

using namespace gvz;

namespace {

std::vector<int> sorted_sizes(const ConjugacyClasses& cc) {
  std::vector<int> s = cc.sizes;
  std::sort(s.begin(), s.end());
  return s;
}

int find_rotation(const Group& D) {
  // In dihedral_group the rotation r has index 1 by construction; assert it.
  REQUIRE(D.element_order(1) == D.order() / 2);
  return 1;
}

}  // namespace

TEST_CASE("construction validates the table") {
  SECTION("valid groups pass") {
    Group c2 = Group::from_table(2, {0, 1, 1, 0}, "C2");
    CHECK(c2.order() == 2);
    CHECK(c2.mul(1, 1) == 0);
  }
  SECTION("non-permutation row") {
    // mul[1][0] = 0 breaks the identity column, mul[1][1] = 1 repeats.
    CHECK_THROWS_AS(Group::from_table(2, {0, 1, 0, 1}, "bad"), NotAGroup);
  }
  SECTION("latin square with inverses but non-associative") {
    std::vector<int> loop{0, 1, 2, 3, 4,  //
                          1, 0, 3, 4, 2,  //
                          2, 4, 0, 1, 3,  //
                          3, 2, 4, 0, 1,  //
                          4, 3, 1, 2, 0};
    CHECK_THROWS_AS(Group::from_table(5, std::move(loop), "loop"), NotAGroup);
  }
  SECTION("identity relabeled to index 0") {
    // C3 written with identity at index 2.
    Group g = Group::from_table(3, {1, 2, 0, 2, 0, 1, 0, 1, 2}, "C3-shifted");
    CHECK(g.mul(0, 1) == 1);
    CHECK(g.mul(1, g.inv(1)) == 0);
    CHECK(g.element_order(1) == 3);
  }
  SECTION("order cap") {
    Limits lim;
    lim.order_cap = 100;
    CHECK_THROWS_AS(cyclic_group(101, lim), ParamOutOfRange);
  }
}

TEST_CASE("conjugacy classes") {
  SECTION("abelian groups split into singletons") {
    Group g = abelian_group({2, 4});
    ConjugacyClasses cc = conjugacy_classes(g);
    CHECK(cc.count() == 8);
    CHECK(sorted_sizes(cc) == std::vector<int>(8, 1));
  }
  SECTION("S3 sizes 1,3,2") {
    ConjugacyClasses cc = conjugacy_classes(symmetric_group(3));
    REQUIRE(cc.count() == 3);
    // Ordered by representative element order: identity, transpositions,
    // 3-cycles.
    CHECK(cc.sizes == std::vector<int>{1, 3, 2});
    CHECK(cc.rep_orders == std::vector<int>{1, 2, 3});
  }
  SECTION("Q8 sizes 1,1,2,2,2") {
    ConjugacyClasses cc = conjugacy_classes(generalized_quaternion_group(8));
    CHECK(cc.sizes == std::vector<int>{1, 1, 2, 2, 2});
  }
  SECTION("matches the definitional partition") {
    for (const Group& g :
         {symmetric_group(4), dihedral_group(16), semidihedral_group(16)}) {
      ConjugacyClasses cc = conjugacy_classes(g);
      auto part = brute::conjugacy_partition(g);
      REQUIRE(static_cast<int>(part.size()) == cc.count());
      for (const auto& cls : part)
        CHECK(cc.members[cc.class_of[cls[0]]] == cls);
    }
  }
}

TEST_CASE("commutators") {
  Group s3 = symmetric_group(3);
  SECTION("identities") {
    for (int g = 0; g < s3.order(); ++g) {
      CHECK(s3.commutator(g, g) == 0);
      CHECK(s3.commutator(g, 0) == 0);
    }
    Group c6 = cyclic_group(6);
    for (int g = 0; g < 6; ++g)
      for (int x = 0; x < 6; ++x) CHECK(c6.commutator(g, x) == 0);
  }
  SECTION("convention [g,x] = g^-1 x^-1 g x, evaluated by table") {
    for (int g = 0; g < s3.order(); ++g)
      for (int x = 0; x < s3.order(); ++x)
        CHECK(s3.commutator(g, x) ==
              s3.mul(s3.mul(s3.inv(g), s3.inv(x)), s3.mul(g, x)));
    // A 3-cycle and a transposition do not commute: the commutator is the
    // nontrivial 3-cycle g^-1 * g^x.
    int three_cycle = -1, transposition = -1;
    for (int g = 1; g < 6; ++g) {
      if (s3.element_order(g) == 3 && three_cycle < 0) three_cycle = g;
      if (s3.element_order(g) == 2 && transposition < 0) transposition = g;
    }
    int c = s3.commutator(three_cycle, transposition);
    CHECK(s3.element_order(c) == 3);
  }
  SECTION("commutator subgroup of an element") {
    Group q8 = generalized_quaternion_group(8);
    Subgroup zq = center(q8);
    for (int z : zq.elements())
      CHECK(commutator_subgroup_of_element(q8, z).is_trivial());
    int i = 1;  // a in <a, b>, order 4
    Subgroup ci = commutator_subgroup_of_element(q8, i);
    CHECK(ci.order() == 2);
    CHECK(ci.members() == zq.members());

    Group d8 = dihedral_group(8);
    int r = find_rotation(d8);
    Subgroup cr = commutator_subgroup_of_element(d8, r);
    CHECK(cr.order() == 2);
    CHECK(cr.contains(d8.mul(r, r)));
  }
}

TEST_CASE("subgroups") {
  Group d8 = dihedral_group(8);
  SECTION("subgroup_generated") {
    CHECK(subgroup_generated(d8, {}).is_trivial());
    int r = find_rotation(d8);
    CHECK(subgroup_generated(d8, {r}).order() == 4);
    std::vector<int> all(8);
    std::iota(all.begin(), all.end(), 0);
    CHECK(subgroup_generated(d8, all).is_whole_group());
  }
  SECTION("center") {
    CHECK(center(cyclic_group(12)).is_whole_group());
    CHECK(center(symmetric_group(3)).is_trivial());
    Subgroup z = center(d8);
    CHECK(z.order() == 2);
    int r = find_rotation(d8);
    CHECK(z.contains(d8.mul(r, r)));
  }
  SECTION("center equals the union of singleton classes") {
    for (const Group& g : {d8, symmetric_group(4), dihedral_group(16),
                           generalized_quaternion_group(12)}) {
      Subgroup z = center(g);
      ConjugacyClasses cc = conjugacy_classes(g);
      for (int e = 0; e < g.order(); ++e)
        CHECK(z.contains(e) == (cc.sizes[cc.class_of[e]] == 1));
    }
  }
  SECTION("centralizer") {
    Group s3 = symmetric_group(3);
    int three_cycle = -1;
    for (int g = 1; g < 6; ++g)
      if (s3.element_order(g) == 3) {
        three_cycle = g;
        break;
      }
    CHECK(centralizer(s3, three_cycle).order() == 3);
  }
  SECTION("invalid membership sets are rejected") {
    Bitset open(8);
    open.set(0);
    open.set(find_rotation(d8));  // r alone is not closed
    CHECK_THROWS_AS(Subgroup(d8, open), InternalError);
  }
}

TEST_CASE("d subgroup") {
  SECTION("identity gives the whole group") {
    Group d16 = dihedral_group(16);
    CHECK(d_subgroup(d16, 0).is_whole_group());
  }
  SECTION("Q8: every D(g) is Q8 since Q8/Z is abelian") {
    Group q8 = generalized_quaternion_group(8);
    for (int g = 0; g < 8; ++g) CHECK(d_subgroup(q8, g).is_whole_group());
  }
  SECTION("D16: D(r) is the rotation subgroup") {
    Group d16 = dihedral_group(16);
    int r = find_rotation(d16);
    Subgroup d = d_subgroup(d16, r);
    CHECK(d.order() == 8);
    CHECK(d.contains(r));
    // It matches the brute-force set {x : [x, r] in Z}.
    Subgroup z = center(d16);
    for (int x = 0; x < 16; ++x)
      CHECK(d.contains(x) == z.contains(d16.commutator(x, r)));
  }
  SECTION("contains centralizer and center") {
    Group sd = semidihedral_group(16);
    Subgroup z = center(sd);
    for (int g = 0; g < sd.order(); ++g) {
      Subgroup d = d_subgroup(sd, g);
      CHECK(z.members().is_subset_of(d.members()));
      CHECK(centralizer(sd, g).members().is_subset_of(d.members()));
    }
  }
}

TEST_CASE("quotients") {
  Group q8 = generalized_quaternion_group(8);
  SECTION("by the whole group") {
    Bitset all(8);
    for (int g = 0; g < 8; ++g) all.set(g);
    QuotientMap q = quotient(q8, Subgroup(q8, all));
    CHECK(q.image.order() == 1);
  }
  SECTION("Q8 / Z is V4") {
    QuotientMap q = quotient(q8, center(q8));
    REQUIRE(q.image.order() == 4);
    for (int g = 1; g < 4; ++g) CHECK(q.image.element_order(g) == 2);
  }
  SECTION("D8 / <r^2> is V4") {
    Group d8 = dihedral_group(8);
    int r2 = d8.mul(1, 1);
    QuotientMap q = quotient(d8, subgroup_generated(d8, {r2}));
    REQUIRE(q.image.order() == 4);
    for (int g = 1; g < 4; ++g) CHECK(q.image.element_order(g) == 2);
  }
  SECTION("non-normal kernel throws") {
    Group s3 = symmetric_group(3);
    int transposition = -1;
    for (int g = 1; g < 6; ++g)
      if (s3.element_order(g) == 2) {
        transposition = g;
        break;
      }
    CHECK_THROWS_AS(quotient(s3, subgroup_generated(s3, {transposition})),
                    NotNormal);
  }
  SECTION("projection is a homomorphism") {
    Group d12 = dihedral_group(12);
    Subgroup n = derived_subgroup(d12);
    QuotientMap q = quotient(d12, n);
    CHECK(q.image.order() == d12.order() / n.order());
    for (int a = 0; a < 12; ++a)
      for (int b = 0; b < 12; ++b)
        CHECK(q.proj[d12.mul(a, b)] == q.image.mul(q.proj[a], q.proj[b]));
    for (int g = 0; g < 12; ++g) CHECK((q.proj[g] == 0) == n.contains(g));
  }
}

TEST_CASE("minimal normal subgroups and monolithicity") {
  SECTION("trivial group") {
    Group e = cyclic_group(1);
    CHECK(minimal_normal_subgroups(e).empty());
    CHECK_FALSE(is_monolithic(e));
  }
  SECTION("Q8 is monolithic with socle {1,-1}") {
    Group q8 = generalized_quaternion_group(8);
    auto mins = minimal_normal_subgroups(q8);
    REQUIRE(mins.size() == 1);
    CHECK(mins[0].order() == 2);
    CHECK(mins[0].members() == center(q8).members());
    CHECK(is_monolithic(q8));
  }
  SECTION("V4 has three minimal normal subgroups") {
    Group v4 = abelian_group({2, 2});
    auto mins = minimal_normal_subgroups(v4);
    REQUIRE(mins.size() == 3);
    for (const auto& m : mins) CHECK(m.order() == 2);
    CHECK_FALSE(is_monolithic(v4));
  }
  SECTION("S3 is monolithic via A3") {
    Group s3 = symmetric_group(3);
    auto mins = minimal_normal_subgroups(s3);
    REQUIRE(mins.size() == 1);
    CHECK(mins[0].order() == 3);
    CHECK(is_monolithic(s3));
  }
}

TEST_CASE("nilpotency and sylow factorization") {
  SECTION("verdicts") {
    CHECK(is_nilpotent(dihedral_group(8)));
    CHECK(is_nilpotent(semidihedral_group(32)));
    CHECK(is_nilpotent(cyclic_group(12)));
    CHECK_FALSE(is_nilpotent(symmetric_group(3)));
    CHECK_FALSE(is_nilpotent(direct_product(cyclic_group(2), symmetric_group(3))));
    CHECK_FALSE(is_nilpotent(alternating_group(4)));
  }
  SECTION("Q8 x C3") {
    Group g = direct_product(generalized_quaternion_group(8), cyclic_group(3));
    CHECK(is_nilpotent(g));
    auto parts = sylow_factorization(g);
    REQUIRE(parts.has_value());
    REQUIRE(parts->size() == 2);
    CHECK((*parts)[0].first == 2);
    CHECK((*parts)[0].second.order() == 8);
    CHECK((*parts)[1].first == 3);
    CHECK((*parts)[1].second.order() == 3);
  }
  SECTION("C12 splits as C4 x C3") {
    auto parts = sylow_factorization(cyclic_group(12));
    REQUIRE(parts.has_value());
    REQUIRE(parts->size() == 2);
    CHECK((*parts)[0].second.order() == 4);
    CHECK((*parts)[1].second.order() == 3);
  }
  SECTION("unavailable for S3") {
    CHECK_FALSE(sylow_factorization(symmetric_group(3)).has_value());
  }
  SECTION("parts commute elementwise and generate") {
    Group g = direct_product(dihedral_group(8), cyclic_group(9));
    auto parts = sylow_factorization(g);
    REQUIRE(parts.has_value());
    std::vector<int> gens;
    long long prod = 1;
    for (const auto& [p, sub] : *parts) {
      prod *= sub.order();
      for (int e : sub.elements()) gens.push_back(e);
    }
    CHECK(prod == g.order());
    for (const auto& [p1, s1] : *parts)
      for (const auto& [p2, s2] : *parts) {
        if (p1 == p2) continue;
        for (int a : s1.elements())
          for (int b : s2.elements()) CHECK(g.mul(a, b) == g.mul(b, a));
      }
    CHECK(subgroup_generated(g, gens).is_whole_group());
  }
}

TEST_CASE("direct products") {
  Group c6 = direct_product(cyclic_group(2), cyclic_group(3));
  CHECK(c6.order() == 6);
  CHECK(c6.is_abelian());
  CHECK(c6.exponent() == 6);

  Group big = direct_product(generalized_quaternion_group(8),
                             heisenberg_group(3));
  CHECK(big.order() == 216);
  CHECK_FALSE(big.is_abelian());

  Limits lim;
  lim.order_cap = 100;
  CHECK_THROWS_AS(
      direct_product(cyclic_group(50, lim), cyclic_group(3, lim), lim),
      OrderCapExceeded);
}

TEST_CASE("structural properties over a pool", "[property]") {
  std::vector<Group> pool;
  pool.push_back(symmetric_group(3));
  pool.push_back(dihedral_group(8));
  pool.push_back(generalized_quaternion_group(8));
  pool.push_back(cyclic_group(12));
  pool.push_back(alternating_group(4));
  pool.push_back(dihedral_group(16));
  std::mt19937_64 rng(0x67767a);
  for (const Group& g : pool) {
    ConjugacyClasses cc = conjugacy_classes(g);
    int total = 0;
    for (int c = 0; c < cc.count(); ++c) {
      total += cc.sizes[c];
      CHECK(g.order() % cc.sizes[c] == 0);
      CHECK(cc.class_of[g.inv(cc.reps[c])] == cc.inverse_class[c]);
    }
    CHECK(total == g.order());
    CHECK(cc.sizes[0] == 1);
    CHECK(cc.reps[0] == 0);

    Subgroup z = center(g);
    Subgroup derived = derived_subgroup(g);
    std::uniform_int_distribution<int> pick(0, g.order() - 1);
    for (int trial = 0; trial < 50; ++trial) {
      int a = pick(rng), x = pick(rng);
      CHECK(cc.class_of[g.conjugate(a, x)] == cc.class_of[a]);
      CHECK(g.conjugate(a, x) == g.mul(a, g.commutator(a, x)));
      Subgroup ca = commutator_subgroup_of_element(g, a);
      CHECK(ca.members().is_subset_of(derived.members()));
      CHECK(ca.is_trivial() == z.contains(a));
    }
  }
}
