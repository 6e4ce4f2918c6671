#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <map>

#include "brute_oracle.hpp"
#include "gvz/char_table.hpp"
#include "gvz/families.hpp"
#include "gvz/group.hpp"

using namespace gvz;

namespace {

std::vector<int> degrees_of(const CharacterTable& T) {
  std::vector<int> d;
  for (const auto& ch : T.chars) d.push_back(ch.degree);
  return d;
}

int find_degree(const CharacterTable& T, int degree) {
  for (int i = 0; i < T.count(); ++i)
    if (T.chars[i].degree == degree) return i;
  return -1;
}

long long as_int(const CyclotomicInt& v) {
  auto x = v.as_integer();
  REQUIRE(x.has_value());
  return *x;
}

}  // namespace

TEST_CASE("class multiplication coefficients") {
  SECTION("identity class acts as the identity") {
    Group g = symmetric_group(4);
    ConjugacyClasses cc = conjugacy_classes(g);
    ClassMatrices cm = class_matrices(g, cc);
    for (int j = 0; j < cc.count(); ++j)
      for (int k = 0; k < cc.count(); ++k)
        CHECK(cm.at(0, j, k) == (j == k ? 1 : 0));
  }
  SECTION("S3: the 3-cycle class squared") {
    Group s3 = symmetric_group(3);
    ConjugacyClasses cc = conjugacy_classes(s3);
    ClassMatrices cm = class_matrices(s3, cc);
    REQUIRE(cc.rep_orders == std::vector<int>{1, 2, 3});
    CHECK(cm.at(2, 2, 0) == 2);
    CHECK(cm.at(2, 2, 2) == 1);
    CHECK(cm.at(2, 2, 1) == 0);
  }
  SECTION("matches direct counting") {
    for (const Group& g : {generalized_quaternion_group(8), symmetric_group(4),
                           dihedral_group(12)}) {
      ConjugacyClasses cc = conjugacy_classes(g);
      ClassMatrices cm = class_matrices(g, cc);
      for (int i = 0; i < cc.count(); ++i)
        for (int j = 0; j < cc.count(); ++j) {
          long long row = 0;
          for (int k = 0; k < cc.count(); ++k) {
            CHECK(cm.at(i, j, k) == brute::class_coefficient(
                      g, cc.members[i], cc.members[j], cc.reps[k]));
            row += cm.at(i, j, k) * cc.sizes[k];
          }
          CHECK(row == static_cast<long long>(cc.sizes[i]) * cc.sizes[j]);
        }
    }
  }
}

TEST_CASE("golden tables") {
  SECTION("C2") {
    Group g = cyclic_group(2);
    CharacterTable T = character_table(g);
    REQUIRE(T.count() == 2);
    CHECK(as_int(T.chars[0].values[0]) == 1);
    CHECK(as_int(T.chars[0].values[1]) == 1);
    CHECK(as_int(T.chars[1].values[0]) == 1);
    CHECK(as_int(T.chars[1].values[1]) == -1);
  }
  SECTION("S3") {
    Group g = symmetric_group(3);
    CharacterTable T = character_table(g);
    REQUIRE(degrees_of(T) == std::vector<int>{1, 1, 2});
    const auto& rho = T.chars[2];
    CHECK(as_int(rho.values[0]) == 2);
    CHECK(rho.values[1].is_zero());
    CHECK(as_int(rho.values[2]) == -1);
    // The sign character is -1 on transpositions, +1 on 3-cycles.
    CHECK(as_int(T.chars[1].values[1]) == -1);
    CHECK(as_int(T.chars[1].values[2]) == 1);
  }
  SECTION("Q8") {
    Group g = generalized_quaternion_group(8);
    CharacterTable T = character_table(g);
    REQUIRE(degrees_of(T) == std::vector<int>{1, 1, 1, 1, 2});
    const auto& rho = T.chars[4];
    CHECK(as_int(rho.values[0]) == 2);
    CHECK(as_int(rho.values[1]) == -2);
    CHECK(rho.values[2].is_zero());
    CHECK(rho.values[3].is_zero());
    CHECK(rho.values[4].is_zero());
  }
  SECTION("C3 dump") {
    Group g = cyclic_group(3);
    CharacterTable T = character_table(g);
    CHECK(dump_table(T) ==
          "order 3 classes 3\n"
          "1 1 1\n"
          "1 1:1 3:1,0,0 3:1,0,0\n"
          "1 1:1 3:-1,-1,0 3:0,1,0\n"
          "1 1:1 3:0,1,0 3:-1,-1,0\n");
  }
}

TEST_CASE("kernel and center of a character") {
  Group q8 = generalized_quaternion_group(8);
  Group s3 = symmetric_group(3);
  CharacterTable Tq = character_table(q8);
  CharacterTable Ts = character_table(s3);

  SECTION("principal character has kernel G") {
    CHECK(kernel_of(Tq, 0).is_whole_group());
    CHECK(center_of(Tq, 0).is_whole_group());
  }
  SECTION("faithful character of Q8") {
    int rho = find_degree(Tq, 2);
    CHECK(kernel_of(Tq, rho).is_trivial());
    CHECK(center_of(Tq, rho).order() == 2);
  }
  SECTION("S3") {
    CHECK(kernel_of(Ts, 1).order() == 3);  // sign: kernel A3
    int rho = find_degree(Ts, 2);
    CHECK(kernel_of(Ts, rho).is_trivial());
    CHECK(center_of(Ts, rho).is_trivial());
  }
  SECTION("linear characters have center G") {
    for (int i = 0; i < Tq.count(); ++i)
      if (Tq.chars[i].degree == 1) CHECK(center_of(Tq, i).is_whole_group());
  }
}

TEST_CASE("vanishing off a subgroup") {
  Group q8 = generalized_quaternion_group(8);
  CharacterTable T = character_table(q8);
  int rho = find_degree(T, 2);
  SECTION("the whole group works for every character") {
    Bitset all(8);
    for (int g = 0; g < 8; ++g) all.set(g);
    Subgroup whole(q8, all);
    for (int i = 0; i < T.count(); ++i) CHECK(vanishes_off(T, i, whole));
  }
  SECTION("the faithful character of Q8 vanishes off the center") {
    CHECK(vanishes_off(T, rho, T.center_sub));
  }
  SECTION("the standard character of S3 does not vanish off 1") {
    Group s3 = symmetric_group(3);
    CharacterTable Ts = character_table(s3);
    Bitset one(6);
    one.set(0);
    CHECK_FALSE(vanishes_off(Ts, find_degree(Ts, 2), Subgroup(s3, one)));
  }
}

TEST_CASE("central characters") {
  SECTION("principal restricts to the trivial central character") {
    Group d8 = dihedral_group(8);
    CharacterTable T = character_table(d8);
    CentralCharacter lam = central_character(T, 0);
    for (auto [num, den] : lam.turns) {
      CHECK(num == 0);
      CHECK(den == 1);
    }
    CHECK_FALSE(lam.is_faithful());
    CHECK(lam.kernel_bits(8).count() == 2);
  }
  SECTION("faithful character of Q8 restricts faithfully") {
    Group q8 = generalized_quaternion_group(8);
    CharacterTable T = character_table(q8);
    CentralCharacter lam = central_character(T, find_degree(T, 2));
    REQUIRE(lam.z_elements.size() == 2);
    int z = lam.z_elements[1];
    CHECK(lam.value_at(z) == -1);
    CHECK(lam.is_faithful());
    CHECK(lam.kernel_bits(8).count() == 1);
    CHECK_THROWS_AS(lam.value_at(1), NotCentralElement);
  }
  SECTION("linear characters of C4 are their own restrictions") {
    Group c4 = cyclic_group(4);
    CharacterTable T = character_table(c4);
    for (int i = 0; i < 4; ++i) {
      CentralCharacter lam = central_character(T, i);
      for (int g = 0; g < 4; ++g)
        CHECK(lam.value_at(g) == T.chars[i].values[T.classes.class_of[g]]);
    }
  }
  SECTION("irr_of_center enumerates |Z| characters partitioning the rows") {
    for (const Group& g :
         {generalized_quaternion_group(8), dihedral_group(16), cyclic_group(6),
          direct_product(dihedral_group(8), cyclic_group(2))}) {
      CharacterTable T = character_table(g);
      auto irr = irr_of_center(g, T.center_sub);
      CHECK(static_cast<int>(irr.size()) == T.center_sub.order());
      auto restrictions = all_central_characters(T);
      int total = 0;
      for (const auto& lam : irr)
        total += induced_constituent_count(T, lam, restrictions);
      CHECK(total == T.count());
    }
  }
}

TEST_CASE("full ramification") {
  SECTION("abelian: every central character is fully ramified") {
    Group c6 = cyclic_group(6);
    CharacterTable T = character_table(c6);
    auto restrictions = all_central_characters(T);
    for (const auto& lam : restrictions) {
      CHECK(induced_constituent_count(T, lam, restrictions) == 1);
      CHECK(is_fully_ramified(T, lam, restrictions));
    }
  }
  SECTION("Q8") {
    Group q8 = generalized_quaternion_group(8);
    CharacterTable T = character_table(q8);
    auto restrictions = all_central_characters(T);
    CentralCharacter faithful = central_character(T, find_degree(T, 2));
    CentralCharacter trivial = central_character(T, 0);
    CHECK(induced_constituent_count(T, faithful, restrictions) == 1);
    CHECK(is_fully_ramified(T, faithful, restrictions));
    CHECK(induced_constituent_count(T, trivial, restrictions) == 4);
    CHECK_FALSE(is_fully_ramified(T, trivial, restrictions));
  }
  SECTION("D16: the faithful central character splits in two") {
    Group d16 = dihedral_group(16);
    CharacterTable T = character_table(d16);
    auto irr = irr_of_center(d16, T.center_sub);
    int faithful = -1;
    for (std::size_t i = 0; i < irr.size(); ++i)
      if (irr[i].is_faithful()) faithful = static_cast<int>(i);
    REQUIRE(faithful >= 0);
    auto restrictions = all_central_characters(T);
    CHECK(induced_constituent_count(T, irr[faithful], restrictions) == 2);
    CHECK_FALSE(is_fully_ramified(T, irr[faithful], restrictions));
    // Independent count: rows with chi(z) = -chi(1) for the central
    // involution z.
    int z = T.center_sub.elements()[1];
    int zc = T.classes.class_of[z];
    int direct = 0;
    for (const auto& ch : T.chars)
      if (ch.values[zc] == -static_cast<long long>(ch.degree)) ++direct;
    CHECK(direct == 2);
  }
}

TEST_CASE("table invariants over a pool", "[property]") {
  std::vector<Group> pool;
  pool.push_back(symmetric_group(3));
  pool.push_back(dihedral_group(8));
  pool.push_back(generalized_quaternion_group(8));
  pool.push_back(cyclic_group(12));
  pool.push_back(semidihedral_group(16));
  pool.push_back(alternating_group(4));
  pool.push_back(heisenberg_group(3));
  pool.push_back(dihedral_group(16));
  for (const Group& g : pool) {
    INFO(g.name());
    CharacterTable T = character_table(g);
    const int k = T.count();
    const long long n = g.order();
    REQUIRE(k == T.classes.count());

    long long dsq = 0;
    int linear = 0;
    for (const auto& ch : T.chars) {
      dsq += static_cast<long long>(ch.degree) * ch.degree;
      if (ch.degree == 1) ++linear;
      CHECK(n % ch.degree == 0);
    }
    CHECK(dsq == n);
    CHECK(linear == n / derived_subgroup(g).order());

    // Exact first and second orthogonality.
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) {
        CyclotomicInt acc(0);
        for (int c = 0; c < k; ++c)
          acc += static_cast<long long>(T.classes.sizes[c]) *
                 (T.chars[i].values[c] * T.chars[j].values[c].conjugate());
        CHECK(acc == (i == j ? n : 0));
      }
    for (int c = 0; c < k; ++c)
      for (int c2 = c; c2 < k; ++c2) {
        CyclotomicInt acc(0);
        for (int i = 0; i < k; ++i)
          acc += T.chars[i].values[c] * T.chars[i].values[c2].conjugate();
        CHECK(acc == (c == c2 ? n / T.classes.sizes[c] : 0));
      }

    // chi(g^-1) is the conjugate value; power maps land in the right class.
    for (int c = 0; c < k; ++c) {
      int inv = T.classes.inverse_class[c];
      for (const auto& ch : T.chars)
        CHECK(ch.values[inv] == ch.values[c].conjugate());
      int e = T.classes.reps[c];
      int pow = 0;
      for (int j = 0; j <= T.classes.rep_orders[c]; ++j) {
        CHECK(T.power_class(c, j) == T.classes.class_of[pow]);
        pow = g.mul(pow, e);
      }
    }

    for (int i = 0; i < k; ++i) {
      Subgroup ker = kernel_of(T, i);
      Subgroup zee = center_of(T, i);
      CHECK(ker.is_normal());
      CHECK(zee.is_normal());
      CHECK(ker.is_subset_of(zee));

      // Z(chi)/ker(chi) is cyclic.
      QuotientMap q = quotient(g, ker);
      int want = zee.order() / ker.order();
      int best = 0;
      for (int z : zee.elements())
        best = std::max(best, q.image.element_order(q.proj[z]));
      CHECK(best == want);

      // Degree criterion: chi(1)^2 = |G : Z(chi)| iff chi vanishes off Z(chi).
      bool sq = static_cast<long long>(T.chars[i].degree) * T.chars[i].degree ==
                n / zee.order();
      CHECK(sq == vanishes_off(T, i, zee));
    }
  }
}

TEST_CASE("direct product degrees multiply") {
  Group g = direct_product(generalized_quaternion_group(8), cyclic_group(3));
  CharacterTable T = character_table(g);
  std::vector<int> d = degrees_of(T);
  std::map<int, int> freq;
  for (int x : d) ++freq[x];
  CHECK(T.count() == 15);
  CHECK(freq[1] == 12);
  CHECK(freq[2] == 3);
}
