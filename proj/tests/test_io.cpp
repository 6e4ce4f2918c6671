#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gvz/families.hpp"
#include "gvz/group.hpp"
#include "gvz/io.hpp"

using namespace gvz;

namespace {

std::string write_temp(const std::string& stem, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / stem;
  std::ofstream out(path);
  out << text;
  return path.string();
}

}  // namespace

TEST_CASE("table format") {
  SECTION("comments and blank lines are ignored") {
    const std::string text =
        "# the Klein four-group\n"
        "\n"
        "4   # order\n"
        "0 1 2 3\n"
        "1 0 3 2  # row of element 1\n"
        "\n"
        "2 3 0 1\n"
        "3 2 1 0\n";
    Group g = group_from_table_text(text, "V4");
    CHECK(g.order() == 4);
    CHECK(g.is_abelian());
    CHECK(g.exponent() == 2);
  }
  SECTION("identity is relabeled to index 0") {
    // C3 with the identity written at index 2.
    Group g = group_from_table_text("3\n1 2 0\n2 0 1\n0 1 2\n", "C3-shifted");
    CHECK(g.mul(0, 0) == 0);
    CHECK(g.element_order(1) == 3);
    auto lines = to_table_text(g);
    CHECK(lines.find("\n0 1 2\n") != std::string::npos);
  }
  SECTION("round trip") {
    for (const Group& g : {generalized_quaternion_group(8), symmetric_group(3),
                           dihedral_group(16)}) {
      Group back = group_from_table_text(to_table_text(g), g.name());
      REQUIRE(back.order() == g.order());
      for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) CHECK(back.mul(a, b) == g.mul(a, b));
    }
  }
  SECTION("malformed inputs carry line numbers") {
    CHECK_THROWS_AS(group_from_table_text("", "g"), MalformedFile);
    CHECK_THROWS_WITH(group_from_table_text("x\n", "g"),
                      Catch::Matchers::ContainsSubstring("line 1") &&
                          Catch::Matchers::ContainsSubstring("'x'"));
    CHECK_THROWS_WITH(group_from_table_text("2\n0 1\n1 x\n", "g"),
                      Catch::Matchers::ContainsSubstring("line 3"));
    CHECK_THROWS_WITH(group_from_table_text("2\n0 1\n1 5\n", "g"),
                      Catch::Matchers::ContainsSubstring("out of range"));
    CHECK_THROWS_WITH(group_from_table_text("3\n0 1 2\n1 2 0\n", "g"),
                      Catch::Matchers::ContainsSubstring("expected 3 table rows"));
    CHECK_THROWS_WITH(group_from_table_text("2\n0 1\n1 0 0\n", "g"),
                      Catch::Matchers::ContainsSubstring("line 3"));
  }
  SECTION("group-law violations surface as NotAGroup") {
    CHECK_THROWS_AS(group_from_table_text("2\n0 1\n0 1\n", "g"), NotAGroup);
  }
  SECTION("order outside the cap") {
    CHECK_THROWS_AS(group_from_table_text("6000\n", "g"), OrderCapExceeded);
    Limits lim;
    lim.order_cap = 3;
    CHECK_THROWS_AS(
        group_from_table_text("4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n", "g", lim),
        OrderCapExceeded);
  }
}

TEST_CASE("permutation format") {
  SECTION("S3 from a transposition and a 3-cycle") {
    Group g = group_from_permutation_text("3\n1 2 0\n1 0 2\n", "S3");
    CHECK(g.order() == 6);
    CHECK_FALSE(g.is_abelian());
    CHECK(conjugacy_classes(g).count() == 3);
  }
  SECTION("single 4-cycle generates C4") {
    Group g = group_from_permutation_text("4\n1 2 3 0\n", "C4");
    CHECK(g.order() == 4);
    CHECK(g.is_abelian());
    CHECK(g.exponent() == 4);
  }
  SECTION("regular representation of Q8") {
    Group q8 = generalized_quaternion_group(8);
    std::vector<std::vector<int>> rows;
    for (int a = 0; a < 8; ++a) {
      std::vector<int> row(8);
      for (int b = 0; b < 8; ++b) row[b] = q8.mul(a, b);
      rows.push_back(std::move(row));
    }
    Group g = group_from_permutations(8, rows, "Q8-regular");
    CHECK(g.order() == 8);
    CHECK(g.exponent() == 4);
    int involutions = 0;
    for (int e = 1; e < 8; ++e)
      if (g.element_order(e) == 2) ++involutions;
    CHECK(involutions == 1);
  }
  SECTION("bad generators") {
    CHECK_THROWS_AS(group_from_permutation_text("3\n0 0 1\n", "g"),
                    NotAPermutation);
    CHECK_THROWS_AS(group_from_permutation_text("3\n0 1 5\n", "g"),
                    NotAPermutation);
    CHECK_THROWS_WITH(group_from_permutation_text("3\n0 1\n", "g"),
                      Catch::Matchers::ContainsSubstring("line 2"));
  }
  SECTION("closure exceeding the cap") {
    // A transposition and an 8-cycle generate S8 of order 40320.
    CHECK_THROWS_AS(group_from_permutation_text(
                        "8\n1 0 2 3 4 5 6 7\n1 2 3 4 5 6 7 0\n", "S8"),
                    OrderCapExceeded);
  }
}

TEST_CASE("format detection") {
  SECTION("table-shaped input parses as a table") {
    Group g = group_from_text("2\n0 1\n1 0\n", "C2");
    CHECK(g.order() == 2);
  }
  SECTION("anything else parses as permutations") {
    Group g = group_from_text("3\n1 2 0\n1 0 2\n", "S3");
    CHECK(g.order() == 6);
  }
  SECTION("forcing the wrong format fails loudly") {
    CHECK_THROWS_AS(
        group_from_text("3\n1 2 0\n1 0 2\n", "S3", SourceFormat::table),
        MalformedFile);
  }
}

TEST_CASE("file loading") {
  SECTION("name comes from the basename") {
    std::string path = write_temp("io_smoke_q8.tbl",
                                  to_table_text(generalized_quaternion_group(8)));
    Group g = group_from_file(path);
    CHECK(g.order() == 8);
    CHECK(g.name() == "io_smoke_q8");
    std::remove(path.c_str());
  }
  SECTION("missing file") {
    CHECK_THROWS_WITH(group_from_file("/nonexistent/nowhere.tbl"),
                      Catch::Matchers::ContainsSubstring("nowhere.tbl"));
  }
  SECTION("parse errors carry the path") {
    std::string path = write_temp("io_smoke_bad.tbl", "2\n0 1\nzzz 0\n");
    CHECK_THROWS_WITH(group_from_file(path),
                      Catch::Matchers::ContainsSubstring("io_smoke_bad.tbl") &&
                          Catch::Matchers::ContainsSubstring("line 3"));
    std::remove(path.c_str());
  }
}
