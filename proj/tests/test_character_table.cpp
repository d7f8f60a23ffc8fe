#include <doctest.h>

#include <random>

#include "sct/character_table.hpp"
#include "test_util.hpp"

using namespace sct;
using sct::testing::fixture;

namespace {

const char* kAllFixtures[] = {"c2", "c3", "c4", "c5",  "c7", "s3",    "d8",
                              "q8", "a4", "a5", "a6",  "a7", "psl27", "m11"};

}  // namespace

TEST_CASE("parsing fixes one field per table") {
  CHECK(fixture("s3").conductor() == 1);
  CHECK(fixture("s3").k() == 3);
  CHECK(fixture("a5").conductor() == 5);
  CHECK(fixture("a5").k() == 5);
  CHECK(fixture("m11").conductor() == 88);
  CHECK(fixture("a5").degree(3) == 4);
  CHECK(fixture("a5").class_size(2) == 20);
  CHECK(fixture("a5").name() == "A5");
  CHECK(fixture("c4").power_maps().at(2) == std::vector<unsigned>{0, 2, 0, 2});
}

TEST_CASE("structural parse errors") {
  CHECK_THROWS_WITH_AS(
      CharacterTable::parse(R"({"name":"x","order":2,"class_sizes":[1,1],
        "values":[[1,1],[1,"E(4"]]})"),
      doctest::Contains("values[1][1]"), TableError);
  // non-square
  CHECK_THROWS_AS(CharacterTable::parse(R"({"order":2,"class_sizes":[1,1],
        "values":[[1,1]]})"),
                  TableError);
  CHECK_THROWS_AS(CharacterTable::parse(R"({"order":2,"class_sizes":[1,1],
        "values":[[1],[1]]})"),
                  TableError);
  // identity class must be column 0
  CHECK_THROWS_AS(CharacterTable::parse(R"({"order":2,"class_sizes":[2,1],
        "values":[[1,1],[1,-1]]})"),
                  TableError);
  // trivial character must be row 0
  CHECK_THROWS_AS(CharacterTable::parse(R"({"order":2,"class_sizes":[1,1],
        "values":[[1,-1],[1,1]]})"),
                  TableError);
  // degrees must be positive integers
  CHECK_THROWS_AS(CharacterTable::parse(R"json({"order":2,"class_sizes":[1,1],
        "values":[[1,1],["E(4)",1]]})json"),
                  TableError);
  CHECK_THROWS_AS(CharacterTable::load(std::string(SCT_DATA_DIR) + "/no_such_table.json"),
                  std::ios_base::failure);
}

TEST_CASE("every bundled fixture validates") {
  for (const char* name : kAllFixtures) {
    const ValidationReport report = fixture(name).validate();
    CAPTURE(name);
    CHECK(report.ok());
    for (const std::string& f : report.failures) MESSAGE(f);
  }
}

TEST_CASE("validation pinpoints broken tables") {
  // A5 with chi4(2a) negated: 0 stays 0? use chi5(2a)=1 -> -1 instead.
  const CharacterTable bad = CharacterTable::parse(R"({
    "name": "A5broken", "order": 60,
    "class_sizes": [1, 15, 20, 12, 12],
    "values": [
      [1, 1, 1, 1, 1],
      [3, -1, 0, "-E(5)^2-E(5)^3", "-E(5)-E(5)^4"],
      [3, -1, 0, "-E(5)-E(5)^4", "-E(5)^2-E(5)^3"],
      [4, 0, 1, -1, -1],
      [5, -1, -1, 0, 0]
    ]})");
  const ValidationReport report = bad.validate();
  CHECK_FALSE(report.ok());
  bool names_row_pair = false;
  for (const std::string& f : report.failures) {
    if (f.find("row orthogonality") != std::string::npos && f.find("4") != std::string::npos) {
      names_row_pair = true;
    }
  }
  CHECK(names_row_pair);

  const CharacterTable bad_sizes = CharacterTable::parse(R"({
    "name": "C2broken", "order": 3,
    "class_sizes": [1, 1],
    "values": [[1, 1], [1, -1]]})");
  bool names_size_sum = false;
  for (const std::string& f : bad_sizes.validate().failures) {
    if (f.find("class sizes sum") != std::string::npos) names_size_sum = true;
  }
  CHECK(names_size_sum);
}

TEST_CASE("inverse class permutation") {
  CHECK(fixture("s3").inverse_class_perm() == std::vector<unsigned>{0, 1, 2});
  CHECK(fixture("a5").inverse_class_perm() == std::vector<unsigned>{0, 1, 2, 3, 4});
  CHECK(fixture("c4").inverse_class_perm() == std::vector<unsigned>{0, 3, 2, 1});
  for (const char* name : kAllFixtures) {
    const std::vector<unsigned> perm = fixture(name).inverse_class_perm();
    for (unsigned j = 0; j < perm.size(); ++j) CHECK(perm[perm[j]] == j);
    CHECK(perm[0] == 0);
  }
}

TEST_CASE("class algebra structure constants") {
  // C2: the involution squares to the identity.
  CHECK(fixture("c2").structure_constant(1, 1, 0) == 1);
  // S3: a product of two transpositions hits each 3-cycle three times.
  CHECK(fixture("s3").structure_constant(1, 1, 2) == 3);
  // The identity class is the unit of the class algebra.
  for (const char* name : {"s3", "a5", "c7"}) {
    const CharacterTable& t = fixture(name);
    for (unsigned j = 0; j < t.k(); ++j) {
      for (unsigned l = 0; l < t.k(); ++l) {
        CHECK(t.structure_constant(0, j, l) == Rational(j == l ? 1 : 0));
      }
    }
  }
  // Nonnegative integers everywhere on every fixture.
  for (const char* name : kAllFixtures) {
    const CharacterTable& t = fixture(name);
    for (unsigned i = 0; i < t.k(); ++i) {
      for (unsigned j = 0; j < t.k(); ++j) {
        for (unsigned l = 0; l < t.k(); ++l) {
          const Rational& c = t.structure_constant(i, j, l);
          CAPTURE(name);
          CHECK(is_integer(c));
          CHECK(c >= 0);
        }
      }
    }
  }
}

TEST_CASE("central character values") {
  for (const char* name : {"s3", "a5", "m11"}) {
    const CharacterTable& t = fixture(name);
    const Cyclotomic one(t.field(), Rational(1));
    for (unsigned i = 0; i < t.k(); ++i) {
      CHECK(t.central_character_value(i, IndexSet::single(t.k(), 0)) == one);
    }
    // The all-classes sum sees |G| on the trivial character and 0 elsewhere.
    CHECK(t.central_character_value(0, IndexSet::full(t.k())) ==
          Cyclotomic(t.field(), Rational(t.order())));
    for (unsigned i = 1; i < t.k(); ++i) {
      CHECK(t.central_character_value(i, IndexSet::full(t.k())).is_zero());
    }
  }

  // A5, one class of order-5 elements against a degree-3 character:
  // 12 * (golden ratio value) / 3.
  const CharacterTable& a5 = fixture("a5");
  CHECK(a5.central_character_value(1, IndexSet::single(5, 3)) ==
        parse_cyclotomic("-4*E(5)^2-4*E(5)^3", a5.field()));
  CHECK(a5.central_character_value(1, IndexSet::single(5, 4)) ==
        parse_cyclotomic("-4*E(5)-4*E(5)^4", a5.field()));

  // additivity over disjoint class sets
  std::mt19937_64 rng(31);
  const CharacterTable& t = fixture("a7");
  for (int trial = 0; trial < 30; ++trial) {
    IndexSet s(t.k()), s2(t.k());
    for (unsigned j = 0; j < t.k(); ++j) {
      switch (rng() % 3) {
        case 0: s.set(j); break;
        case 1: s2.set(j); break;
        default: break;
      }
    }
    if (s.empty() || s2.empty()) continue;
    for (unsigned i = 0; i < t.k(); ++i) {
      CHECK(t.central_character_value(i, s | s2) ==
            t.central_character_value(i, s) + t.central_character_value(i, s2));
    }
  }
}
