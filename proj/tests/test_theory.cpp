#include <doctest.h>

#include <random>

#include "sct/enumerate.hpp"
#include "sct/theory.hpp"
#include "test_util.hpp"

using namespace sct;
using sct::testing::coarsen;
using sct::testing::fixture;
using sct::testing::random_identity_partition;
using sct::testing::random_partition;

namespace {

Partition pt(const CharacterTable& t, const char* text) { return Partition::parse(text, t.k()); }

}  // namespace

TEST_CASE("supercharacter value rows") {
  const CharacterTable& a5 = fixture("a5");
  const Cyclotomic one(a5.field(), Rational(1));

  const std::vector<Cyclotomic> triv = supercharacter_values(a5, IndexSet::single(5, 0));
  for (const Cyclotomic& v : triv) CHECK(v == one);

  // the full character set gives the regular character
  const std::vector<Cyclotomic> reg = supercharacter_values(a5, IndexSet::full(5));
  CHECK(reg[0] == Cyclotomic(a5.field(), Rational(60)));
  for (unsigned j = 1; j < 5; ++j) CHECK(reg[j].is_zero());

  const std::vector<Cyclotomic> deg4 = supercharacter_values(a5, IndexSet::single(5, 3));
  const long expect[5] = {16, 0, 4, -4, -4};
  for (unsigned j = 0; j < 5; ++j) CHECK(deg4[j] == Cyclotomic(a5.field(), Rational(expect[j])));
}

TEST_CASE("class partition from character families") {
  const CharacterTable& a5 = fixture("a5");

  const std::vector<IndexSet> trivial_split{IndexSet::single(5, 0),
                                            IndexSet::single(5, 0).complement()};
  CHECK(class_partition(a5, trivial_split) == pt(a5, "[[0],[1,2,3,4]]"));

  const std::vector<IndexSet> deg4_split{IndexSet::single(5, 3),
                                         IndexSet::single(5, 3).complement()};
  CHECK(class_partition(a5, deg4_split) == pt(a5, "[[0],[1],[2],[3,4]]"));

  // all singleton characters separate all columns
  for (const char* name : {"s3", "a5", "psl27"}) {
    const CharacterTable& t = fixture(name);
    CHECK(class_partition(t, Partition::singletons(t.k()).blocks()) ==
          Partition::singletons(t.k()));
  }
}

TEST_CASE("character partition from class families") {
  const CharacterTable& a5 = fixture("a5");

  const std::vector<IndexSet> identity_split{IndexSet::single(5, 0),
                                             IndexSet::single(5, 0).complement()};
  CHECK(character_partition(a5, identity_split) == pt(a5, "[[0],[1,2,3,4]]"));

  const std::vector<IndexSet> whole{IndexSet::full(5)};
  CHECK(character_partition(a5, whole) == pt(a5, "[[0],[1,2,3,4]]"));

  // the union of the order-5 classes: omega values are 24; 4; 4; -6; 0,
  // so the two degree-3 characters merge and everything else separates
  const std::vector<IndexSet> five_cls{IndexSet::of(5, {3, 4})};
  CHECK(character_partition(a5, five_cls) == pt(a5, "[[0],[1,2],[3],[4]]"));
}

TEST_CASE("refining a class partition to a theory") {
  for (const char* name : {"c4", "s3", "a5", "a6"}) {
    const CharacterTable& t = fixture(name);
    const SuperTheory coarse = refine_classes_to_theory(
        t, Partition::from_blocks({IndexSet::single(t.k(), 0),
                                   IndexSet::single(t.k(), 0).complement()}));
    CHECK(coarse == coarse_theory(t));
    const SuperTheory fine = refine_classes_to_theory(t, Partition::singletons(t.k()));
    CHECK(fine == finest_theory(t));
  }

  const CharacterTable& a5 = fixture("a5");
  const SuperTheory th = refine_classes_to_theory(a5, pt(a5, "[[0],[1],[2],[3,4]]"));
  CHECK(th.classes == pt(a5, "[[0],[1],[2],[3,4]]"));
  CHECK(th.chars == pt(a5, "[[0],[1,2],[3],[4]]"));

  // the result's class partition refines the seed
  std::mt19937_64 rng(41);
  for (const char* name : {"s3", "a5", "a6"}) {
    const CharacterTable& t = fixture(name);
    for (int trial = 0; trial < 50; ++trial) {
      const Partition seed = random_partition(rng, t.k());
      const SuperTheory theory = refine_classes_to_theory(t, seed);
      CHECK(theory.classes.refines(seed));
      CHECK(is_supercharacter_theory(t, theory.chars, theory.classes));
      // fixed point: refining the theory's own class partition changes nothing
      CHECK(refine_classes_to_theory(t, theory.classes) == theory);
    }
  }
}

TEST_CASE("refining a character partition to a theory") {
  const CharacterTable& a5 = fixture("a5");
  CHECK(refine_chars_to_theory(
            a5, Partition::from_blocks({IndexSet::single(5, 0),
                                        IndexSet::single(5, 0).complement()})) ==
        coarse_theory(a5));
  CHECK(refine_chars_to_theory(a5, Partition::singletons(5)) == finest_theory(a5));

  // separating one degree-3 character forces the finest theory
  CHECK(refine_chars_to_theory(a5, pt(a5, "[[0,2,3,4],[1]]")) == finest_theory(a5));

  std::mt19937_64 rng(43);
  for (const char* name : {"s3", "a5", "a6"}) {
    const CharacterTable& t = fixture(name);
    for (int trial = 0; trial < 50; ++trial) {
      const Partition seed = random_partition(rng, t.k());
      const SuperTheory theory = refine_chars_to_theory(t, seed);
      CHECK(theory.chars.refines(seed));
      CHECK(is_supercharacter_theory(t, theory.chars, theory.classes));
    }
  }
}

TEST_CASE("theory recognition") {
  const CharacterTable& a5 = fixture("a5");
  CHECK(is_supercharacter_theory(a5, Partition::singletons(5), Partition::singletons(5)));
  CHECK(is_supercharacter_theory(a5, coarse_theory(a5).chars, coarse_theory(a5).classes));
  CHECK(is_supercharacter_theory(a5, pt(a5, "[[0],[1,2],[3],[4]]"), pt(a5, "[[0],[1],[2],[3,4]]")));

  // no 3-block theory separates the degree-3 characters from each other
  const Partition x = pt(a5, "[[0],[1],[2,3,4]]");
  CHECK_FALSE(is_supercharacter_theory(a5, x, pt(a5, "[[0],[1],[2,3,4]]")));
  CHECK_FALSE(is_supercharacter_theory(a5, x, pt(a5, "[[0],[1,2],[3,4]]")));
  CHECK_FALSE(is_supercharacter_theory(a5, x, pt(a5, "[[0],[3],[1,2,4]]")));

  // block-count equality together with the class-map fixed point is the
  // whole definition; cross-check the two equivalent routes
  std::mt19937_64 rng(47);
  for (const char* name : {"c7", "s3", "a5"}) {
    const CharacterTable& t = fixture(name);
    for (int trial = 0; trial < 80; ++trial) {
      const Partition k = random_identity_partition(rng, t.k());
      const Partition x = character_partition(t, k.blocks());
      const bool route_a = x.block_count() == k.block_count();
      const bool route_b = class_partition(t, x.blocks()) == k;
      CHECK(route_a == route_b);
      CHECK(route_a == is_supercharacter_theory(t, x, k));
    }
  }
}

TEST_CASE("coarsest theory with a prescribed superclass") {
  const CharacterTable& a5 = fixture("a5");

  const auto mg = coarsest_theory_with_superclass(a5, IndexSet::single(5, 0));
  REQUIRE(mg.has_value());
  CHECK(*mg == coarse_theory(a5));

  const auto both5 = coarsest_theory_with_superclass(a5, IndexSet::of(5, {3, 4}));
  REQUIRE(both5.has_value());
  CHECK(both5->classes == pt(a5, "[[0],[1],[2],[3,4]]"));
  CHECK(both5->chars == pt(a5, "[[0],[1,2],[3],[4]]"));

  const auto one5 = coarsest_theory_with_superclass(a5, IndexSet::single(5, 3));
  REQUIRE(one5.has_value());
  CHECK(*one5 == finest_theory(a5));

  // 2a u 3a is not a superclass of any theory
  CHECK_FALSE(coarsest_theory_with_superclass(a5, IndexSet::of(5, {1, 2})).has_value());

  CHECK_THROWS_AS(coarsest_theory_with_superclass(a5, IndexSet::of(5, {0, 1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(coarsest_theory_with_superclass(a5, IndexSet(5)), std::invalid_argument);

  // whenever a theory is returned, S really is one of its superclasses and
  // no coarser theory has it (checked against the oracle elsewhere)
  std::mt19937_64 rng(53);
  const CharacterTable& a6 = fixture("a6");
  for (int trial = 0; trial < 60; ++trial) {
    IndexSet s(a6.k());
    for (unsigned j = 1; j < a6.k(); ++j) {
      if (rng() % 3 == 0) s.set(j);
    }
    if (s.empty()) continue;
    if (const auto theory = coarsest_theory_with_superclass(a6, s)) {
      CHECK(theory->classes.contains_block(s));
      CHECK(is_supercharacter_theory(a6, theory->chars, theory->classes));
    }
  }
}

TEST_CASE("normalized supercharacters") {
  const CharacterTable& a5 = fixture("a5");
  const SuperTheory th = refine_classes_to_theory(a5, pt(a5, "[[0],[1],[2],[3,4]]"));
  const std::vector<Supercharacter> taus = normalized_supercharacters(a5, th);
  REQUIRE(taus.size() == 4);

  CHECK(taus[0].block == IndexSet::single(5, 0));
  CHECK(taus[0].degree_gcd == 1);
  for (const Cyclotomic& v : taus[0].values) CHECK(v == Cyclotomic(a5.field(), Rational(1)));

  // {chi3a, chi3b}: gcd 3, tau = chi3a + chi3b = (6, -2, 0, 1, 1)
  CHECK(taus[1].block == IndexSet::of(5, {1, 2}));
  CHECK(taus[1].degree_gcd == 3);
  const long expect[5] = {6, -2, 0, 1, 1};
  for (unsigned j = 0; j < 5; ++j) {
    CHECK(taus[1].values[j] == Cyclotomic(a5.field(), Rational(expect[j])));
  }

  // coprime degrees leave sigma untouched: S3 coarse theory, block {1a', 2}
  const CharacterTable& s3 = fixture("s3");
  const std::vector<Supercharacter> s3taus =
      normalized_supercharacters(s3, coarse_theory(s3));
  CHECK(s3taus[1].degree_gcd == 1);
  CHECK(s3taus[1].values[0] == Cyclotomic(s3.field(), Rational(5)));
}

TEST_CASE("supercharacter products decompose integrally") {
  // trivial-block products reproduce the basis
  for (const char* name : {"c3", "s3", "a5", "psl27"}) {
    const CharacterTable& t = fixture(name);
    CHECK(verify_supercharacter_products(t, finest_theory(t)).ok());
    CHECK(verify_supercharacter_products(t, coarse_theory(t)).ok());
  }
  const CharacterTable& a5 = fixture("a5");
  const SuperTheory th = refine_classes_to_theory(a5, pt(a5, "[[0],[1],[2],[3,4]]"));
  CHECK(verify_supercharacter_products(a5, th).ok());

  // the coarse theory of A5 by hand: tau_rest = rho - 1 has
  // tau_rest^2 = 59*tau_1 + 58*tau_rest
  const std::vector<Supercharacter> taus = normalized_supercharacters(a5, coarse_theory(a5));
  CHECK(taus[1].degree_gcd == 1);
  const Cyclotomic at_identity = taus[1].values[0] * taus[1].values[0];
  const Cyclotomic elsewhere = taus[1].values[1] * taus[1].values[1];
  CHECK(at_identity == Cyclotomic(a5.field(), Rational(59 + 58 * 59)));
  CHECK(elsewhere == Cyclotomic(a5.field(), Rational(59 - 58)));
}

TEST_CASE("superclass sums span a Schur ring") {
  const CharacterTable& c4 = fixture("c4");
  const SuperTheory galois_theory = refine_classes_to_theory(c4, pt(c4, "[[0],[1,3],[2]]"));
  CHECK(galois_theory.classes == pt(c4, "[[0],[1,3],[2]]"));
  CHECK(verify_schur_closure(c4, galois_theory).ok());

  // (g + g^3)^2 = 2*1 + 2*g^2 in the group ring of C4
  Rational at_identity(0), at_square(0), at_pair(0);
  for (unsigned i : {1u, 3u}) {
    for (unsigned j : {1u, 3u}) {
      at_identity += c4.structure_constant(i, j, 0);
      at_square += c4.structure_constant(i, j, 2);
      at_pair += c4.structure_constant(i, j, 1);
    }
  }
  CHECK(at_identity == 2);
  CHECK(at_square == 2);
  CHECK(at_pair == 0);

  for (const char* name : {"c2", "s3", "d8", "a4", "a5"}) {
    const CharacterTable& t = fixture(name);
    CHECK(verify_schur_closure(t, finest_theory(t)).ok());
    CHECK(verify_schur_closure(t, coarse_theory(t)).ok());
  }
}

TEST_CASE("normal subgroups from kernels") {
  const CharacterTable& a5 = fixture("a5");
  const std::vector<IndexSet> simple = normal_subgroups(a5);
  REQUIRE(simple.size() == 2);
  CHECK(simple[0] == IndexSet::single(5, 0));
  CHECK(simple[1] == IndexSet::full(5));

  const CharacterTable& s3 = fixture("s3");
  const std::vector<IndexSet> s3n = normal_subgroups(s3);
  REQUIRE(s3n.size() == 3);
  CHECK(s3n[1] == IndexSet::of(3, {0, 2}));  // the alternating subgroup: 1 + both 3-cycles

  const CharacterTable& c4 = fixture("c4");
  const std::vector<IndexSet> c4n = normal_subgroups(c4);
  REQUIRE(c4n.size() == 3);
  CHECK(c4n[1] == IndexSet::of(4, {0, 2}));

  CHECK(normal_subgroups(fixture("d8")).size() == 6);
  CHECK(normal_subgroups(fixture("m11")).size() == 2);
}

TEST_CASE("theories from families of normal subgroups") {
  const CharacterTable& s3 = fixture("s3");
  const std::vector<IndexSet> trivial_family{IndexSet::single(3, 0)};
  CHECK(theory_from_normal_family(s3, trivial_family) == coarse_theory(s3));
  const std::vector<IndexSet> whole_family{IndexSet::full(3)};
  CHECK(theory_from_normal_family(s3, whole_family) == coarse_theory(s3));

  // A4 with the Klein four-group {1a, 2a}
  const CharacterTable& a4 = fixture("a4");
  const std::vector<IndexSet> v4{IndexSet::of(4, {0, 1})};
  const SuperTheory th = theory_from_normal_family(a4, v4);
  CHECK(th.classes == pt(a4, "[[0],[1],[2,3]]"));
  CHECK(th.chars == pt(a4, "[[0],[1,2],[3]]"));

  // identity plus the transpositions is not closed under products
  const std::vector<IndexSet> bad{IndexSet::of(3, {0, 1})};
  CHECK_THROWS_AS(theory_from_normal_family(s3, bad), TheoryError);
  // members must contain the identity class
  const std::vector<IndexSet> no_id{IndexSet::of(3, {2})};
  CHECK_THROWS_AS(theory_from_normal_family(s3, no_id), TheoryError);

  // every kernel-intersection family yields a genuine theory
  for (const char* name : {"s3", "c4", "d8", "q8", "a4"}) {
    const CharacterTable& t = fixture(name);
    const std::vector<IndexSet> all = normal_subgroups(t);
    const SuperTheory full_family = theory_from_normal_family(t, all);
    CHECK(is_supercharacter_theory(t, full_family.chars, full_family.classes));
  }
}

TEST_CASE("partition map growth and monotonicity") {
  std::mt19937_64 rng(59);
  for (const char* name : {"c7", "s3", "d8", "a5"}) {
    const CharacterTable& t = fixture(name);
    const unsigned k = t.k();
    for (int trial = 0; trial < 100; ++trial) {
      const Partition kp = random_identity_partition(rng, k);
      const Partition x = character_partition(t, kp.blocks());
      CHECK(x.block_count() >= kp.block_count());
      CHECK(x.contains_block(IndexSet::single(k, 0)));
      const Partition back = class_partition(t, x.blocks());
      CHECK(back.refines(kp));
      CHECK(back.contains_block(IndexSet::single(k, 0)));

      const Partition xp = random_partition(rng, k);
      const Partition cl = class_partition(t, xp.blocks());
      CHECK(cl.block_count() >= xp.block_count());
      CHECK(cl.contains_block(IndexSet::single(k, 0)));
      CHECK(character_partition(t, cl.blocks()).refines(xp));

      // coarsening the input coarsens the image
      const Partition coarser = coarsen(rng, kp, 1 + trial % 2);
      CHECK(character_partition(t, kp.blocks())
                .refines(character_partition(t, coarser.blocks())));
      const Partition xcoarser = coarsen(rng, xp, 1 + trial % 2);
      CHECK(class_partition(t, xp.blocks())
                .refines(class_partition(t, xcoarser.blocks())));
    }
  }
}
