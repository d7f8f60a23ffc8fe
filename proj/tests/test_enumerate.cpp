#include <doctest.h>

#include <map>
#include <set>

#include "sct/enumerate.hpp"
#include "test_util.hpp"

using namespace sct;
using sct::testing::fixture;

namespace {

std::set<std::vector<std::uint64_t>> class_keys(const std::vector<SuperTheory>& theories) {
  std::set<std::vector<std::uint64_t>> keys;
  for (const SuperTheory& th : theories) keys.insert(th.classes.encoding());
  return keys;
}

std::uint64_t bell(unsigned n) {
  // triangle recurrence
  std::vector<std::uint64_t> row{1};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace

TEST_CASE("identity-block partition stream covers Bell(k-1) partitions") {
  for (unsigned k : {2u, 3u, 5u, 7u, 9u}) {
    std::uint64_t count = 0;
    std::set<std::string> distinct;
    for_each_identity_partition(k, [&](const Partition& p) {
      ++count;
      distinct.insert(p.str());
      REQUIRE(p.contains_block(IndexSet::single(k, 0)));
    });
    CHECK(count == bell(k - 1));
    CHECK(distinct.size() == count);
  }
}

TEST_CASE("first-pass scan over candidate superclasses") {
  const std::vector<SuperTheory> c3 = step1_scan(fixture("c3"));
  REQUIRE(c3.size() == 1);
  CHECK(c3[0] == finest_theory(fixture("c3")));

  const std::vector<SuperTheory> a5 = step1_scan(fixture("a5"));
  REQUIRE(a5.size() == 2);
  CHECK(a5[0].classes == Partition::parse("[[0],[1],[2],[3,4]]", 5));
  CHECK(a5[1] == finest_theory(fixture("a5")));

  // with and without the automorphism shortcut
  EnumerationOptions no_auts;
  no_auts.use_automorphisms = false;
  CHECK(step1_scan(fixture("a5"), no_auts) == a5);
}

TEST_CASE("meets in the theory lattice") {
  const CharacterTable& a5 = fixture("a5");
  const EnumerationResult all = all_theories(a5);
  for (const SuperTheory& th : all.theories) {
    CHECK(meet_theories(a5, th, th) == th);
    CHECK(meet_theories(a5, th, finest_theory(a5)) == finest_theory(a5));
    CHECK(meet_theories(a5, th, coarse_theory(a5)) == th);
  }
}

TEST_CASE("theory counts on the bundled tables") {
  const std::map<std::string, std::size_t> expected{
      {"c2", 1}, {"c3", 2}, {"c4", 3}, {"c5", 3},  {"c7", 4},    {"s3", 2},  {"d8", 9},
      {"q8", 9}, {"a4", 3}, {"a5", 3}, {"a6", 7},  {"a7", 3},    {"psl27", 4}, {"m11", 5}};
  for (const auto& [name, count] : expected) {
    const EnumerationResult result = all_theories(fixture(name));
    CAPTURE(name);
    CHECK(result.theories.size() == count);
  }
}

TEST_CASE("enumeration output invariants") {
  for (const char* name : {"c4", "s3", "d8", "a4", "a5", "a6", "psl27", "m11"}) {
    const CharacterTable& t = fixture(name);
    const EnumerationResult result = all_theories(t);
    CAPTURE(name);

    // contains the two trivial theories, canonically sorted, all distinct
    const auto keys = class_keys(result.theories);
    CHECK(keys.size() == result.theories.size());
    CHECK(keys.count(finest_theory(t).classes.encoding()) == 1);
    CHECK(keys.count(coarse_theory(t).classes.encoding()) == 1);
    for (std::size_t i = 0; i + 1 < result.theories.size(); ++i) {
      CHECK(theory_order(result.theories[i], result.theories[i + 1]));
    }

    for (const SuperTheory& th : result.theories) {
      CHECK(is_supercharacter_theory(t, th.chars, th.classes));
    }

    // closed under meets
    for (const SuperTheory& a : result.theories) {
      for (const SuperTheory& b : result.theories) {
        CHECK(keys.count(meet_theories(t, a, b).classes.encoding()) == 1);
      }
    }

    // closed under the automorphism action; Galois images are fixed points
    for (const TableAutomorphism& a : automorphism_group(t)) {
      for (const SuperTheory& th : result.theories) {
        CHECK(keys.count(apply_automorphism(a, th).classes.encoding()) == 1);
      }
    }
    for (const auto& [r, a] : galois_automorphisms(t)) {
      for (const SuperTheory& th : result.theories) {
        CHECK(apply_automorphism(a, th) == th);
      }
    }
  }
}

TEST_CASE("automorphism pruning changes nothing") {
  for (const char* name : {"c5", "s3", "d8", "a4", "a5", "a6", "psl27"}) {
    EnumerationOptions with, without;
    with.use_automorphisms = true;
    without.use_automorphisms = false;
    const EnumerationResult a = all_theories(fixture(name), with);
    const EnumerationResult b = all_theories(fixture(name), without);
    CAPTURE(name);
    CHECK(a.theories == b.theories);
  }
}

TEST_CASE("oracle equivalence on small tables") {
  for (const char* name : {"c2", "c3", "c4", "c5", "c7", "s3", "d8", "q8", "a4", "a5", "a6"}) {
    const CharacterTable& t = fixture(name);
    const std::vector<SuperTheory> brute = brute_force_all_theories(t);
    const EnumerationResult scan = all_theories(t);
    CAPTURE(name);
    CHECK(scan.theories == brute);
  }
  CHECK_THROWS_AS(brute_force_all_theories(fixture("a7")), std::invalid_argument);
  CHECK(brute_force_all_theories(fixture("a7"), 9).size() == 3);
}

TEST_CASE("worker count does not change the result") {
  for (const char* name : {"a5", "a6", "m11"}) {
    const CharacterTable& t = fixture(name);
    EnumerationResult base = all_theories(t);
    for (unsigned workers : {2u, 8u}) {
      EnumerationOptions opt;
      opt.workers = workers;
      const EnumerationResult result = all_theories(t, opt);
      CAPTURE(name);
      CHECK(result.theories == base.theories);
      CHECK(result.stats.subsets_scanned == base.stats.subsets_scanned);
      CHECK(result.stats.step1_theories == base.stats.step1_theories);
      CHECK(result.stats.meets_computed == base.stats.meets_computed);
    }
  }
}

TEST_CASE("subset scan counts 2^(k-2)-1 candidates") {
  CHECK(all_theories(fixture("c2")).stats.subsets_scanned == 0);
  CHECK(all_theories(fixture("s3")).stats.subsets_scanned == 1);
  CHECK(all_theories(fixture("a5")).stats.subsets_scanned == 7);
  CHECK(all_theories(fixture("a7")).stats.subsets_scanned == 127);
  CHECK(all_theories(fixture("m11")).stats.subsets_scanned == 255);
}

TEST_CASE("refinement step histogram") {
  const std::map<unsigned, std::uint64_t> c2 = refinement_step_histogram(fixture("c2"));
  CHECK(c2 == std::map<unsigned, std::uint64_t>{{0, 1}});

  const std::map<unsigned, std::uint64_t> s3 = refinement_step_histogram(fixture("s3"));
  CHECK(s3 == std::map<unsigned, std::uint64_t>{{0, 2}});

  // masses sum to Bell(k-1); step-0 mass counts the theories themselves
  for (const char* name : {"c4", "c5", "c7", "d8", "a4", "a5", "a6"}) {
    const CharacterTable& t = fixture(name);
    const auto histogram = refinement_step_histogram(t);
    std::uint64_t total = 0;
    for (const auto& [steps, count] : histogram) total += count;
    CAPTURE(name);
    CHECK(total == bell(t.k() - 1));
    CHECK(histogram.at(0) == all_theories(t).theories.size());
  }

  CHECK_THROWS_AS(refinement_step_histogram(fixture("a7"), 8), std::invalid_argument);
}

TEST_CASE("refinement lattice edges") {
  const EnumerationResult a5 = all_theories(fixture("a5"));
  // coarse (2 blocks) < middle (4) < finest (5): a chain
  const auto edges = refinement_edges(a5.theories);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0] == std::pair<std::size_t, std::size_t>{1, 0});
  CHECK(edges[1] == std::pair<std::size_t, std::size_t>{2, 1});

  // C7: two incomparable proper theories form a diamond
  const EnumerationResult c7 = all_theories(fixture("c7"));
  REQUIRE(c7.theories.size() == 4);
  CHECK(refinement_edges(c7.theories).size() == 4);

  CHECK(refinement_edges(all_theories(fixture("c2")).theories).empty());
}
