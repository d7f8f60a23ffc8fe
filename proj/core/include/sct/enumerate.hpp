#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "sct/character_table.hpp"
#include "sct/table_automorphisms.hpp"
#include "sct/theory.hpp"

namespace sct {

struct EnumerationStats {
  std::uint64_t subsets_scanned = 0;
  std::uint64_t step1_theories = 0;
  std::uint64_t meets_computed = 0;
  double wall_seconds = 0.0;
};

struct EnumerationOptions {
  bool use_automorphisms = true;
  unsigned workers = 1;
  // Called periodically with (subsets done, subsets total); wired to stderr
  // progress reporting by the CLI.  May be empty.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

struct EnumerationResult {
  std::vector<SuperTheory> theories;  // canonically sorted, pairwise distinct
  EnumerationStats stats;
};

/// First pass of the enumeration: every nonempty union S of nontrivial
/// classes covering at most half of them (the larger of each complementary
/// half-size pair is skipped) is tested as a superclass, and the resulting
/// coarsest theories are collected.  With automorphisms enabled, only orbit
/// representatives are scanned and the result is closed under the group.
std::vector<SuperTheory> step1_scan(const CharacterTable& t, const EnumerationOptions& = {});

/// Meet in the theory lattice: the coarsest theory refining the partition
/// meet of the two class partitions.
SuperTheory meet_theories(const CharacterTable& t, const SuperTheory& a, const SuperTheory& b);

/// Every supercharacter theory of the table: the step-1 scan, closed under
/// binary meets, plus the coarse theory.  Deterministic independent of the
/// worker count.
EnumerationResult all_theories(const CharacterTable& t, const EnumerationOptions& = {});

/// Independent oracle for small tables: tests every partition of the
/// classes with {0} as a block.  Throws std::invalid_argument when
/// k exceeds max_k.
std::vector<SuperTheory> brute_force_all_theories(const CharacterTable& t, unsigned max_k = 8);

/// For every partition of the classes with {0} as a block, counts the
/// refinement rounds needed to reach a theory: 0 means the partition
/// already is one, n > 0 means n more map applications stabilized it.
/// Returns step count -> number of partitions; masses sum to Bell(k-1).
std::map<unsigned, std::uint64_t> refinement_step_histogram(const CharacterTable& t,
                                                            unsigned max_k = 12);

/// Canonical order used for enumeration output: ascending class block
/// count, then the canonical encoding of the class partition.
bool theory_order(const SuperTheory& a, const SuperTheory& b);

/// Transitive reduction of the refinement order on a canonically sorted
/// theory list; edges (a, b) mean "theories[a] strictly refines theories[b]
/// with nothing in between".
std::vector<std::pair<std::size_t, std::size_t>> refinement_edges(
    std::span<const SuperTheory> theories);

/// Runs fn on every partition of {0..k-1} having {0} as a singleton block.
void for_each_identity_partition(unsigned k, const std::function<void(const Partition&)>& fn);

}  // namespace sct
