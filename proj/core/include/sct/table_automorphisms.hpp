#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sct/character_table.hpp"
#include "sct/theory.hpp"

namespace sct {

/// A pair of row/column permutations with value(row[i], col[j]) = value(i, j)
/// for all i, j.  Either side determines the other; both fix index 0.
struct TableAutomorphism {
  std::vector<unsigned> row_perm;
  std::vector<unsigned> col_perm;

  bool operator==(const TableAutomorphism&) const = default;
  bool is_identity() const;
};

TableAutomorphism identity_automorphism(unsigned k);
TableAutomorphism compose(const TableAutomorphism& a, const TableAutomorphism& b);  // a after b
TableAutomorphism inverse(const TableAutomorphism& a);

/// The full element list of the table automorphism group, found by
/// backtracking over column images constrained by invariant signatures and
/// structure constants; row permutations are recovered by exact row
/// matching.  Output is sorted lexicographically by column permutation.
/// With respect_power_maps, only automorphisms commuting with every stored
/// power map are kept (the GAP convention); the default matches the plain
/// definition above.
std::vector<TableAutomorphism> automorphism_group(const CharacterTable& t,
                                                  bool respect_power_maps = false);

/// Brauer's permutation lemma: an automorphism fixes equally many
/// characters and classes.
bool brauer_check(const CharacterTable& t, const TableAutomorphism& a);

/// The theory whose blocks are the row and column orbits of a subgroup of
/// table automorphisms.  Verifies that the list is closed under
/// composition and that the orbit pair really is a theory.
SuperTheory orbit_theory(const CharacterTable& t, std::span<const TableAutomorphism> subgroup);

/// Automorphisms induced by the Galois maps zeta -> zeta^r for r coprime
/// to the table conductor, recovered from the table alone by matching
/// transformed rows and columns.  One entry per distinct automorphism, with
/// the smallest inducing r.
std::vector<std::pair<unsigned long, TableAutomorphism>> galois_automorphisms(
    const CharacterTable& t);

/// Least element (numeric bitset order) of the orbit of s under the column
/// action; optionally reports the orbit size.
IndexSet orbit_representative(const IndexSet& s, std::span<const TableAutomorphism> auts,
                              std::size_t* orbit_size = nullptr);

/// Image of a theory under an automorphism, blockwise on both sides.
SuperTheory apply_automorphism(const TableAutomorphism& a, const SuperTheory& theory);

/// Every subgroup of the (tiny) group, as sorted index lists into `group`.
std::vector<std::vector<TableAutomorphism>> all_subgroups(
    std::span<const TableAutomorphism> group);

/// Invariant factor decomposition [d1, d2, ...] with d_{i+1} | d_i, when
/// the group is abelian; nullopt otherwise.
std::optional<std::vector<unsigned long>> abelian_invariants(
    std::span<const TableAutomorphism> group);

}  // namespace sct
