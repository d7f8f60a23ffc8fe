#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sct/character_table.hpp"
#include "sct/partition.hpp"

namespace sct {

struct TheoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A supercharacter theory: a partition of the characters (rows) paired
/// with the matching partition of the classes (columns).  Either side
/// determines the other, so containers key theories by `classes` alone.
struct SuperTheory {
  Partition chars;
  Partition classes;

  bool operator==(const SuperTheory& rhs) const {
    return chars == rhs.chars && classes == rhs.classes;
  }
  bool operator!=(const SuperTheory& rhs) const { return !(*this == rhs); }
};

/// sigma_X = sum of chi(1)*chi over the characters in X, as a row of k values.
std::vector<Cyclotomic> supercharacter_values(const CharacterTable& t, const IndexSet& chars);

/// The coarsest partition of the classes on which every sigma_X of the
/// family is constant: columns j, j' fall together iff all sigma values agree.
Partition class_partition(const CharacterTable& t, std::span<const IndexSet> char_family);

/// The coarsest partition of the characters on which every central
/// character is constant across the family: rows i, i' fall together iff
/// omega_i(S) = omega_i'(S) for every S in the family.
Partition character_partition(const CharacterTable& t, std::span<const IndexSet> class_family);

/// Alternates the two partition maps until the block counts agree,
/// returning the coarsest theory whose class partition refines `start`.
SuperTheory refine_classes_to_theory(const CharacterTable& t, const Partition& start);

/// Dual: the coarsest theory whose character partition refines `start`.
SuperTheory refine_chars_to_theory(const CharacterTable& t, const Partition& start);

bool is_supercharacter_theory(const CharacterTable& t, const Partition& chars,
                              const Partition& classes);

/// Decides whether S can be a superclass.  Iterates the pair of maps from
/// the one-member family {S}; gives up as soon as S is no longer a block of
/// the running class partition, otherwise returns the coarsest theory with
/// S among its superclasses.  S must be {0} or avoid the identity class.
std::optional<SuperTheory> coarsest_theory_with_superclass(const CharacterTable& t,
                                                           const IndexSet& s);

/// M(G): {identity} versus everything else on both sides.
SuperTheory coarse_theory(const CharacterTable& t);
SuperTheory finest_theory(const CharacterTable& t);

/// tau_X = sigma_X / gcd of the degrees in X; integer-valued supercharacters.
struct Supercharacter {
  IndexSet block;
  Integer degree_gcd;
  std::vector<Cyclotomic> values;
};
std::vector<Supercharacter> normalized_supercharacters(const CharacterTable& t,
                                                       const SuperTheory& theory);

struct CheckReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Expands every product tau_X * tau_Y in the basis {tau_Z} (solving the
/// evaluation system at one representative column per superclass) and
/// checks that all coefficients are nonnegative integers.
CheckReport verify_supercharacter_products(const CharacterTable& t, const SuperTheory& theory);

/// Checks that superclass sums span a Schur ring: for every pair of
/// superclasses the product coefficients, summed from the class-algebra
/// structure constants, are constant on each superclass and are
/// nonnegative integers.
CheckReport verify_schur_closure(const CharacterTable& t, const SuperTheory& theory);

/// All normal subgroups visible in the table: the kernels
/// {j : chi_i(g_j) = chi_i(1)} closed under intersection, sorted by order.
std::vector<IndexSet> normal_subgroups(const CharacterTable& t);

/// The theory generated by a family of normal subgroups (each given as a
/// union of classes): partitions the group by the smallest member of the
/// intersection closure containing each element, then refines to a theory.
/// Members failing the subgroup closure test raise TheoryError.
SuperTheory theory_from_normal_family(const CharacterTable& t, std::span<const IndexSet> family);

}  // namespace sct
