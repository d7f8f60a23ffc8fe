#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sct/cyclotomic.hpp"
#include "sct/partition.hpp"

namespace sct {

struct TableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// The full k x k table of irreducible character values of a finite group,
/// rows indexed by characters and columns by conjugacy classes.  Column 0 is
/// the class of the identity and row 0 the trivial character; input files
/// violating that are rejected outright.  All entries live in one fixed
/// field Q(zeta_N), N = lcm of the conductors appearing in the file, so
/// value comparison is coefficient comparison.
///
/// Instances are immutable after parsing and safe to share across threads.
class CharacterTable {
 public:
  /// Parses the JSON document
  ///   { "name": str, "order": int, "class_sizes": [int],
  ///     "classes": [str]?, "characters": [str]?,
  ///     "values": [[str|int]], "power_maps": {"p": [int]}? }
  /// where values are cyclotomic-expression strings or bare integers.
  /// Structural problems (wrong shapes, bad expressions, missing identity
  /// column or trivial row) throw TableError with the offending position;
  /// the arithmetic invariants are checked separately by validate().
  static CharacterTable parse(std::string_view json_text);

  /// Reads and parses a file; IO failures throw std::ios_base::failure.
  static CharacterTable load(const std::string& path);

  unsigned k() const { return k_; }
  const Integer& order() const { return order_; }
  const std::string& name() const { return name_; }
  const FieldPtr& field() const { return field_; }
  unsigned long conductor() const { return field_->conductor(); }

  const Integer& class_size(unsigned j) const { return class_sizes_[j]; }
  const std::vector<Integer>& class_sizes() const { return class_sizes_; }
  const Integer& degree(unsigned i) const { return degrees_[i]; }
  const Cyclotomic& value(unsigned i, unsigned j) const { return values_[i * k_ + j]; }

  const std::vector<std::string>& class_names() const { return class_names_; }
  const std::vector<std::string>& character_names() const { return character_names_; }
  const std::map<unsigned, std::vector<unsigned>>& power_maps() const { return power_maps_; }

  /// Checks every table invariant exactly: size sums, degree sums, row and
  /// column orthogonality, and the existence of the inverse-class
  /// involution.  Failures are report entries, never exceptions.
  ValidationReport validate() const;

  /// The column permutation pi with value(i, pi(j)) = conj(value(i, j));
  /// an involution fixing 0.  Throws TableError when no match exists.
  std::vector<unsigned> inverse_class_perm() const;

  /// Class-algebra structure constant: the coefficient of class l in the
  /// product of the class sums of i and j,
  ///   (|C_i||C_j| / |G|) * sum_x chi_x(g_i) chi_x(g_j) conj(chi_x(g_l)) / chi_x(1).
  /// The full tensor is computed once on first use and cached.
  const Rational& structure_constant(unsigned i, unsigned j, unsigned l) const;

  /// Central character value omega_i(S) = sum_{j in S} |C_j| chi_i(g_j) / chi_i(1).
  Cyclotomic central_character_value(unsigned i, const IndexSet& classes) const;

  // Cached summands for the two partition maps: omega_summand(i,j) =
  // |C_j| chi_i(g_j) / chi_i(1), sigma_summand(i,j) = chi_i(1) chi_i(g_j).
  const Cyclotomic& omega_summand(unsigned i, unsigned j) const {
    return omega_summands_[i * k_ + j];
  }
  const Cyclotomic& sigma_summand(unsigned i, unsigned j) const {
    return sigma_summands_[i * k_ + j];
  }

 private:
  CharacterTable() = default;
  void build_caches();

  unsigned k_ = 0;
  Integer order_;
  std::string name_;
  FieldPtr field_;
  std::vector<Integer> class_sizes_;
  std::vector<Integer> degrees_;
  std::vector<Cyclotomic> values_;
  std::vector<Cyclotomic> omega_summands_;
  std::vector<Cyclotomic> sigma_summands_;
  std::vector<std::string> class_names_;
  std::vector<std::string> character_names_;
  std::map<unsigned, std::vector<unsigned>> power_maps_;

  struct TensorCache {
    std::once_flag once;
    std::vector<Rational> data;
  };
  std::unique_ptr<TensorCache> tensor_ = std::make_unique<TensorCache>();
};

}  // namespace sct
