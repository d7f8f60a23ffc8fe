#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sct/rational.hpp"

namespace sct {

class CycloField;
using FieldPtr = std::shared_ptr<const CycloField>;

struct CycloError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Syntax error in a cyclotomic expression; `position` is a byte offset
/// into the parsed text.
struct CycloParseError : CycloError {
  CycloParseError(const std::string& msg, std::size_t pos);
  std::size_t position;
};

/// E(n) appeared in an expression parsed over a conductor n does not divide.
struct ConductorMismatch : CycloError {
  ConductorMismatch(unsigned long found, unsigned long target, std::size_t pos);
  unsigned long found;
  unsigned long target;
  std::size_t position;
};

/// The field Q(zeta_n), presented as Q[x]/Phi_n(x) in the power basis
/// 1, x, ..., x^(phi(n)-1) with x standing for zeta_n = e^(2*pi*i/n).
/// Instances are immutable and cached per conductor; every element of the
/// field holds a shared pointer to its instance.
class CycloField {
 public:
  static FieldPtr of(unsigned long conductor);

  unsigned long conductor() const { return n_; }
  unsigned degree() const { return deg_; }  // phi(n)

  /// Coefficients of Phi_n, constant term first; monic of degree phi(n).
  const std::vector<Integer>& minimal_polynomial() const { return phi_; }

  /// x^e reduced mod Phi_n, as a dense integer row of length degree().
  /// Valid for degree() <= e <= max_exponent().
  const std::vector<Integer>& power_reduction(unsigned long e) const;
  unsigned long max_exponent() const { return max_exp_; }

 private:
  explicit CycloField(unsigned long n);

  unsigned long n_;
  unsigned deg_;
  unsigned long max_exp_;
  std::vector<Integer> phi_;
  std::vector<std::vector<Integer>> reductions_;
};

/// An exact element of Q(zeta_n), stored sparsely as the nonzero
/// coefficients of its reduced power-basis representation.  The reduced
/// coefficient vector is a canonical form: two elements over the same
/// conductor are equal iff their coefficients agree, so equality and
/// hashing never touch floating point.
class Cyclotomic {
 public:
  using Term = std::pair<unsigned, Rational>;  // (exponent, coefficient)

  Cyclotomic();  // zero over Q (conductor 1)
  explicit Cyclotomic(FieldPtr field);
  Cyclotomic(FieldPtr field, const Rational& constant);

  /// zeta_n^e for any integer e (reduced mod n, then mod Phi_n).
  static Cyclotomic root_power(const FieldPtr& field, long long e);

  const FieldPtr& field() const { return field_; }
  unsigned long conductor() const;

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Rational> dense_coeffs() const;  // length phi(n)

  Cyclotomic& operator+=(const Cyclotomic& rhs);
  Cyclotomic& operator-=(const Cyclotomic& rhs);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic operator-() const;

  Cyclotomic scaled(const Rational& q) const;
  friend Cyclotomic operator*(const Rational& q, const Cyclotomic& a) { return a.scaled(q); }

  /// Complex conjugation, i.e. the Galois map zeta -> zeta^(n-1).
  Cyclotomic conjugate() const;

  /// Galois action zeta -> zeta^r; a ring automorphism for gcd(r, n) = 1.
  /// Throws std::invalid_argument when r is not coprime to the conductor.
  Cyclotomic galois(unsigned long r) const;

  /// Field inverse via the extended Euclidean algorithm in Q[x].
  /// Throws CycloError on zero.
  Cyclotomic inverse() const;
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
    return a * b.inverse();
  }

  /// Re-expresses the element over a larger conductor (n must divide m).
  Cyclotomic promoted(const FieldPtr& larger) const;

  std::optional<Rational> as_rational() const;
  bool is_nonneg_integer() const;

  /// Canonical printed form "a0 + a1*E(n) + a2*E(n)^2 + ...", zero terms
  /// omitted, "0" for zero.  parse_cyclotomic round-trips it.
  std::string str() const;

  /// Floating-point embedding at zeta_n = e^(2*pi*i/n); diagnostic only,
  /// never used for equality.
  std::complex<double> approx() const;

  bool operator==(const Cyclotomic& rhs) const;
  bool operator!=(const Cyclotomic& rhs) const { return !(*this == rhs); }
  std::size_t hash() const;

 private:
  static Cyclotomic from_raw(FieldPtr field, const std::vector<std::pair<unsigned long, Rational>>& raw);

  FieldPtr field_;
  std::vector<Term> terms_;  // sorted by exponent, no zero coefficients
};

/// Parses the expression grammar
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := int ['/' int] | 'E' '(' int ')' ['^' ['-'] int]
/// into the field of the given conductor.  Every E(n) must have n dividing
/// the target conductor.
Cyclotomic parse_cyclotomic(std::string_view text, const FieldPtr& field);

/// lcm of all n appearing as E(n) in the text (1 when there are none).
/// Tolerates malformed input; parse_cyclotomic reports the actual errors.
unsigned long scan_conductor(std::string_view text);

}  // namespace sct

template <>
struct std::hash<sct::Cyclotomic> {
  std::size_t operator()(const sct::Cyclotomic& c) const { return c.hash(); }
};
