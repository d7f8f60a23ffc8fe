#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace sct {

// GMP-backed exact arithmetic.  mpq_class keeps values canonical
// (gcd(num, den) = 1, den >= 1) through all ring operations.
using Integer = mpz_class;
using Rational = mpq_class;

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_integer(const Integer& z);
std::size_t hash_rational(const Rational& q);

/// Parses "a" or "a/b" (optional sign on a); result is canonical.
/// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& q);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

}  // namespace sct
