#include "sct/rational.hpp"

#include <stdexcept>

namespace sct {

std::size_t hash_integer(const Integer& z) {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_sgn(p)) * 0x9e3779b97f4a7c15ULL;
  const std::size_t n = mpz_size(p);
  for (std::size_t i = 0; i < n; ++i) {
    hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(p, i)));
  }
  return h;
}

std::size_t hash_rational(const Rational& q) {
  std::size_t h = hash_integer(q.get_num());
  hash_combine(h, hash_integer(q.get_den()));
  return h;
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const std::string s(text);
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("zero denominator in rational literal: " + s);
  }
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace sct
