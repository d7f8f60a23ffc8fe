#include "sct/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

namespace sct {

namespace {

// Dense integer polynomials, constant term first.
using ZPoly = std::vector<Integer>;

ZPoly zpoly_x_pow_minus_one(unsigned long n) {
  ZPoly p(n + 1, Integer(0));
  p[0] = -1;
  p[n] = 1;
  return p;
}

// Exact division by a monic divisor; remainder must vanish.
ZPoly zpoly_div_exact(ZPoly num, const ZPoly& den) {
  const std::size_t dd = den.size() - 1;
  if (num.size() - 1 < dd) throw CycloError("polynomial division underflow");
  ZPoly quot(num.size() - dd, Integer(0));
  for (std::size_t shift = num.size() - dd; shift-- > 0;) {
    const Integer c = num[shift + dd];
    if (c == 0) continue;
    quot[shift] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[shift + j] -= c * den[j];
  }
  for (const Integer& c : num) {
    if (c != 0) throw CycloError("polynomial division was not exact");
  }
  return quot;
}

std::vector<unsigned long> sorted_divisors(unsigned long n) {
  std::vector<unsigned long> divs;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d != n / d) divs.push_back(n / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Phi_n computed by dividing x^n - 1 by all proper Phi_d; memoized.
const ZPoly& cyclotomic_polynomial(unsigned long n) {
  static std::mutex mu;
  static std::map<unsigned long, ZPoly> memo;
  std::lock_guard lock(mu);
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  for (unsigned long d : sorted_divisors(n)) {
    if (memo.count(d)) continue;
    ZPoly p = zpoly_x_pow_minus_one(d);
    for (unsigned long e : sorted_divisors(d)) {
      if (e == d) continue;
      p = zpoly_div_exact(std::move(p), memo.at(e));
    }
    memo.emplace(d, std::move(p));
  }
  return memo.at(n);
}

// Dense rational polynomials for the extended Euclidean algorithm.
using QPoly = std::vector<Rational>;

void qpoly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Divides rem by d in place (d trimmed, nonzero); returns the quotient.
QPoly qpoly_divmod(QPoly& rem, const QPoly& d) {
  QPoly quot;
  if (rem.size() < d.size()) return quot;
  quot.assign(rem.size() - d.size() + 1, Rational(0));
  const Rational& lead = d.back();
  for (std::size_t shift = quot.size(); shift-- > 0;) {
    Rational c = rem[shift + d.size() - 1] / lead;
    if (c == 0) continue;
    quot[shift] = c;
    for (std::size_t j = 0; j < d.size(); ++j) rem[shift + j] -= c * d[j];
  }
  qpoly_trim(rem);
  return quot;
}

QPoly qpoly_sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  // a - q*b
  QPoly out = a;
  if (!q.empty() && !b.empty()) {
    out.resize(std::max(out.size(), q.size() + b.size() - 1), Rational(0));
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
    }
  }
  qpoly_trim(out);
  return out;
}

}  // namespace

CycloParseError::CycloParseError(const std::string& msg, std::size_t pos)
    : CycloError(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}

ConductorMismatch::ConductorMismatch(unsigned long found_, unsigned long target_, std::size_t pos)
    : CycloError("E(" + std::to_string(found_) + ") does not lie in the fixed field Q(zeta_" +
                 std::to_string(target_) + ") (at position " + std::to_string(pos) + ")"),
      found(found_),
      target(target_),
      position(pos) {}

CycloField::CycloField(unsigned long n) : n_(n) {
  const ZPoly& phi = cyclotomic_polynomial(n);
  phi_ = phi;
  deg_ = static_cast<unsigned>(phi_.size() - 1);
  const unsigned long from_mul = deg_ >= 1 ? 2ul * deg_ - 2 : 0;
  max_exp_ = std::max<unsigned long>({n_ >= 1 ? n_ - 1 : 0, from_mul, deg_});

  if (max_exp_ >= deg_) {
    reductions_.reserve(max_exp_ - deg_ + 1);
    // x^deg = -(phi_0 + phi_1 x + ... + phi_{deg-1} x^{deg-1})
    std::vector<Integer> row(deg_);
    for (unsigned i = 0; i < deg_; ++i) row[i] = -phi_[i];
    reductions_.push_back(row);
    for (unsigned long e = deg_ + 1; e <= max_exp_; ++e) {
      const std::vector<Integer>& prev = reductions_.back();
      const std::vector<Integer>& base = reductions_.front();
      std::vector<Integer> next(deg_, Integer(0));
      const Integer carry = prev[deg_ - 1];
      for (unsigned i = deg_ - 1; i >= 1; --i) next[i] = prev[i - 1];
      if (carry != 0) {
        for (unsigned i = 0; i < deg_; ++i) next[i] += carry * base[i];
      }
      reductions_.push_back(std::move(next));
    }
  }
}

const std::vector<Integer>& CycloField::power_reduction(unsigned long e) const {
  if (e < deg_ || e > max_exp_) throw CycloError("power_reduction exponent out of range");
  return reductions_[e - deg_];
}

FieldPtr CycloField::of(unsigned long conductor) {
  if (conductor == 0) throw CycloError("conductor must be positive");
  if (conductor > 1000000) throw CycloError("conductor too large: " + std::to_string(conductor));
  static std::mutex mu;
  static std::map<unsigned long, FieldPtr> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(conductor);
  if (it != cache.end()) return it->second;
  FieldPtr f(new CycloField(conductor));
  cache.emplace(conductor, f);
  return f;
}

Cyclotomic::Cyclotomic() : field_(CycloField::of(1)) {}

Cyclotomic::Cyclotomic(FieldPtr field) : field_(std::move(field)) {}

Cyclotomic::Cyclotomic(FieldPtr field, const Rational& constant) : field_(std::move(field)) {
  if (constant != 0) terms_.emplace_back(0u, constant);
}

unsigned long Cyclotomic::conductor() const { return field_->conductor(); }

Cyclotomic Cyclotomic::from_raw(FieldPtr field,
                                const std::vector<std::pair<unsigned long, Rational>>& raw) {
  const unsigned deg = field->degree();
  std::vector<Rational> acc(deg, Rational(0));
  for (const auto& [e, q] : raw) {
    if (q == 0) continue;
    if (e < deg) {
      acc[e] += q;
    } else {
      const std::vector<Integer>& row = field->power_reduction(e);
      for (unsigned i = 0; i < deg; ++i) {
        if (row[i] != 0) acc[i] += q * row[i];
      }
    }
  }
  Cyclotomic out(std::move(field));
  for (unsigned i = 0; i < deg; ++i) {
    if (acc[i] != 0) out.terms_.emplace_back(i, std::move(acc[i]));
  }
  return out;
}

Cyclotomic Cyclotomic::root_power(const FieldPtr& field, long long e) {
  const long long n = static_cast<long long>(field->conductor());
  const unsigned long r = static_cast<unsigned long>(((e % n) + n) % n);
  return from_raw(field, {{r, Rational(1)}});
}

std::vector<Rational> Cyclotomic::dense_coeffs() const {
  std::vector<Rational> out(field_->degree(), Rational(0));
  for (const auto& [e, q] : terms_) out[e] = q;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) {
  if (conductor() != rhs.conductor()) throw CycloError("conductor mismatch in addition");
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < rhs.terms_.size()) {
    if (terms_[i].first < rhs.terms_[j].first) {
      merged.push_back(std::move(terms_[i++]));
    } else if (terms_[i].first > rhs.terms_[j].first) {
      merged.push_back(rhs.terms_[j++]);
    } else {
      Rational s = terms_[i].second + rhs.terms_[j].second;
      if (s != 0) merged.emplace_back(terms_[i].first, std::move(s));
      ++i, ++j;
    }
  }
  for (; i < terms_.size(); ++i) merged.push_back(std::move(terms_[i]));
  for (; j < rhs.terms_.size(); ++j) merged.push_back(rhs.terms_[j]);
  terms_ = std::move(merged);
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& rhs) { return *this += -rhs; }

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out(field_);
  out.terms_.reserve(terms_.size());
  for (const auto& [e, q] : terms_) out.terms_.emplace_back(e, Rational(-q));
  return out;
}

Cyclotomic Cyclotomic::scaled(const Rational& q) const {
  if (q == 0) return Cyclotomic(field_);
  Cyclotomic out(field_);
  out.terms_.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.terms_.emplace_back(e, Rational(c * q));
  return out;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor() != b.conductor()) throw CycloError("conductor mismatch in multiplication");
  if (a.is_zero() || b.is_zero()) return Cyclotomic(a.field_);
  if (a.terms_.size() == 1 && a.terms_[0].first == 0) return b.scaled(a.terms_[0].second);
  if (b.terms_.size() == 1 && b.terms_[0].first == 0) return a.scaled(b.terms_[0].second);
  std::vector<std::pair<unsigned long, Rational>> raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ea, qa] : a.terms_) {
    for (const auto& [eb, qb] : b.terms_) {
      raw.emplace_back(static_cast<unsigned long>(ea) + eb, qa * qb);
    }
  }
  return Cyclotomic::from_raw(a.field_, raw);
}

Cyclotomic Cyclotomic::conjugate() const {
  const unsigned long n = conductor();
  if (n <= 2) return *this;
  return galois(n - 1);
}

Cyclotomic Cyclotomic::galois(unsigned long r) const {
  const unsigned long n = conductor();
  if (std::gcd(r % n, n) != 1) {
    throw std::invalid_argument("galois exponent " + std::to_string(r) +
                                " is not coprime to the conductor " + std::to_string(n));
  }
  std::vector<std::pair<unsigned long, Rational>> raw;
  raw.reserve(terms_.size());
  for (const auto& [e, q] : terms_) {
    raw.emplace_back((static_cast<unsigned long>(e) * (r % n)) % n, q);
  }
  return from_raw(field_, raw);
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw CycloError("division by zero in Q(zeta_n)");
  // Extended Euclid in Q[x] against the minimal polynomial: since Phi_n is
  // irreducible over Q, gcd(a, Phi_n) is a nonzero constant c with
  // t*a = c mod Phi_n.
  QPoly r0(field_->minimal_polynomial().begin(), field_->minimal_polynomial().end());
  QPoly r1;
  {
    std::vector<Rational> dense = dense_coeffs();
    r1.assign(dense.begin(), dense.end());
    qpoly_trim(r1);
  }
  QPoly t0, t1{Rational(1)};
  while (!r1.empty()) {
    QPoly rem = r0;
    QPoly q = qpoly_divmod(rem, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    QPoly tn = qpoly_sub_mul(t0, q, t1);
    t0 = std::move(t1);
    t1 = std::move(tn);
  }
  if (r0.size() != 1) throw CycloError("element has no inverse (modulus not irreducible?)");
  const Rational c = r0[0];
  std::vector<std::pair<unsigned long, Rational>> raw;
  raw.reserve(t0.size());
  for (std::size_t e = 0; e < t0.size(); ++e) {
    if (t0[e] != 0) raw.emplace_back(e, t0[e] / c);
  }
  return from_raw(field_, raw);
}

Cyclotomic Cyclotomic::promoted(const FieldPtr& larger) const {
  const unsigned long n = conductor();
  const unsigned long m = larger->conductor();
  if (m % n != 0) throw CycloError("cannot promote: old conductor does not divide the new one");
  const unsigned long step = m / n;
  std::vector<std::pair<unsigned long, Rational>> raw;
  raw.reserve(terms_.size());
  for (const auto& [e, q] : terms_) raw.emplace_back(e * step, q);
  return from_raw(larger, raw);
}

std::optional<Rational> Cyclotomic::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].first == 0) return terms_[0].second;
  return std::nullopt;
}

bool Cyclotomic::is_nonneg_integer() const {
  const std::optional<Rational> q = as_rational();
  return q && is_integer(*q) && *q >= 0;
}

std::string Cyclotomic::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, q] : terms_) {
    const bool neg = sgn(q) < 0;
    const Rational a = neg ? Rational(-q) : q;
    std::string part;
    if (e == 0) {
      part = to_string(a);
    } else {
      std::string root = "E(" + std::to_string(conductor()) + ")";
      if (e > 1) root += "^" + std::to_string(e);
      part = (a == 1) ? root : to_string(a) + "*" + root;
    }
    if (first) {
      out = neg ? "-" + part : part;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += part;
    }
  }
  return out;
}

std::complex<double> Cyclotomic::approx() const {
  std::complex<double> z(0.0, 0.0);
  const double n = static_cast<double>(conductor());
  for (const auto& [e, q] : terms_) {
    z += q.get_d() * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / n);
  }
  return z;
}

bool Cyclotomic::operator==(const Cyclotomic& rhs) const {
  return conductor() == rhs.conductor() && terms_ == rhs.terms_;
}

std::size_t Cyclotomic::hash() const {
  std::size_t h = std::hash<unsigned long>()(conductor());
  for (const auto& [e, q] : terms_) {
    hash_combine(h, e);
    hash_combine(h, hash_rational(q));
  }
  return h;
}

namespace {

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) {
      throw CycloParseError(std::string("expected '") + c + "' " + what, pos);
    }
  }
  Integer integer() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw CycloParseError("expected an integer", pos);
    return Integer(std::string(text.substr(start, pos - start)));
  }
};

class Parser {
 public:
  Parser(std::string_view text, FieldPtr field) : lex_{text}, field_(std::move(field)) {}

  Cyclotomic run() {
    Cyclotomic value = expr();
    if (!lex_.at_end()) throw CycloParseError("trailing input after expression", lex_.pos);
    return value;
  }

 private:
  Cyclotomic expr() {
    bool neg = false;
    if (lex_.accept('-')) {
      neg = true;
    } else {
      lex_.accept('+');
    }
    Cyclotomic acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (lex_.accept('+')) {
        acc += term();
      } else if (lex_.accept('-')) {
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Cyclotomic term() {
    Cyclotomic acc = factor();
    while (lex_.accept('*')) acc = acc * factor();
    return acc;
  }

  Cyclotomic factor() {
    const char c = lex_.peek();
    if (c == 'E') {
      ++lex_.pos;
      lex_.expect('(', "after E");
      const std::size_t npos = lex_.pos;
      const Integer n_big = lex_.integer();
      lex_.expect(')', "after the conductor");
      if (n_big == 0 || !n_big.fits_ulong_p()) {
        throw CycloParseError("invalid root-of-unity order", npos);
      }
      const unsigned long n = n_big.get_ui();
      const unsigned long target = field_->conductor();
      if (target % n != 0) throw ConductorMismatch(n, target, npos);
      long long k = 1;
      if (lex_.accept('^')) {
        const bool kneg = lex_.accept('-');
        Integer k_big = lex_.integer();
        k_big %= static_cast<unsigned long>(n);
        k = k_big.get_si();
        if (kneg) k = -k;
      }
      const long long nn = static_cast<long long>(n);
      const long long e = ((k % nn) + nn) % nn;
      return Cyclotomic::root_power(field_, e * static_cast<long long>(target / n));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = lex_.integer();
      if (lex_.accept('/')) {
        const std::size_t dpos = lex_.pos;
        Integer den = lex_.integer();
        if (den == 0) throw CycloParseError("zero denominator", dpos);
        Rational q(num, den);
        q.canonicalize();
        return Cyclotomic(field_, q);
      }
      return Cyclotomic(field_, Rational(num));
    }
    throw CycloParseError("expected a number or E(n)", lex_.pos);
  }

  Lexer lex_;
  FieldPtr field_;
};

}  // namespace

Cyclotomic parse_cyclotomic(std::string_view text, const FieldPtr& field) {
  return Parser(text, field).run();
}

unsigned long scan_conductor(std::string_view text) {
  unsigned long l = 1;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] != 'E') continue;
    std::size_t j = i + 1;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j >= text.size() || text[j] != '(') continue;
    ++j;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    unsigned long n = 0;
    bool any = false;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      any = true;
      n = n * 10 + static_cast<unsigned long>(text[j] - '0');
      if (n > 1000000) throw CycloError("conductor too large in expression");
      ++j;
    }
    if (any && n > 0) l = std::lcm(l, n);
    if (l > 1000000) throw CycloError("combined conductor too large");
  }
  return l;
}

}  // namespace sct
