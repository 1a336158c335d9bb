// SPDX-License-Identifier: Apache-2.0
#include "drot/exact.hpp"

#include <cmath>
#include <vector>

#include "drot/errors.hpp"

namespace drot {

namespace {

void check_radicand(const BigInt& d) {
  if (d < 2) throw DomainError("radicand must be >= 2, got " + d.get_str());
  if (mpz_perfect_square_p(d.get_mpz_t()) != 0)
    throw DomainError("radicand " + d.get_str() + " is a perfect square");
}

// Radicand shared by two operands; rationals adopt the other's.
BigInt common_radicand(const FieldElement& x, const FieldElement& y) {
  if (x.is_rational()) return y.d();
  if (y.is_rational()) return x.d();
  if (x.d() != y.d())
    throw DomainError("mixed quadratic fields sqrt(" + x.d().get_str() + ") and sqrt(" +
                      y.d().get_str() + ")");
  return x.d();
}

bool is_int_text(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

BigInt parse_int(std::string_view s, bool allow_sign, std::string_view what) {
  if (!is_int_text(s, allow_sign))
    throw ParseError("expected " + std::string(what) + ", got '" + std::string(s) + "'");
  return BigInt(std::string(s), 10);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

FieldElement::FieldElement(const Rational& value)
    : a_(value.get_num()), c_(value.get_den()) {}

FieldElement FieldElement::quadratic(BigInt a, BigInt b, BigInt c, BigInt d) {
  if (c == 0) throw DomainError("zero denominator");
  check_radicand(d);
  FieldElement r;
  r.a_ = std::move(a);
  r.b_ = std::move(b);
  r.c_ = std::move(c);
  r.d_ = std::move(d);
  r.normalize();
  return r;
}

FieldElement FieldElement::rational(BigInt num, BigInt den) {
  if (den == 0) throw DomainError("zero denominator");
  FieldElement r;
  r.a_ = std::move(num);
  r.c_ = std::move(den);
  r.normalize();
  return r;
}

void FieldElement::normalize() {
  if (c_ < 0) {
    c_ = -c_;
    a_ = -a_;
    b_ = -b_;
  }
  if (b_ == 0) d_ = 0;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
  if (g > 1) {
    mpz_divexact(a_.get_mpz_t(), a_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b_.get_mpz_t(), b_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(c_.get_mpz_t(), c_.get_mpz_t(), g.get_mpz_t());
  }
}

Rational FieldElement::to_rational() const {
  if (!is_rational()) throw DomainError("value " + to_string() + " is irrational");
  Rational q(a_, c_);
  q.canonicalize();
  return q;
}

long double FieldElement::to_long_double() const {
  // Evaluate with doubles on scaled mantissas; exact enough for reporting.
  long double num = a_.get_d();
  if (b_ != 0) {
    long double root = std::sqrt(static_cast<long double>(d_.get_d()));
    num += static_cast<long double>(b_.get_d()) * root;
    // Guard catastrophic cancellation: rewrite as (a^2 - b^2 d) / (a - b sqrt d).
    if (sgn(a_) != 0 && sgn(a_) != sgn(b_)) {
      BigInt n = a_ * a_ - b_ * b_ * d_;
      long double den = static_cast<long double>(a_.get_d()) -
                        static_cast<long double>(b_.get_d()) * root;
      num = static_cast<long double>(n.get_d()) / den;
    }
  }
  return num / static_cast<long double>(c_.get_d());
}

FieldElement FieldElement::conjugate() const {
  FieldElement r = *this;
  r.b_ = -r.b_;
  return r;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  FieldElement r;
  r.d_ = common_radicand(x, y);
  r.a_ = x.a_ * y.c_ + y.a_ * x.c_;
  r.b_ = x.b_ * y.c_ + y.b_ * x.c_;
  r.c_ = x.c_ * y.c_;
  r.normalize();
  return r;
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) { return x + (-y); }

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  FieldElement r;
  r.d_ = common_radicand(x, y);
  r.a_ = x.a_ * y.a_ + x.b_ * y.b_ * r.d_;
  r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
  r.c_ = x.c_ * y.c_;
  r.normalize();
  return r;
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) { return x * inverse(y); }

std::strong_ordering operator<=>(const FieldElement& x, const FieldElement& y) {
  int s = sign(x - y);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string FieldElement::to_string() const {
  if (is_rational()) return "rat:" + a_.get_str() + "/" + c_.get_str();
  return "quad:" + a_.get_str() + "," + b_.get_str() + "," + c_.get_str() + "," + d_.get_str();
}

FieldElement inverse(const FieldElement& x) {
  if (x.is_zero()) throw DomainError("inverse of zero");
  // c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
  BigInt norm = x.a() * x.a() - x.b() * x.b() * x.d();
  if (x.is_rational()) return FieldElement::rational(x.c(), x.a());
  return FieldElement::quadratic(x.c() * x.a(), -x.c() * x.b(), norm, x.d());
}

int sign(const FieldElement& x) {
  const int sa = sgn(x.a());
  const int sb = sgn(x.b());
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the term with the larger square wins.
  BigInt a2 = x.a() * x.a();
  BigInt b2d = x.b() * x.b() * x.d();
  return a2 > b2d ? sa : sb;
}

BigInt isqrt(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

BigInt floor(const FieldElement& x) {
  // floor(b sqrt d) is exact by integer square root; sqrt d is irrational so
  // the negative case rounds one further down.
  BigInt t = 0;
  if (x.b() > 0) {
    t = isqrt(x.b() * x.b() * x.d());
  } else if (x.b() < 0) {
    t = -isqrt(x.b() * x.b() * x.d()) - 1;
  }
  BigInt q;
  BigInt num = x.a() + t;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.c().get_mpz_t());
  return q;
}

BigInt floor_sqrt(const Rational& q) {
  if (q < 0) throw DomainError("square root of a negative rational");
  BigInt prod = q.get_num() * q.get_den();
  BigInt r = isqrt(prod);
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

ExactCoeff make_coeff(std::string_view text) {
  if (text.starts_with("rat:")) {
    auto parts = split(text.substr(4), '/');
    if (parts.size() != 2) throw ParseError("expected rat:<int>/<posint>, got '" + std::string(text) + "'");
    BigInt a = parse_int(parts[0], true, "integer numerator");
    BigInt c = parse_int(parts[1], false, "positive denominator");
    if (c == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return ExactCoeff(FieldElement::rational(a, c));
  }
  if (text.starts_with("quad:")) {
    auto parts = split(text.substr(5), ',');
    if (parts.size() != 4)
      throw ParseError("expected quad:<int>,<int>,<posint>,<posint>, got '" + std::string(text) + "'");
    BigInt a = parse_int(parts[0], true, "integer a");
    BigInt b = parse_int(parts[1], true, "integer b");
    BigInt c = parse_int(parts[2], false, "positive denominator c");
    BigInt d = parse_int(parts[3], false, "positive radicand d");
    return ExactCoeff(FieldElement::quadratic(a, b, c, d));
  }
  throw ParseError("coefficient must start with 'rat:' or 'quad:', got '" + std::string(text) + "'");
}

ExactCoeff make_rotation_coeff(std::string_view text) {
  ExactCoeff coeff = make_coeff(text);
  const FieldElement& v = coeff.value();
  if (sign(v + 2) <= 0 || sign(v - 2) >= 0)
    throw DomainError("rotation coefficient " + coeff.to_string() + " is outside (-2,2)");
  return coeff;
}

Rational parse_rational(std::string_view text) {
  auto parts = split(text, '/');
  if (parts.size() > 2) throw ParseError("malformed rational '" + std::string(text) + "'");
  Rational q;
  if (parts.size() == 2) {
    BigInt num = parse_int(parts[0], true, "rational numerator");
    BigInt den = parse_int(parts[1], false, "rational denominator");
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    q = Rational(num, den);
  } else {
    // Terminating decimals such as 10.5 are exact; exponents are rejected.
    std::string_view s = parts[0];
    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
      q = Rational(parse_int(s, true, "rational"), 1);
    } else {
      std::string_view whole = s.substr(0, dot);
      std::string_view frac = s.substr(dot + 1);
      bool neg = !whole.empty() && whole.front() == '-';
      if (neg) whole.remove_prefix(1);
      if ((!whole.empty() && !is_int_text(whole, false)) || !is_int_text(frac, false) ||
          (whole.empty() && frac.empty()))
        throw ParseError("malformed rational '" + std::string(text) + "'");
      BigInt scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      BigInt num = BigInt(std::string(whole.empty() ? "0" : whole), 10) * scale +
                   BigInt(std::string(frac), 10);
      q = Rational(neg ? BigInt(-num) : num, scale);
    }
  }
  q.canonicalize();
  return q;
}

std::string to_coeff_text(const Rational& q) {
  return "rat:" + q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace drot
