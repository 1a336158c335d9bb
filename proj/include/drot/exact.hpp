// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact arithmetic in Q and in real quadratic fields Q(sqrt d).
//
// A FieldElement holds (a + b*sqrt(d)) / c with c > 0 and gcd(a, b, c) = 1.
// Rational values carry b = 0 and d = 0, so rationals mix freely with any
// field while two irrational values must agree on d.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace drot {

using BigInt = mpz_class;
using Rational = mpq_class;

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  explicit FieldElement(const BigInt& value) : a_(value) {}
  explicit FieldElement(const Rational& value);

  /// (a + b*sqrt(d)) / c. Throws DomainError when c == 0 or when d is not a
  /// non-square integer >= 2.
  static FieldElement quadratic(BigInt a, BigInt b, BigInt c, BigInt d);
  static FieldElement rational(BigInt num, BigInt den);

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  /// Radicand, 0 for rational values.
  const BigInt& d() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_integer() const { return b_ == 0 && c_ == 1; }

  /// Value as a rational; throws DomainError if irrational.
  Rational to_rational() const;
  long double to_long_double() const;
  double to_double() const { return static_cast<double>(to_long_double()); }

  FieldElement conjugate() const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  // Representation is canonical, so value equality is field equality.
  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  friend std::strong_ordering operator<=>(const FieldElement& x, const FieldElement& y);

  /// Canonical coefficient text, `rat:a/c` or `quad:a,b,c,d`.
  std::string to_string() const;

 private:
  void normalize();

  BigInt a_{0};
  BigInt b_{0};
  BigInt c_{1};
  BigInt d_{0};
};

FieldElement inverse(const FieldElement& x);
int sign(const FieldElement& x);
BigInt floor(const FieldElement& x);

/// Largest r with r*r <= n, n >= 0.
BigInt isqrt(const BigInt& n);
/// floor(sqrt(q)) for a rational q >= 0.
BigInt floor_sqrt(const Rational& q);

/// A coefficient parsed from text; the value of lambda, eta or a radius.
class ExactCoeff {
 public:
  enum class Kind { rational, quadratic };

  ExactCoeff() = default;
  explicit ExactCoeff(FieldElement value) : value_(std::move(value)) {}

  Kind kind() const { return value_.is_rational() ? Kind::rational : Kind::quadratic; }
  const FieldElement& value() const { return value_; }
  std::string to_string() const { return value_.to_string(); }

  friend bool operator==(const ExactCoeff&, const ExactCoeff&) = default;

 private:
  FieldElement value_;
};

/// Parses `rat:<int>/<posint>` or `quad:<int>,<int>,<posint>,<posint>`.
ExactCoeff make_coeff(std::string_view text);
/// make_coeff plus the rotation-coefficient check -2 < value < 2.
ExactCoeff make_rotation_coeff(std::string_view text);

/// Parses an exact rational written `p/q` or `p` (decimal integers only).
Rational parse_rational(std::string_view text);
/// `rat:p/q` rendering of a rational.
std::string to_coeff_text(const Rational& q);

}  // namespace drot
