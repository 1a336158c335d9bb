// SPDX-License-Identifier: Apache-2.0
#pragma once

// Evaluation kernels shared by the dynamics, geometry and orbit code.
//
// Every predicate in the library reduces to the sign or floor of
//   (A(x,y) + B(x,y) * sqrt(d)) / C
// with A, B integer quadratic polynomials in the lattice coordinates.
// SurdForm keeps the exact BigInt coefficients and a 128-bit copy; the
// fast path checks every multiply and add for overflow and reports failure
// instead of guessing, so callers can always fall back to the exact path.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "drot/exact.hpp"

namespace drot::detail {

using i128 = __int128;

BigInt to_big(i128 v);
/// Value of v if it fits in 128 bits.
std::optional<i128> to_i128(const BigInt& v);

inline bool mul_ok(i128 a, i128 b, i128& out) { return !__builtin_mul_overflow(a, b, &out); }
inline bool add_ok(i128 a, i128 b, i128& out) { return !__builtin_add_overflow(a, b, &out); }

/// floor(sqrt(n)) for 0 <= n < 2^127.
i128 isqrt128(i128 n);
/// Floor division, den > 0.
inline i128 floor_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

class SurdForm {
 public:
  enum Monomial { kXX, kXY, kYY, kX, kY, kOne, kCount };
  using Coeffs = std::array<FieldElement, kCount>;

  SurdForm() = default;
  explicit SurdForm(const Coeffs& coeffs);

  FieldElement value(const BigInt& x, const BigInt& y) const;
  int sign(const BigInt& x, const BigInt& y) const;
  BigInt floor(const BigInt& x, const BigInt& y) const;

  /// nullopt when the 128-bit evaluation would overflow.
  std::optional<int> sign_fast(std::int64_t x, std::int64_t y) const;
  std::optional<i128> floor_fast(std::int64_t x, std::int64_t y) const;

  int sign(std::int64_t x, std::int64_t y) const {
    if (auto s = sign_fast(x, y)) return *s;
    return sign(BigInt(static_cast<long>(x)), BigInt(static_cast<long>(y)));
  }

  long double approx(long double x, long double y) const;

  const BigInt& radicand() const { return d_; }

 private:
  std::optional<std::pair<i128, i128>> eval_fast(std::int64_t x, std::int64_t y) const;
  std::pair<BigInt, BigInt> eval(const BigInt& x, const BigInt& y) const;

  std::array<BigInt, kCount> a_{};
  std::array<BigInt, kCount> b_{};
  BigInt c_{1};
  BigInt d_{0};

  bool fast_ = false;
  std::array<i128, kCount> fa_{};
  std::array<i128, kCount> fb_{};
  i128 fc_ = 1;
  i128 fd_ = 0;

  std::array<long double, kCount> approx_{};
};

/// Sign of A + B sqrt(d) on 128-bit inputs; nullopt on overflow.
std::optional<int> surd_sign(i128 a, i128 b, i128 d);
/// floor((A + B sqrt(d)) / C) on 128-bit inputs, C > 0; nullopt on overflow.
std::optional<i128> surd_floor(i128 a, i128 b, i128 c, i128 d);

}  // namespace drot::detail
