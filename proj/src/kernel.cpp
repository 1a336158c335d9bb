// SPDX-License-Identifier: Apache-2.0
#include "drot/detail/kernel.hpp"

#include <cmath>

#include "drot/errors.hpp"

namespace drot::detail {

BigInt to_big(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt hi(static_cast<unsigned long>(u >> 64));
  BigInt lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

std::optional<i128> to_i128(const BigInt& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 126) return std::nullopt;
  BigInt mag = abs(v);
  BigInt hi = mag >> 64;
  BigInt lo = mag - (hi << 64);
  unsigned __int128 u = (static_cast<unsigned __int128>(hi.get_ui()) << 64) | lo.get_ui();
  i128 r = static_cast<i128>(u);
  return v < 0 ? -r : r;
}

i128 isqrt128(i128 n) {
  if (n <= 0) return 0;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  i128 sq;
  while (r > 0 && (!mul_ok(r, r, sq) || sq > n)) --r;
  for (;;) {
    i128 next = r + 1;
    if (!mul_ok(next, next, sq) || sq > n) break;
    r = next;
  }
  return r;
}

std::optional<int> surd_sign(i128 a, i128 b, i128 d) {
  const int sa = (a > 0) - (a < 0);
  const int sb = (b > 0) - (b < 0);
  if (sb == 0 || d == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  i128 a2, b2, b2d;
  if (!mul_ok(a, a, a2) || !mul_ok(b, b, b2) || !mul_ok(b2, d, b2d)) return std::nullopt;
  return a2 > b2d ? sa : sb;
}

std::optional<i128> surd_floor(i128 a, i128 b, i128 c, i128 d) {
  i128 t = 0;
  if (b != 0 && d != 0) {
    i128 b2, b2d;
    if (!mul_ok(b, b, b2) || !mul_ok(b2, d, b2d)) return std::nullopt;
    t = isqrt128(b2d);
    if (b < 0) t = -t - 1;
  }
  i128 num;
  if (!add_ok(a, t, num)) return std::nullopt;
  return floor_div(num, c);
}

SurdForm::SurdForm(const Coeffs& coeffs) {
  BigInt den = 1;
  for (const auto& f : coeffs) {
    if (!f.is_rational()) {
      if (d_ != 0 && d_ != f.d()) throw DomainError("surd form mixes quadratic fields");
      d_ = f.d();
    }
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), f.c().get_mpz_t());
  }
  c_ = den;
  for (int i = 0; i < kCount; ++i) {
    BigInt scale = den / coeffs[i].c();
    a_[i] = coeffs[i].a() * scale;
    b_[i] = coeffs[i].b() * scale;
    approx_[i] = coeffs[i].to_long_double();
  }

  fast_ = true;
  auto put = [this](const BigInt& v, i128& slot) {
    auto f = to_i128(v);
    if (!f) fast_ = false;
    else slot = *f;
  };
  for (int i = 0; i < kCount; ++i) {
    put(a_[i], fa_[i]);
    put(b_[i], fb_[i]);
  }
  put(c_, fc_);
  put(d_, fd_);
}

std::optional<std::pair<i128, i128>> SurdForm::eval_fast(std::int64_t x, std::int64_t y) const {
  if (!fast_) return std::nullopt;
  const i128 X = x;
  const i128 Y = y;
  const std::array<i128, kCount> mono{X * X, X * Y, Y * Y, X, Y, 1};
  i128 A = 0;
  i128 B = 0;
  for (int i = 0; i < kCount; ++i) {
    i128 t;
    if (fa_[i] != 0) {
      if (!mul_ok(fa_[i], mono[i], t) || !add_ok(A, t, A)) return std::nullopt;
    }
    if (fb_[i] != 0) {
      if (!mul_ok(fb_[i], mono[i], t) || !add_ok(B, t, B)) return std::nullopt;
    }
  }
  return std::pair{A, B};
}

std::pair<BigInt, BigInt> SurdForm::eval(const BigInt& x, const BigInt& y) const {
  const std::array<BigInt, kCount> mono{x * x, x * y, y * y, x, y, BigInt(1)};
  BigInt A = 0;
  BigInt B = 0;
  for (int i = 0; i < kCount; ++i) {
    A += a_[i] * mono[i];
    B += b_[i] * mono[i];
  }
  return {A, B};
}

FieldElement SurdForm::value(const BigInt& x, const BigInt& y) const {
  auto [A, B] = eval(x, y);
  if (B == 0 || d_ == 0) return FieldElement::rational(A, c_);
  return FieldElement::quadratic(A, B, c_, d_);
}

int SurdForm::sign(const BigInt& x, const BigInt& y) const { return drot::sign(value(x, y)); }

BigInt SurdForm::floor(const BigInt& x, const BigInt& y) const { return drot::floor(value(x, y)); }

std::optional<int> SurdForm::sign_fast(std::int64_t x, std::int64_t y) const {
  auto ab = eval_fast(x, y);
  if (!ab) return std::nullopt;
  return surd_sign(ab->first, ab->second, fd_);
}

std::optional<i128> SurdForm::floor_fast(std::int64_t x, std::int64_t y) const {
  auto ab = eval_fast(x, y);
  if (!ab) return std::nullopt;
  return surd_floor(ab->first, ab->second, fc_, fd_);
}

long double SurdForm::approx(long double x, long double y) const {
  return approx_[kXX] * x * x + approx_[kXY] * x * y + approx_[kYY] * y * y + approx_[kX] * x +
         approx_[kY] * y + approx_[kOne];
}

}  // namespace drot::detail
