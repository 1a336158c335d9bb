// SPDX-License-Identifier: Apache-2.0
#include "drot/dynamics.hpp"

#include <cmath>

#include "drot/errors.hpp"

namespace drot {

RotationParams::RotationParams(ExactCoeff lambda, ExactCoeff eta)
    : lambda_(std::move(lambda)), eta_(std::move(eta)) {
  const FieldElement& l = lambda_.value();
  const FieldElement& e = eta_.value();
  if (sign(l + 2) <= 0 || sign(l - 2) >= 0)
    throw DomainError("lambda " + lambda_.to_string() + " is outside (-2,2)");
  if (!l.is_rational() && !e.is_rational() && l.d() != e.d())
    throw DomainError("lambda and eta must share one quadratic field");

  lambda_sq_ = l * l;
  sin_sq_theta_ = FieldElement(1) - lambda_sq_ * FieldElement::rational(1, 4);
  kappa_ = e / (l + 2);
  theta_ = std::acos(-l.to_long_double() / 2.0L);

  using F = detail::SurdForm;
  F::Coeffs arg{};
  arg[F::kX] = 1;
  arg[F::kY] = l;
  arg[F::kOne] = e;
  floor_arg_ = F(arg);

  F::Coeffs band{};
  band[F::kX] = 2;
  band[F::kY] = l;
  band[F::kOne] = e;
  band_ = F(band);

  F::Coeffs norm{};
  norm[F::kXX] = 1;
  norm[F::kYY] = 1;
  norm[F::kXY] = l;
  norm_plain_ = F(norm);
  // (x+k)^2 + (y+k)^2 + l (x+k)(y+k), using (2 + l) k = eta.
  norm[F::kX] = e;
  norm[F::kY] = e;
  norm[F::kOne] = e * kappa_;
  norm_shifted_ = F(norm);
}

RotationParams RotationParams::parse(std::string_view lambda, std::string_view eta) {
  return RotationParams(make_rotation_coeff(lambda), make_coeff(eta));
}

double RotationParams::cos_half_theta() const {
  // cos^2(theta/2) = (1 + cos theta)/2 = (2 - lambda)/4
  return static_cast<double>(std::sqrt((2.0L - lambda_.value().to_long_double()) / 4.0L));
}

LatticeState step(const LatticeState& s, const RotationParams& p) {
  return {s.y, -p.floor_arg().floor(s.x, s.y)};
}

LatticeState step_back(const LatticeState& s, const RotationParams& p) {
  // F(x', y') = (y', z) with y' = x and z = y; by reversibility x' = -floor(y + lambda*x + eta).
  return {-p.floor_arg().floor(s.y, s.x), s.x};
}

StepTrace trace_step(const LatticeState& s, const RotationParams& p) {
  StepTrace t;
  t.state_before = s;
  t.floor_arg = p.floor_arg().value(s.x, s.y);
  BigInt f = floor(t.floor_arg);
  t.mu = t.floor_arg - FieldElement(f);
  t.state_after = {s.y, -f};
  return t;
}

LatticeState involution_g(const LatticeState& s, const RotationParams& p) {
  return {-p.floor_arg().floor(s.x, s.y), s.y};
}

bool in_fix_g(const LatticeState& s, const RotationParams& p) {
  FieldElement v = p.band().value(s.x, s.y);
  return sign(v) >= 0 && sign(v - 1) < 0;
}

bool three_term_check(const BigInt& a, const BigInt& b, const BigInt& c, const RotationParams& p) {
  const FieldElement& l = p.lambda().value();
  const FieldElement& e = p.eta().value();
  FieldElement sum = FieldElement(c) + l * FieldElement(b) + FieldElement(a);
  return sign(sum + e) >= 0 && sign(sum + e - 1) < 0;
}

}  // namespace drot
