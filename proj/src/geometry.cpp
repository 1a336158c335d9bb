// SPDX-License-Identifier: Apache-2.0
#include "drot/geometry.hpp"

#include <cmath>
#include <numeric>

#include "drot/detail/parallel.hpp"
#include "drot/errors.hpp"

namespace drot {

namespace {

using detail::SurdForm;

// Coefficients of x'^2 + y'^2 + lambda x'y' - rhs with x' = x + ox, y' = y + oy.
SurdForm::Coeffs shifted_quadratic(const FieldElement& lambda, const FieldElement& ox,
                                   const FieldElement& oy, const FieldElement& rhs) {
  SurdForm::Coeffs c{};
  c[SurdForm::kXX] = 1;
  c[SurdForm::kYY] = 1;
  c[SurdForm::kXY] = lambda;
  c[SurdForm::kX] = ox * 2 + lambda * oy;
  c[SurdForm::kY] = oy * 2 + lambda * ox;
  c[SurdForm::kOne] = ox * ox + oy * oy + lambda * ox * oy - rhs;
  return c;
}

std::int64_t to_i64_checked(long double v) {
  if (!(std::fabs(v) < 1e15L)) throw DomainError("scan region too large");
  return static_cast<std::int64_t>(v);
}

}  // namespace

TrapSpec natural_spec(const Rational& radius_sq, const RotationParams& p) {
  return TrapSpec{radius_sq, p.has_shift()};
}

FieldElement norm_sq(const LatticeState& s, const RotationParams& p, bool shifted) {
  const FieldElement& lambda = p.lambda().value();
  FieldElement x(s.x);
  FieldElement y(s.y);
  if (shifted) {
    x += p.kappa();
    y += p.kappa();
  }
  return (x * x + y * y + lambda * x * y) / p.sin_sq_theta();
}

BigInt floor_radius(const Rational& radius_sq) { return floor_sqrt(radius_sq); }

BallRegion::BallRegion(const RotationParams& p, const TrapSpec& t) : params_(p), spec_(t) {
  if (t.radius_sq <= 0) throw DomainError("radius_sq must be positive");
  const FieldElement& lambda = p.lambda().value();
  const FieldElement kappa = t.shifted ? p.kappa() : FieldElement(0);
  const FieldElement r2(t.radius_sq);
  const FieldElement rhs = r2 * p.sin_sq_theta();

  ball_ = SurdForm(shifted_quadratic(lambda, kappa, kappa, rhs));
  below_ = SurdForm(shifted_quadratic(lambda, kappa, kappa - 1, rhs));

  // u* = y' + lambda x'/2, the minimiser of N(x', y' - u) over u.
  const FieldElement half_lambda = lambda * FieldElement::rational(1, 2);
  SurdForm::Coeffs v{};
  v[SurdForm::kY] = 1;
  v[SurdForm::kX] = half_lambda;
  v[SurdForm::kOne] = kappa + half_lambda * kappa;
  vertex_ = SurdForm(v);
  v[SurdForm::kOne] -= 1;
  vertex_hi_ = SurdForm(v);

  SurdForm::Coeffs line{};
  line[SurdForm::kXX] = 1;
  line[SurdForm::kX] = kappa * 2;
  line[SurdForm::kOne] = kappa * kappa - r2;
  line_ = SurdForm(line);

  // Coverage bounds: x^2 + y^2 <= (1 + |lambda|/2) N for the unshifted form.
  const long double r = std::sqrt(static_cast<long double>(t.radius_sq.get_d()));
  const long double k = kappa.to_long_double();
  const long double reach = r * std::sqrt(1.0L + std::fabs(lambda.to_long_double()) / 2.0L);
  ball_box_.x_min = to_i64_checked(std::floor(-reach - k) - 2);
  ball_box_.x_max = to_i64_checked(std::ceil(reach - k) + 2);
  ball_box_.y_min = ball_box_.x_min;
  ball_box_.y_max = ball_box_.x_max;

  // Trap points have |x'| <= R and |y' - u| <= reach for some u in (0,1).
  trap_box_.x_min = to_i64_checked(std::floor(-r - k) - 2);
  trap_box_.x_max = to_i64_checked(std::ceil(r - k) + 2);
  trap_box_.y_min = to_i64_checked(std::floor(-reach - k) - 2);
  trap_box_.y_max = to_i64_checked(std::ceil(reach - k) + 3);
}

bool BallRegion::in_trap(std::int64_t x, std::int64_t y) const {
  if (ball_.sign(x, y) <= 0) return false;
  const int vlo = vertex_.sign(x, y);
  const int vhi = vertex_hi_.sign(x, y);
  if (vlo > 0 && vhi < 0) return line_.sign(x, y) <= 0;
  if (vhi >= 0) return below_.sign(x, y) < 0;
  return false;
}

bool BallRegion::in_trap(const LatticeState& s) const {
  if (s.fits_int64()) return in_trap(s.x.get_si(), s.y.get_si());
  if (ball_.sign(s.x, s.y) <= 0) return false;
  const int vlo = vertex_.sign(s.x, s.y);
  const int vhi = vertex_hi_.sign(s.x, s.y);
  if (vlo > 0 && vhi < 0) return line_.sign(s.x, s.y) <= 0;
  if (vhi >= 0) return below_.sign(s.x, s.y) < 0;
  return false;
}

std::vector<detail::State64> BallRegion::ball_states() const {
  std::vector<detail::State64> out;
  for (std::int64_t x = ball_box_.x_min; x <= ball_box_.x_max; ++x)
    for (std::int64_t y = ball_box_.y_min; y <= ball_box_.y_max; ++y)
      if (in_ball(x, y)) out.push_back({x, y});
  return out;
}

bool in_ball(const LatticeState& s, const TrapSpec& t, const RotationParams& p) {
  FieldElement n = norm_sq(s, p, t.shifted);
  return sign(n - FieldElement(t.radius_sq)) <= 0;
}

bool in_trap(const LatticeState& s, const TrapSpec& t, const RotationParams& p) {
  return BallRegion(p, t).in_trap(s);
}

namespace {

std::vector<detail::State64> trap_states(const BallRegion& region, unsigned threads) {
  const ScanBox& box = region.trap_box();
  std::vector<std::vector<detail::State64>> rows(box.width());
  detail::parallel_for(rows.size(), threads, [&](unsigned, std::size_t i) {
    const std::int64_t x = box.x_min + static_cast<std::int64_t>(i);
    for (std::int64_t y = box.y_min; y <= box.y_max; ++y)
      if (region.in_trap(x, y)) rows[i].push_back({x, y});
  });
  std::vector<detail::State64> out;
  for (auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace

std::uint64_t trap_count(const TrapSpec& t, const RotationParams& p, unsigned threads) {
  BallRegion region(p, t);
  return trap_states(region, threads).size();
}

ReflectionCount trap_count_mod_reflection(const TrapSpec& t, const RotationParams& p,
                                          unsigned threads) {
  BallRegion region(p, t);
  auto points = trap_states(region, threads);
  ReflectionCount rc;
  rc.trap_points = points.size();
  for (const auto& s : points) {
    if (s.x == s.y) {
      ++rc.phi_fixed;
    } else if (region.in_trap(s.y, s.x)) {
      if (s.x < s.y) ++rc.pairs;
    }
  }
  rc.classes = rc.trap_points - rc.pairs;
  const double r = std::sqrt(t.radius_sq.get_d());
  rc.bound = r + r * p.cos_half_theta();
  rc.residual = static_cast<double>(rc.classes) - rc.bound;
  return rc;
}

std::pair<double, double> embed_real(const LatticeState& s, const RotationParams& p, bool shifted) {
  const long double sin_t = std::sqrt(p.sin_sq_theta().to_long_double());
  const long double cos_t = -p.lambda().value().to_long_double() / 2.0L;
  long double x = s.x.get_d();
  long double y = s.y.get_d();
  if (shifted) {
    const long double k = p.kappa().to_long_double();
    x += k;
    y += k;
  }
  return {static_cast<double>(-x / sin_t + y * cos_t / sin_t), static_cast<double>(y)};
}

}  // namespace drot
