// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact geometry of the rotation lattice in integer coordinates.
//
// The state (x, y) stands for the planar point x*(-csc t, 0) + y*(cot t, 1)
// with lambda = -2 cos t. Its squared Euclidean length is the quadratic form
//   N(x, y) = (x^2 + y^2 + lambda*x*y) / (1 - lambda^2/4),
// so every ball and trap predicate is a sign test in Q(lambda, eta). With a
// shift eta the lattice is translated by kappa = eta/(2 + lambda) in both
// coordinates and N is evaluated at (x + kappa, y + kappa).

#include <cstdint>
#include <utility>
#include <vector>

#include "drot/detail/kernel.hpp"
#include "drot/dynamics.hpp"
#include "drot/exact.hpp"

namespace drot {

struct TrapSpec {
  Rational radius_sq;
  bool shifted = false;
};

/// TrapSpec using the shifted lattice exactly when the system has eta != 0.
TrapSpec natural_spec(const Rational& radius_sq, const RotationParams& p);

FieldElement norm_sq(const LatticeState& s, const RotationParams& p, bool shifted = false);
bool in_ball(const LatticeState& s, const TrapSpec& t, const RotationParams& p);
bool in_trap(const LatticeState& s, const TrapSpec& t, const RotationParams& p);

/// Phi: swaps the two lattice coordinates, a reflection of the plane.
inline LatticeState reflect_state(const LatticeState& s) { return {s.y, s.x}; }

std::uint64_t trap_count(const TrapSpec& t, const RotationParams& p, unsigned threads = 1);

struct ReflectionCount {
  std::uint64_t trap_points = 0;
  /// Trap points with {s, Phi(s)} identified when both are trap points.
  std::uint64_t classes = 0;
  std::uint64_t phi_fixed = 0;
  std::uint64_t pairs = 0;
  /// R + R cos(theta/2).
  double bound = 0;
  double residual = 0;
};

ReflectionCount trap_count_mod_reflection(const TrapSpec& t, const RotationParams& p,
                                          unsigned threads = 1);

/// Planar coordinates for plotting.
std::pair<double, double> embed_real(const LatticeState& s, const RotationParams& p,
                                     bool shifted = false);

/// floor(R) and R itself (when R^2 is a rational square) for a radius_sq.
BigInt floor_radius(const Rational& radius_sq);

struct ScanBox {
  std::int64_t x_min = 0;
  std::int64_t x_max = -1;
  std::int64_t y_min = 0;
  std::int64_t y_max = -1;

  bool contains(std::int64_t x, std::int64_t y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
  std::uint64_t width() const { return x_max >= x_min ? std::uint64_t(x_max - x_min + 1) : 0; }
  std::uint64_t height() const { return y_max >= y_min ? std::uint64_t(y_max - y_min + 1) : 0; }
};

/// Compiled ball and trap predicates for one radius and lattice.
class BallRegion {
 public:
  BallRegion(const RotationParams& p, const TrapSpec& t);

  bool in_ball(std::int64_t x, std::int64_t y) const { return ball_.sign(x, y) <= 0; }
  bool in_ball(const LatticeState& s) const {
    if (s.fits_int64()) return in_ball(s.x.get_si(), s.y.get_si());
    return ball_.sign(s.x, s.y) <= 0;
  }
  bool in_trap(std::int64_t x, std::int64_t y) const;
  bool in_trap(const LatticeState& s) const;

  /// Boxes guaranteed to contain every ball (resp. trap) state.
  const ScanBox& ball_box() const { return ball_box_; }
  const ScanBox& trap_box() const { return trap_box_; }

  /// Every ball state, ordered by x then y.
  std::vector<detail::State64> ball_states() const;

  /// N(x', y') - R^2 scaled by 1 - lambda^2/4 > 0; sign matches the ball test.
  const detail::SurdForm& ball_form() const { return ball_; }
  const TrapSpec& spec() const { return spec_; }
  const RotationParams& params() const { return params_; }

 private:
  RotationParams params_;
  TrapSpec spec_;
  detail::SurdForm ball_;    // N(x', y') s^2 - R^2 s^2
  detail::SurdForm below_;   // N(x', y' - 1) s^2 - R^2 s^2
  detail::SurdForm vertex_;  // u* = y' + lambda x'/2
  detail::SurdForm vertex_hi_;  // u* - 1
  detail::SurdForm line_;    // x'^2 - R^2
  ScanBox ball_box_;
  ScanBox trap_box_;
};

}  // namespace drot
