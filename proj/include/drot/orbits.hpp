// SPDX-License-Identifier: Apache-2.0
#pragma once

// Period detection, time-reversal classification and complete enumeration
// of the orbits of a given period.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "drot/dynamics.hpp"
#include "drot/exact.hpp"
#include "drot/geometry.hpp"

namespace drot {

struct Budget {
  std::uint64_t max_steps = 10'000'000;
  /// Abort once the exact squared lattice norm exceeds this value.
  std::optional<Rational> max_norm_sq;
};

enum class Outcome { periodic, unresolved };

enum class SymmetryClass { asymmetric, phi_symmetric, g_symmetric, doubly_symmetric };

std::string_view to_string(SymmetryClass c);
/// Inverse of to_string; throws ParseError.
SymmetryClass symmetry_from_string(std::string_view text);

struct OrbitResult {
  Outcome outcome = Outcome::unresolved;
  std::uint64_t period = 0;  // 0 unless periodic
  std::uint64_t steps_used = 0;
  /// Squared norm in the natural lattice (shifted when eta != 0).
  FieldElement max_norm_sq_seen;
  std::optional<LatticeState> canonical;

  bool periodic() const { return outcome == Outcome::periodic; }
};

/// Iterates F until the seed returns. The first return is the minimal
/// period because F is a bijection.
OrbitResult detect_period(const LatticeState& seed, const RotationParams& p,
                          const Budget& b = {});

/// Forward half-orbit search from a seed in Fix(phi) or Fix(g): the first
/// later visit to either fixed set is a second symmetry centre, and the
/// distance between the two centres is the period. Throws
/// PreconditionError when the seed lies in neither set.
OrbitResult detect_period_symmetric(const LatticeState& seed, const RotationParams& p,
                                    const Budget& b = {});

/// Throws PreconditionError when the orbit does not resolve within budget.
SymmetryClass classify_symmetry(const LatticeState& seed, const RotationParams& p,
                                const Budget& b = {});

/// Symmetry centres met during one period, as doubled indices c with
/// a[c - n] = a[n] for the first-coordinate sequence a[n] of the orbit.
struct SymmetryCenters {
  std::uint64_t period = 0;
  std::vector<std::uint64_t> phi;  // odd c: state (a[k], a[k+1]) with k = (c-1)/2 in Fix(phi)
  std::vector<std::uint64_t> g;    // even c: state at k = (c-2)/2 in Fix(g)
};
SymmetryCenters symmetry_centers(const LatticeState& seed, const RotationParams& p,
                                 const Budget& b = {});

/// theta/pi is rational exactly for lambda in {0, +-1, +-sqrt2, +-sqrt3,
/// (+-1 +- sqrt5)/2}.
bool theta_over_pi_rational(const RotationParams& p);

/// p csc(theta) / (2 |sin(p theta / 2)|), inflated by 1 + 1e-9. Every state of
/// a period-p orbit has lattice norm at most this value. Throws DomainError
/// when theta/pi is rational or pd == 0.
double period_p_ball_radius(std::uint64_t pd, const RotationParams& p);

/// A rational upper bound on radius^2 for an exact ball scan.
Rational radius_sq_upper(double radius);

struct PeriodEnumeration {
  std::uint64_t period = 0;
  Rational radius_sq;
  std::uint64_t seeds_scanned = 0;
  /// Canonical representatives, sorted.
  std::vector<LatticeState> representatives;
  /// Seeds whose search ran out of budget before pd steps.
  std::vector<LatticeState> unresolved_seeds;
  bool complete = true;
};

/// All orbits of exact period pd meeting the ball N <= radius_sq.
PeriodEnumeration enumerate_period_in_ball(std::uint64_t pd, const Rational& radius_sq,
                                           const RotationParams& p, const Budget& b = {},
                                           unsigned threads = 1);

/// All period-pd orbits; complete because they all lie in the rho(pd) ball.
PeriodEnumeration enumerate_orbits_with_period(std::uint64_t pd, const RotationParams& p,
                                               const Budget& b = {}, unsigned threads = 1);

namespace detail {

struct WalkOptions {
  std::uint64_t max_steps = 10'000'000;
  std::optional<Rational> max_norm_sq;
  /// When set, in-box states of a periodic orbit are appended to `recorded`.
  const ScanBox* record_box = nullptr;
  std::vector<State64>* recorded = nullptr;
};

struct WalkResult {
  bool periodic = false;
  std::uint64_t period = 0;
  std::uint64_t steps_used = 0;
  LatticeState canonical;
  FieldElement max_norm_sq;
  std::uint64_t phi_hits = 0;
  std::uint64_t g_hits = 0;
  std::vector<std::uint64_t> phi_centers;  // first few only
  std::vector<std::uint64_t> g_centers;
};

WalkResult walk_orbit(const LatticeState& seed, const RotationParams& p, const WalkOptions& o);
SymmetryClass classify_hits(const WalkResult& w);

}  // namespace detail

}  // namespace drot
