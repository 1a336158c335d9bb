// SPDX-License-Identifier: Apache-2.0
#pragma once

// Whole-region experiments: ball scans with period histograms, symmetric
// seed streams, the counting bookkeeping of the infinitude argument, growth
// of the number of periodic orbits with R, and residue-class statistics.
//
// Reports are plain values. Scans over disjoint seed partitions merge into
// the full-region report, and nothing in a report depends on thread count.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "drot/dynamics.hpp"
#include "drot/exact.hpp"
#include "drot/geometry.hpp"
#include "drot/orbits.hpp"

namespace drot {

struct OrbitRecord {
  LatticeState canonical;
  std::uint64_t period = 0;
  SymmetryClass symmetry = SymmetryClass::asymmetric;
  /// Orbit states inside the scanned ball.
  std::uint64_t ball_points = 0;
  FieldElement max_norm_sq;

  friend bool operator==(const OrbitRecord&, const OrbitRecord&) = default;
};

struct UnresolvedRecord {
  LatticeState seed;
  std::uint64_t steps_used = 0;
  FieldElement max_norm_sq_seen;
  /// Membership of the seed itself in Fix(phi) / Fix(g).
  SymmetryClass seed_class = SymmetryClass::asymmetric;

  friend bool operator==(const UnresolvedRecord&, const UnresolvedRecord&) = default;
};

struct CensusCounts {
  std::uint64_t fix_phi_seeds = 0;
  std::uint64_t fix_g_seeds = 0;
  std::uint64_t trap_points = 0;
  std::uint64_t trap_points_mod_reflection = 0;

  friend bool operator==(const CensusCounts&, const CensusCounts&) = default;
};

struct CensusBounds {
  double two_R_cos_half_theta = 0;
  double R_plus_R_cos_half_theta = 0;
  BigInt two_floor_R_plus_1 = 0;

  friend bool operator==(const CensusBounds&, const CensusBounds&) = default;
};

struct CensusMeta {
  std::uint64_t seeds_scanned = 0;
  std::uint64_t max_steps = 0;
  std::optional<Rational> max_norm_sq;
  bool shifted = false;

  friend bool operator==(const CensusMeta&, const CensusMeta&) = default;
};

struct CensusReport {
  RotationParams params;
  Rational radius_sq;
  std::map<std::uint64_t, std::uint64_t> histogram{};
  /// Sorted by canonical state.
  std::vector<OrbitRecord> orbit_reps{};
  /// Sorted by seed.
  std::vector<UnresolvedRecord> unresolved{};
  CensusCounts counts{};
  CensusBounds bounds{};
  /// Distinct periodic orbits divided by R.
  Rational empirical_C{};
  CensusMeta meta{};

  friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

struct ScanOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  /// Restrict the scan to seeds whose index in (x, y) order is
  /// congruent to part_index modulo part_count.
  std::size_t part_index = 0;
  std::size_t part_count = 1;
};

CensusReport scan_ball(const Rational& radius_sq, const RotationParams& p, const Budget& b = {},
                       const ScanOptions& opts = {});

/// Union of two partial scans of the same region. Throws DomainError when
/// the reports describe different systems, radii or budgets.
CensusReport merge(const CensusReport& a, const CensusReport& b);

struct SymmetricSeeds {
  std::vector<LatticeState> fix_phi;  // (x, x) in the ball
  std::vector<LatticeState> fix_g;    // Fix(g) states in the ball
};

SymmetricSeeds enumerate_symmetric_seeds(const Rational& radius_sq, const RotationParams& p);

/// 2 floor(R cos(theta/2)) + 1, decided exactly from R^2 (2 - lambda)/4.
BigInt fix_phi_closed_form(const Rational& radius_sq, const RotationParams& p);

struct Bookkeeping {
  Rational radius_sq;
  double radius = 0;
  double cos_half_theta = 0;

  std::uint64_t stream_a = 0;
  /// Present for eta = 0 only.
  std::optional<BigInt> stream_a_closed_form;
  std::uint64_t stream_b = 0;

  // The widened band -1 <= 2x + lambda y + eta < 1 and its negative half.
  std::uint64_t band2_states = 0;
  std::uint64_t band_negative = 0;
  /// band_negative == stream_b - 1, which the point reflection guarantees
  /// for irrational lambda and eta = 0.
  bool band_symmetry_holds = false;

  std::uint64_t trap_points = 0;
  BigInt trap_formula = 0;  // 2 floor(R) + 1
  ReflectionCount reflection;

  // Leading terms of the two sides of the counting inequality.
  double lhs = 0;  // 2 R cos(theta/2) + R
  double rhs = 0;  // R + R cos(theta/2)
  double gap = 0;
  // The same with measured counts.
  std::int64_t lhs_measured = 0;  // |A| + |B|
  std::int64_t rhs_measured = 0;  // trap classes mod Phi
  std::int64_t gap_measured = 0;

  // Residuals standing in for the proof's unspecified constants.
  double residual_fix_phi = 0;     // |A| - 2 R cos(theta/2)
  double residual_fix_g = 0;       // |B| - R
  double residual_trap = 0;        // trap points - 2R
  double residual_reflection = 0;  // classes - (R + R cos(theta/2))
};

Bookkeeping verify_bookkeeping(const Rational& radius_sq, const RotationParams& p,
                               unsigned threads = 0);

struct GrowthRow {
  Rational radius_sq;
  double radius = 0;
  std::uint64_t periodic_orbits = 0;
  std::uint64_t unresolved_seeds = 0;
  double ratio = 0;  // periodic_orbits / R
};

struct GrowthCheck {
  std::vector<GrowthRow> rows;
  double empirical_C = 0;  // min ratio over rows
  /// count(R2) > count(R1) whenever R2 >= 2 R1.
  bool doubling_growth = true;
  /// Some radius had unresolved seeds, so its count is a lower bound only.
  bool poisoned = false;
};

GrowthCheck growth_check(const std::vector<Rational>& radii_sq, const RotationParams& p,
                                 const Budget& b = {}, unsigned threads = 0);

struct EquidistStats {
  BigInt y_limit = 0;  // Y ranges over [-y_limit, y_limit]
  std::uint64_t total = 0;
  /// Y with (lambda Y / 2 mod 1) in [-eta/2, (1 - eta)/2) mod 1.
  std::uint64_t hits = 0;
  double fraction = 0;
  /// Same count via the parity of floor(lambda Y + eta); must agree.
  std::uint64_t hits_by_parity = 0;
  /// For rational lambda with lambda/2 = a/q in lowest terms.
  std::optional<std::uint64_t> q;
  std::vector<std::uint64_t> class_counts;
  std::vector<double> class_frequency;
  double max_class_deviation = 0;  // max |frequency - 1/q|
  /// Number of residues i/q inside the interval.
  std::uint64_t observed_cardinality = 0;
};

EquidistStats equidist_stats(const Rational& radius, const RotationParams& p);

/// Exact R when R^2 is a rational square, else a 1e-12-close rational.
Rational radius_from_sq(const Rational& radius_sq);

}  // namespace drot
