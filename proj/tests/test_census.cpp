// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <set>

#include "doctest.h"
#include "drot/census.hpp"
#include "drot/errors.hpp"
#include "oracles.hpp"

using namespace drot;

namespace {

Rational sq(const Rational& r) { return r * r; }

/// Periodic orbits meeting the ball, by direct iteration from every ball state.
std::map<LatticeState, std::uint64_t> census_oracle(const oracle::Affine& f, long double lambda,
                                                    long double r2, long box) {
  std::map<LatticeState, std::uint64_t> out;
  for (long x = -box; x <= box; ++x)
    for (long y = -box; y <= box; ++y) {
      if (oracle::norm_sq(lambda, x, y) > r2) continue;
      const auto orbit = oracle::orbit(f, {x, y}, 1'000'000);
      LatticeState best(orbit[0].first, orbit[0].second);
      for (const auto& s : orbit) best = std::min(best, LatticeState(s.first, s.second));
      out[best] = orbit.size();
    }
  return out;
}

}  // namespace

TEST_CASE("census of the quarter-turn") {
  const auto r = scan_ball(sq(Rational(5, 2)), RotationParams::parse("rat:0/1"));
  CHECK(r.histogram == std::map<std::uint64_t, std::uint64_t>{{1, 1}, {4, 5}});
  CHECK(r.unresolved.empty());
  CHECK(r.counts.trap_points == 5);
  CHECK(r.bounds.two_floor_R_plus_1 == 5);
  CHECK(r.meta.seeds_scanned == 21);
}

TEST_CASE("census matches direct iteration") {
  const std::vector<std::tuple<const char*, oracle::Affine, long double>> systems{
      {"rat:1/2", {oracle::rat(1, 2), oracle::rat(0)}, 0.5L},
      {"quad:0,1,1,2", {oracle::quad(0, 1, 1, 2), oracle::rat(0)}, std::sqrt(2.0L)},
      {"rat:-6/5", {oracle::rat(-6, 5), oracle::rat(0)}, -1.2L},
  };
  for (const auto& [text, f, lambda] : systems) {
    const auto p = RotationParams::parse(text);
    const auto r = scan_ball(Rational(841, 4), p, {}, {2});
    const auto expected = census_oracle(f, lambda, 841.0L / 4, 60);
    REQUIRE(r.orbit_reps.size() == expected.size());
    for (const auto& o : r.orbit_reps) CHECK(expected.at(o.canonical) == o.period);
    std::uint64_t total = 0;
    for (const auto& [period, n] : r.histogram) total += n;
    CHECK(total == r.orbit_reps.size());
  }
}

TEST_CASE("ball points per orbit add up to the ball") {
  const auto p = RotationParams::parse("quad:1,1,2,5");
  const auto r = scan_ball(Rational(400), p);
  std::uint64_t points = 0;
  for (const auto& o : r.orbit_reps) points += o.ball_points;
  CHECK(points == r.meta.seeds_scanned);
}

TEST_CASE("partitioned scans merge to the full scan") {
  const auto p = RotationParams::parse("rat:1/2", "rat:1/3");
  const Rational r2(900);
  const auto full = scan_ball(r2, p, {}, {1});
  const auto a = scan_ball(r2, p, {}, {1, 0, 3});
  const auto b = scan_ball(r2, p, {}, {2, 1, 3});
  const auto c = scan_ball(r2, p, {}, {1, 2, 3});
  CHECK(merge(merge(a, b), c) == full);
  CHECK(merge(c, merge(b, a)) == full);
  CHECK(merge(full, full) == merge(full, full));
  CHECK_THROWS_AS(merge(full, scan_ball(Rational(100), p)), DomainError);
  CHECK(scan_ball(r2, p, {}, {4}) == full);
}

TEST_CASE("unresolved seeds are reported, not dropped") {
  const auto p = RotationParams::parse("rat:1/2");
  const auto r = scan_ball(Rational(100), p, Budget{5, {}});
  CHECK_FALSE(r.unresolved.empty());
  for (const auto& u : r.unresolved) CHECK(u.steps_used == 5);
  for (const auto& o : r.orbit_reps) CHECK(o.period <= 5);
}

TEST_CASE("symmetric seed streams") {
  const auto half = RotationParams::parse("rat:1/2");
  const auto s = enumerate_symmetric_seeds(Rational(9), half);
  CHECK(s.fix_phi == std::vector<LatticeState>{{-1, -1}, {0, 0}, {1, 1}});
  CHECK(std::find(s.fix_g.begin(), s.fix_g.end(), LatticeState(0, 1)) != s.fix_g.end());
  for (const auto& t : s.fix_g) CHECK(in_fix_g(t, half));
  // Brute force over a box.
  std::uint64_t g = 0;
  for (long x = -10; x <= 10; ++x)
    for (long y = -10; y <= 10; ++y)
      if (in_fix_g(LatticeState(x, y), half) && oracle::norm_sq(0.5L, x, y) <= 9) ++g;
  CHECK(s.fix_g.size() == g);
}

TEST_CASE("stream A closed form") {
  for (auto text : {"rat:1/2", "quad:0,1,1,2", "quad:0,1,1,3", "quad:1,1,2,5", "rat:-3/2"}) {
    const auto p = RotationParams::parse(text);
    for (const Rational r : {Rational(21, 2), Rational(201, 2), Rational(7)}) {
      const auto s = enumerate_symmetric_seeds(sq(r), p);
      CHECK(fix_phi_closed_form(sq(r), p) == s.fix_phi.size());
      const double expect = 2 * std::floor(r.get_d() * p.cos_half_theta()) + 1;
      CHECK(static_cast<double>(s.fix_phi.size()) == expect);
    }
  }
}

TEST_CASE("bookkeeping") {
  const auto p = RotationParams::parse("quad:0,1,1,2");
  const auto bk = verify_bookkeeping(sq(Rational(201, 2)), p);
  CHECK(bk.trap_points == 201);
  CHECK(bk.trap_formula == 201);
  CHECK(bk.stream_a_closed_form);
  CHECK(*bk.stream_a_closed_form == bk.stream_a);
  CHECK(bk.band_symmetry_holds);
  CHECK(bk.lhs_measured > bk.rhs_measured);
  CHECK(bk.gap > 0);
  const auto half = verify_bookkeeping(sq(Rational(201, 2)), RotationParams::parse("rat:1/2"));
  CHECK(half.trap_points == 201);
  const auto shifted = verify_bookkeeping(Rational(400), RotationParams::parse("rat:1/2", "rat:1/1"));
  CHECK_FALSE(shifted.stream_a_closed_form);
}

TEST_CASE("growth of the orbit count") {
  const auto c = growth_check({sq(Rational(51, 2)), sq(Rational(101, 2)), sq(Rational(201, 2))},
                                     RotationParams::parse("rat:1/2"));
  REQUIRE(c.rows.size() == 3);
  CHECK(c.rows[0].periodic_orbits < c.rows[1].periodic_orbits);
  CHECK(c.rows[1].periodic_orbits < c.rows[2].periodic_orbits);
  CHECK(c.doubling_growth);
  CHECK_FALSE(c.poisoned);
  CHECK(c.empirical_C > 0);
}

TEST_CASE("residue statistics") {
  const auto half = RotationParams::parse("rat:1/2");
  const auto e = equidist_stats(Rational(100), half);
  CHECK(e.total == 201);
  CHECK(e.hits == e.hits_by_parity);
  REQUIRE(e.q);
  CHECK(*e.q == 4);
  std::uint64_t sum = 0;
  for (auto n : e.class_counts) sum += n;
  CHECK(sum == 201);
  CHECK(e.observed_cardinality == 2);
  // Direct count: floor(Y/2) even.
  std::uint64_t direct = 0;
  for (long y = -100; y <= 100; ++y) {
    const long f = static_cast<long>(std::floor(y / 2.0));
    direct += (f % 2 == 0);
  }
  CHECK(e.hits == direct);
  const auto root2 = equidist_stats(Rational(1000), RotationParams::parse("quad:0,1,1,2", "rat:1/3"));
  CHECK(root2.hits == root2.hits_by_parity);
  CHECK_FALSE(root2.q);
}

TEST_CASE("radius from its square") {
  CHECK(radius_from_sq(Rational(441, 4)) == Rational(21, 2));
  const Rational r = radius_from_sq(Rational(2));
  CHECK(std::fabs(r.get_d() - std::sqrt(2.0)) < 1e-11);
  CHECK(r * r <= Rational(2));
}
