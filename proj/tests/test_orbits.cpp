// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <set>

#include "doctest.h"
#include "drot/errors.hpp"
#include "drot/geometry.hpp"
#include "drot/orbits.hpp"
#include "oracles.hpp"

using namespace drot;

namespace {

LatticeState canonical_oracle(const std::vector<oracle::State>& orbit) {
  LatticeState best(orbit[0].first, orbit[0].second);
  for (const auto& s : orbit) best = std::min(best, LatticeState(s.first, s.second));
  return best;
}

}  // namespace

TEST_CASE("the period-7 orbit at lambda 1/2") {
  const auto p = RotationParams::parse("rat:1/2");
  const auto r = detect_period(LatticeState(1, 0), p);
  REQUIRE(r.periodic());
  CHECK(r.period == 7);
  CHECK(r.canonical == LatticeState(-1, 0));
  const std::vector<LatticeState> expected{{1, 0}, {0, -1}, {-1, 1}, {1, 1}, {1, -1}, {-1, 0}, {0, 1}};
  LatticeState s(1, 0);
  for (const auto& e : expected) {
    CHECK(s == e);
    s = step(s, p);
  }
  CHECK(s == LatticeState(1, 0));
}

TEST_CASE("small orbits") {
  CHECK(detect_period(LatticeState(1, 0), RotationParams::parse("rat:0/1")).period == 4);
  const auto one = RotationParams::parse("rat:1/1");
  CHECK(detect_period(LatticeState(1, 0), one).period == 3);
  CHECK(classify_symmetry(LatticeState(1, 0), one) == SymmetryClass::asymmetric);
  const auto golden = RotationParams::parse("quad:1,1,2,5", "rat:1/1");
  CHECK(detect_period(LatticeState(-1, 4), golden).period == 5);
  CHECK(classify_symmetry(LatticeState(-1, 4), golden) == SymmetryClass::asymmetric);
  const auto golden0 = RotationParams::parse("quad:1,1,2,5");
  CHECK(detect_period(LatticeState(-5, 3), golden0).period == 5);
  CHECK(classify_symmetry(LatticeState(-5, 3), golden0) == SymmetryClass::asymmetric);
  CHECK(classify_symmetry(LatticeState(1, 0), RotationParams::parse("rat:1/2")) ==
        SymmetryClass::doubly_symmetric);
  CHECK(detect_period(LatticeState(0, 0), RotationParams::parse("quad:0,1,1,2")).period == 1);
}

TEST_CASE("budget exhaustion is unresolved") {
  const auto p = RotationParams::parse("rat:1/2");
  const auto r = detect_period(LatticeState(1, 0), p, Budget{3, {}});
  CHECK_FALSE(r.periodic());
  CHECK(r.steps_used == 3);
  CHECK_FALSE(r.canonical);
  const auto capped = detect_period(LatticeState(1, 0), p, Budget{100, Rational(1)});
  CHECK_FALSE(capped.periodic());
  CHECK_THROWS_AS(classify_symmetry(LatticeState(1, 0), p, Budget{3, {}}), PreconditionError);
}

TEST_CASE("symmetric detection") {
  const auto half = RotationParams::parse("rat:1/2");
  const auto r = detect_period_symmetric(LatticeState(1, 1), half);
  CHECK(r.period == 7);
  CHECK(r.canonical == LatticeState(-1, 0));
  // Half-orbit: the first later fixed-set visit is (0,1) after 3 steps.
  CHECK(r.steps_used == 3);
  CHECK(detect_period_symmetric(LatticeState(2, 2), RotationParams::parse("rat:0/1")).period == 4);
  CHECK(detect_period_symmetric(LatticeState(0, 0), half).period == 1);
  CHECK_THROWS_AS(detect_period_symmetric(LatticeState(5, 0), half), PreconditionError);
}

TEST_CASE("symmetry centres") {
  const auto half = RotationParams::parse("rat:1/2");
  const auto c = symmetry_centers(LatticeState(1, 1), half);
  CHECK(c.period == 7);
  // (1,1) is in Fix(phi) at index 0; (0,1) in Fix(g) at index 3.
  CHECK(std::find(c.phi.begin(), c.phi.end(), 1u) != c.phi.end());
  CHECK(std::find(c.g.begin(), c.g.end(), 8u) != c.g.end());
  for (auto x : c.phi) CHECK(x % 2 == 1);
  for (auto x : c.g) CHECK(x % 2 == 0);
}

TEST_CASE("period and canonical form agree with direct iteration") {
  const std::vector<std::pair<const char*, oracle::Affine>> systems{
      {"rat:1/2", {oracle::rat(1, 2), oracle::rat(0)}},
      {"quad:0,1,1,2", {oracle::quad(0, 1, 1, 2), oracle::rat(0)}},
      {"quad:1,1,2,5", {oracle::quad(1, 1, 2, 5), oracle::rat(1)}},
      {"rat:-5/4", {oracle::rat(-5, 4), oracle::rat(0)}},
  };
  for (const auto& [text, f] : systems) {
    const auto p = RotationParams::parse(text, f.eta.d == 0 && f.eta.a == 1 ? "rat:1/1" : "rat:0/1");
    for (long x = -12; x <= 12; x += 3) {
      for (long y = -12; y <= 12; y += 2) {
        const oracle::State seed{x, y};
        const auto expected = oracle::period(f, seed, 200000);
        REQUIRE(expected);
        const auto r = detect_period(LatticeState(x, y), p);
        CHECK(r.period == *expected);
        CHECK(r.canonical == canonical_oracle(oracle::orbit(f, seed, 200000)));
        if (in_fix_phi(LatticeState(x, y)) || in_fix_g(LatticeState(x, y), p))
          CHECK(detect_period_symmetric(LatticeState(x, y), p).period == *expected);
      }
    }
  }
}

TEST_CASE("classification matches fixed-set visits") {
  const auto p = RotationParams::parse("quad:0,1,1,3");
  for (long x = -8; x <= 8; ++x) {
    for (long y = -8; y <= 8; ++y) {
      const LatticeState seed(x, y);
      const auto r = detect_period(seed, p);
      REQUIRE(r.periodic());
      std::uint64_t phi = 0, g = 0;
      LatticeState s = seed;
      for (std::uint64_t i = 0; i < r.period; ++i) {
        phi += in_fix_phi(s);
        g += in_fix_g(s, p);
        s = step(s, p);
      }
      const auto c = classify_symmetry(seed, p);
      CHECK((c == SymmetryClass::asymmetric) == (phi + g == 0));
      if (phi + g > 0) {
        CHECK(c == SymmetryClass::doubly_symmetric);
        CHECK(phi + g == 2);  // a symmetric orbit meets the fixed sets twice
      }
    }
  }
}

TEST_CASE("theta/pi rationality and the period bound") {
  for (auto t : {"rat:0/1", "rat:1/1", "rat:-1/1", "quad:0,1,1,2", "quad:0,-1,1,3", "quad:1,1,2,5",
                 "quad:-1,1,2,5", "quad:1,-1,2,5", "quad:-1,-1,2,5"})
    CHECK(theta_over_pi_rational(RotationParams::parse(t)));
  for (auto t : {"rat:1/2", "rat:-3/2", "quad:0,1,2,5", "quad:1,1,3,2"})
    CHECK_FALSE(theta_over_pi_rational(RotationParams::parse(t)));
  CHECK_THROWS_AS(period_p_ball_radius(5, RotationParams::parse("rat:0/1")), DomainError);
  CHECK_THROWS_AS(period_p_ball_radius(0, RotationParams::parse("rat:1/2")), DomainError);
  const auto half = RotationParams::parse("rat:1/2");
  const double theta = std::acos(-0.25);
  for (std::uint64_t pd = 1; pd <= 12; ++pd) {
    const double expected = pd / std::sin(theta) / (2 * std::fabs(std::sin(pd * theta / 2)));
    CHECK(period_p_ball_radius(pd, half) == doctest::Approx(expected).epsilon(1e-8));
    CHECK(period_p_ball_radius(pd, half) >= expected);
  }
  const Rational up = radius_sq_upper(2.5);
  CHECK(up >= Rational(25, 4));
  CHECK(up.get_d() < 6.26);
}

TEST_CASE("enumeration of small periods") {
  const auto half = RotationParams::parse("rat:1/2");
  const auto one = enumerate_orbits_with_period(1, half);
  REQUIRE(one.representatives.size() == 1);
  CHECK(one.representatives[0] == LatticeState(0, 0));
  CHECK(one.complete);
  const auto seven = enumerate_orbits_with_period(7, half);
  CHECK(std::find(seven.representatives.begin(), seven.representatives.end(), LatticeState(-1, 0)) !=
        seven.representatives.end());
  CHECK_THROWS_AS(enumerate_orbits_with_period(4, RotationParams::parse("rat:0/1")), DomainError);
}

TEST_CASE("ball enumeration against a brute-force scan") {
  const auto half = RotationParams::parse("rat:1/2");
  const oracle::Affine f{oracle::rat(1, 2), oracle::rat(0)};
  const Rational radius_sq(100);
  for (std::uint64_t pd = 1; pd <= 12; ++pd) {
    std::set<LatticeState> expected;
    for (long x = -15; x <= 15; ++x) {
      for (long y = -15; y <= 15; ++y) {
        if (oracle::norm_sq(0.5L, x, y) > 100.0L + 1e-9L) continue;
        const auto orbit = oracle::orbit(f, {x, y}, pd + 1);
        if (orbit.size() == pd && oracle::step(f, orbit.back()) == orbit.front())
          expected.insert(canonical_oracle(orbit));
      }
    }
    const auto e = enumerate_period_in_ball(pd, radius_sq, half);
    CHECK(std::set<LatticeState>(e.representatives.begin(), e.representatives.end()) == expected);
    CHECK(std::is_sorted(e.representatives.begin(), e.representatives.end()));
  }
}
