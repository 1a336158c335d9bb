// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one line per criterion, non-zero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "drot/census.hpp"
#include "drot/geometry.hpp"
#include "drot/orbits.hpp"
#include "drot/report_io.hpp"

using namespace drot;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Rational sq(const Rational& r) { return r * r; }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    pass = false;
    failures_text << " [" << why << "]";
  }
  std::ostringstream failures_text;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double dt = seconds_since(t0);
  std::printf("%s [%2d] %s (%.2f s) %s\n", o.pass ? "PASS" : "FAIL", id, title, dt,
              (o.detail.str() + o.failures_text.str()).c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

const std::vector<const char*> kFourLambdas{"rat:1/2", "quad:0,1,1,2", "quad:0,1,1,3", "quad:1,1,2,5"};

void trap_exactness(Outcome& o) {
  for (const char* l : kFourLambdas) {
    const auto p = RotationParams::parse(l);
    for (const Rational R : {Rational(11, 2), Rational(101, 2), Rational(1001, 2)}) {
      const auto t0 = Clock::now();
      const std::uint64_t n = trap_count({sq(R)}, p, 0);
      const double dt = seconds_since(t0);
      const BigInt expected = 2 * floor_radius(sq(R)) + 1;
      if (BigInt(static_cast<unsigned long>(n)) != expected)
        o.fail(std::string(l) + " R=" + R.get_str() + " count " + std::to_string(n));
      if (dt >= 10) o.fail(std::string(l) + " R=" + R.get_str() + " took " + std::to_string(dt) + " s");
    }
  }
  o.detail << "12 (lambda, R) pairs";
}

void stream_a(Outcome& o) {
  for (const char* l : kFourLambdas) {
    const auto p = RotationParams::parse(l);
    for (const Rational R : {Rational(21, 2), Rational(201, 2), Rational(2001, 2)}) {
      const auto seeds = enumerate_symmetric_seeds(sq(R), p);
      const BigInt closed = fix_phi_closed_form(sq(R), p);
      if (BigInt(static_cast<unsigned long>(seeds.fix_phi.size())) != closed)
        o.fail(std::string(l) + " R=" + R.get_str() + " enumerated " + std::to_string(seeds.fix_phi.size()) +
               " closed form " + closed.get_str());
      // The closed form must also match 2 floor(R cos(theta/2)) + 1 evaluated in floating point
      // wherever the float value is not near an integer.
      const double v = R.get_d() * p.cos_half_theta();
      if (std::fabs(v - std::round(v)) > 1e-9 && closed != 2 * static_cast<long>(std::floor(v)) + 1)
        o.fail(std::string(l) + " R=" + R.get_str() + " float formula disagrees");
    }
  }
  o.detail << "12 (lambda, R) pairs";
}

void conjecture_consistency(Outcome& o) {
  const std::vector<const char*> lambdas{"rat:0/1",        "rat:1/1",        "rat:-1/1",       "quad:0,1,1,2",
                                         "quad:0,-1,1,2",  "quad:0,1,1,3",   "quad:0,-1,1,3",  "quad:1,1,2,5",
                                         "quad:1,-1,2,5",  "quad:-1,1,2,5",  "quad:-1,-1,2,5"};
  std::uint64_t orbits = 0;
  for (const char* l : lambdas) {
    const auto r = scan_ball(sq(Rational(101, 2)), RotationParams::parse(l), Budget{10'000'000, {}}, {0});
    orbits += r.orbit_reps.size();
    if (!r.unresolved.empty()) o.fail(std::string(l) + ": " + std::to_string(r.unresolved.size()) + " unresolved");
  }
  o.detail << lambdas.size() << " lambdas, " << orbits << " orbits, R=50.5";
}

void known_orbits(Outcome& o) {
  struct Known {
    const char* lambda;
    const char* eta;
    LatticeState seed;
    std::uint64_t period;
    std::optional<SymmetryClass> cls;
  };
  const std::vector<Known> known{
      {"rat:0/1", "rat:0/1", {1, 0}, 4, std::nullopt},
      {"rat:1/1", "rat:0/1", {1, 0}, 3, SymmetryClass::asymmetric},
      {"rat:1/2", "rat:0/1", {1, 0}, 7, std::nullopt},
      {"quad:1,1,2,5", "rat:1/1", {-1, 4}, 5, SymmetryClass::asymmetric},
  };
  for (const auto& k : known) {
    const auto p = RotationParams::parse(k.lambda, k.eta);
    const auto r = detect_period(k.seed, p);
    if (!r.periodic() || r.period != k.period)
      o.fail(std::string(k.lambda) + " seed " + k.seed.to_string() + " period " + std::to_string(r.period));
    if (k.cls && classify_symmetry(k.seed, p) != *k.cls)
      o.fail(std::string(k.lambda) + " seed " + k.seed.to_string() + " class " +
             std::string(to_string(classify_symmetry(k.seed, p))));
  }
  o.detail << known.size() << " orbits";
}

void symmetric_shortcut(Outcome& o) {
  const auto t0 = Clock::now();
  std::uint64_t compared = 0;
  for (const char* l : {"rat:1/2", "quad:0,1,1,2", "quad:1,1,2,5"}) {
    const auto p = RotationParams::parse(l);
    const auto seeds = enumerate_symmetric_seeds(sq(Rational(61, 2)), p);
    for (const auto* list : {&seeds.fix_phi, &seeds.fix_g}) {
      for (const auto& s : *list) {
        const auto a = detect_period_symmetric(s, p);
        const auto b = detect_period(s, p);
        ++compared;
        if (a.periodic() != b.periodic() || a.period != b.period || a.canonical != b.canonical)
          o.fail(std::string(l) + " seed " + s.to_string());
      }
    }
  }
  if (seconds_since(t0) >= 60) o.fail("over one minute");
  o.detail << compared << " symmetric seeds";
}

void period_completeness(Outcome& o) {
  const auto p = RotationParams::parse("rat:1/2");
  for (std::uint64_t pd = 3; pd <= 8; ++pd) {
    const double rho = period_p_ball_radius(pd, p);
    const auto inside = enumerate_orbits_with_period(pd, p, {}, 0);
    const auto control = enumerate_period_in_ball(pd, radius_sq_upper(2 * rho), p, {}, 0);
    if (!inside.complete || !control.complete) o.fail("p=" + std::to_string(pd) + " incomplete scan");
    if (inside.representatives != control.representatives)
      o.fail("p=" + std::to_string(pd) + " sets differ: " + std::to_string(inside.representatives.size()) +
             " vs " + std::to_string(control.representatives.size()));
    o.detail << "p=" << pd << ":" << inside.representatives.size() << " ";
  }
}

void reversibility(Outcome& o) {
  const std::vector<std::pair<const char*, const char*>> systems{
      {"rat:0/1", "rat:0/1"},        {"rat:1/2", "rat:0/1"},         {"rat:-7/4", "rat:1/3"},
      {"quad:0,1,1,2", "rat:0/1"},    {"quad:0,-1,1,3", "rat:1/2"},   {"quad:1,1,2,5", "rat:1/1"},
      {"quad:-1,1,2,5", "quad:0,1,4,5"}, {"quad:1,1,3,7", "rat:0/1"}, {"rat:19/10", "rat:-5/7"},
      {"quad:0,1,2,11", "quad:1,1,2,11"},
  };
  std::mt19937_64 rng(20240601);
  std::uint64_t failures_seen = 0, checked = 0;
  for (const auto& [l, e] : systems) {
    const auto p = RotationParams::parse(l, e);
    for (int i = 0; i < 100'000; ++i) {
      // Magnitudes from 1 to 2^100 so both the 64-bit and the big-integer paths are hit.
      const int bits = 1 + static_cast<int>(rng() % 100);
      auto draw = [&] {
        BigInt v = BigInt(static_cast<unsigned long>(rng()));
        v <<= 64;
        v += BigInt(static_cast<unsigned long>(rng()));
        v >>= (128 - bits);
        return (rng() & 1) ? v : BigInt(-v);
      };
      const LatticeState s(draw(), draw());
      const LatticeState f = step(s, p);
      const LatticeState gs = involution_g(s, p);
      bool ok = involution_phi(involution_phi(s)) == s;
      ok = ok && involution_g(gs, p) == s;
      ok = ok && involution_phi(gs) == f;
      ok = ok && step_back(f, p) == s;
      ok = ok && involution_phi(step_back(s, p)) == step(involution_phi(s), p);
      ++checked;
      if (!ok) {
        if (failures_seen++ < 5) o.fail(std::string(l) + " eta " + e + " state " + s.to_string());
      }
    }
  }
  if (failures_seen > 0) o.fail(std::to_string(failures_seen) + " failing states");
  o.detail << checked << " states x 5 laws, " << systems.size() << " systems";
}

void growth(Outcome& o) {
  const std::vector<Rational> radii{sq(Rational(51, 2)), sq(Rational(101, 2)), sq(Rational(201, 2))};
  for (auto [l, e] : {std::pair{"rat:1/2", "rat:0/1"}, std::pair{"quad:1,1,2,5", "rat:1/1"}}) {
    const auto c = growth_check(radii, RotationParams::parse(l, e), {}, 0);
    const auto& r = c.rows;
    o.detail << l << "/" << e << ": " << r[0].periodic_orbits << "," << r[1].periodic_orbits << ","
             << r[2].periodic_orbits << " C=" << c.empirical_C << "  ";
    if (!(r[0].periodic_orbits < r[1].periodic_orbits && r[1].periodic_orbits < r[2].periodic_orbits))
      o.fail(std::string(l) + " counts not strictly increasing");
    if (static_cast<double>(r[2].periodic_orbits) < 1.5 * static_cast<double>(r[1].periodic_orbits))
      o.fail(std::string(l) + " ratio below 1.5");
    if (!(c.empirical_C > 0)) o.fail(std::string(l) + " empirical C not positive");
    if (c.poisoned) o.fail(std::string(l) + " unresolved seeds present");
  }
}

void equidistribution(Outcome& o) {
  auto t0 = Clock::now();
  const auto half = equidist_stats(Rational(10000), RotationParams::parse("rat:1/2"));
  const double t_half = seconds_since(t0);
  if (!half.q || *half.q != 4) o.fail("q != 4");
  if (half.max_class_deviation > 1e-3) o.fail("class deviation " + std::to_string(half.max_class_deviation));
  if (t_half >= 10) o.fail("lambda=1/2 took " + std::to_string(t_half) + " s");
  t0 = Clock::now();
  const auto root2 = equidist_stats(Rational(10000), RotationParams::parse("quad:0,1,1,2"));
  const double t_root2 = seconds_since(t0);
  if (std::fabs(root2.fraction - 0.5) > 1e-2) o.fail("UD fraction " + std::to_string(root2.fraction));
  if (root2.hits != root2.hits_by_parity) o.fail("parity count disagrees");
  if (t_root2 >= 10) o.fail("lambda=sqrt2 took " + std::to_string(t_root2) + " s");
  o.detail << "max class deviation " << half.max_class_deviation << ", UD fraction " << root2.fraction;
}

void determinism(Outcome& o) {
  const auto p = RotationParams::parse("rat:1/2");
  const Rational r2 = sq(Rational(201, 2));
  const std::string one = dump(to_json(scan_ball(r2, p, {}, {1})));
  const std::string eight = dump(to_json(scan_ball(r2, p, {}, {8})));
  if (one != eight) o.fail("1-thread and 8-thread reports differ");
  const auto a = scan_ball(r2, p, {}, {8, 0, 2});
  const auto b = scan_ball(r2, p, {}, {1, 1, 2});
  if (dump(to_json(merge(a, b))) != one) o.fail("merged partial scans differ");
  o.detail << one.size() << " bytes";
}

}  // namespace

int main() {
  criterion(1, "trap count equals 2 floor(R) + 1", trap_exactness);
  criterion(2, "Fix(phi) seed count: closed form vs enumeration", stream_a);
  criterion(3, "no unresolved seeds at the eleven proven lambdas", conjecture_consistency);
  criterion(4, "known small orbits", known_orbits);
  criterion(5, "symmetric shortcut equals plain detection", symmetric_shortcut);
  criterion(6, "period-p orbits all lie within rho(p)", period_completeness);
  criterion(7, "involution and reversibility laws", reversibility);
  criterion(8, "growth of the periodic orbit count", growth);
  criterion(9, "residue-class frequencies", equidistribution);
  criterion(10, "thread-count independence and merge", determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
