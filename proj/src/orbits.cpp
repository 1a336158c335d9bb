// SPDX-License-Identifier: Apache-2.0
#include "drot/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "drot/detail/parallel.hpp"
#include "drot/detail/visited.hpp"
#include "drot/errors.hpp"

namespace drot {

namespace {

using detail::State64;

constexpr std::size_t kKeptCenters = 4;

long double as_ld(std::int64_t v) { return static_cast<long double>(v); }
long double as_ld(const BigInt& v) { return v.get_d(); }
BigInt as_big(std::int64_t v) { return BigInt(static_cast<long>(v)); }
const BigInt& as_big(const BigInt& v) { return v; }

std::optional<std::int64_t> floor_arg_of(const RotationParams& p, std::int64_t x, std::int64_t y) {
  return detail::floor_arg_fast(p, x, y);
}
std::optional<BigInt> floor_arg_of(const RotationParams& p, const BigInt& x, const BigInt& y) {
  return p.floor_arg().floor(x, y);
}

// Exact test N(x, y) > cap using the natural norm numerator.
class NormCap {
 public:
  NormCap(const RotationParams& p, const std::optional<Rational>& cap) : p_(p) {
    if (cap) {
      scaled_ = FieldElement(*cap) * p.sin_sq_theta();
      approx_ = scaled_->to_long_double();
    }
  }
  template <class Int>
  bool exceeded(const Int& x, const Int& y, long double approx_numerator) const {
    if (!scaled_ || approx_numerator < approx_ * (1.0L - 1e-9L)) return false;
    FieldElement n = p_.natural_norm_numerator().value(as_big(x), as_big(y));
    return sign(n - *scaled_) > 0;
  }

 private:
  const RotationParams& p_;
  std::optional<FieldElement> scaled_;
  long double approx_ = 0;
};

template <class Int>
std::optional<detail::WalkResult> walk_impl(const Int& x0, const Int& y0, const RotationParams& p,
                                            const detail::WalkOptions& o) {
  const auto& nform = p.natural_norm_numerator();
  const NormCap cap(p, o.max_norm_sq);
  const bool recording = o.record_box != nullptr && o.recorded != nullptr;
  if (recording) o.recorded->clear();

  auto record = [&](const Int& x, const Int& y) {
    if constexpr (std::is_same_v<Int, std::int64_t>) {
      if (o.record_box->contains(x, y)) o.recorded->push_back({x, y});
    } else {
      if (x.fits_slong_p() && y.fits_slong_p() && o.record_box->contains(x.get_si(), y.get_si()))
        o.recorded->push_back({x.get_si(), y.get_si()});
    }
  };

  detail::WalkResult r;
  Int x = x0, y = y0;
  Int cx = x0, cy = y0;
  Int mx = x0, my = y0;
  long double best = nform.approx(as_ld(x0), as_ld(y0));
  if (recording) record(x0, y0);

  std::uint64_t k = 0;
  for (;;) {
    // State k is (a[k], a[k+1]).
    if (x == y) {
      ++r.phi_hits;
      if (r.phi_centers.size() < kKeptCenters) r.phi_centers.push_back(2 * k + 1);
    }
    auto f = floor_arg_of(p, x, y);
    if (!f) return std::nullopt;
    Int z = -*f;
    if (z == x) {
      ++r.g_hits;
      if (r.g_centers.size() < kKeptCenters) r.g_centers.push_back(2 * k + 2);
    }
    x = y;
    y = z;
    ++k;
    if (x == x0 && y == y0) {
      r.periodic = true;
      r.period = k;
      break;
    }
    if (x < cx || (x == cx && y < cy)) {
      cx = x;
      cy = y;
    }
    const long double v = nform.approx(as_ld(x), as_ld(y));
    if (v > best) {
      best = v;
      mx = x;
      my = y;
    }
    if (cap.exceeded(x, y, v)) break;
    if (recording) record(x, y);
    if (k >= o.max_steps) break;
  }
  r.steps_used = k;
  r.canonical = LatticeState(as_big(cx), as_big(cy));
  r.max_norm_sq = nform.value(as_big(mx), as_big(my)) / p.sin_sq_theta();
  if (!r.periodic && recording) o.recorded->clear();
  return r;
}

template <class Int>
std::optional<OrbitResult> symmetric_impl(const Int& x0, const Int& y0, const RotationParams& p,
                                          const Budget& b) {
  const auto& nform = p.natural_norm_numerator();
  const NormCap cap(p, b.max_norm_sq);
  auto f0 = floor_arg_of(p, x0, y0);
  if (!f0) return std::nullopt;
  Int z = -*f0;
  const bool seed_phi = x0 == y0;
  const bool seed_g = z == x0;
  if (!seed_phi && !seed_g)
    throw PreconditionError("seed " + LatticeState(as_big(x0), as_big(y0)).to_string() +
                            " is in neither Fix(phi) nor Fix(g)");

  OrbitResult out;
  Int x = x0, y = y0;
  Int mx = x0, my = y0;
  long double best = nform.approx(as_ld(x0), as_ld(y0));
  // Orbit states are the forward half plus their mirror images under phi.
  Int cx = std::min(x0, y0), cy = std::max(x0, y0);
  auto offer = [&](const Int& a, const Int& c) {
    if (a < cx || (a == cx && c < cy)) {
      cx = a;
      cy = c;
    }
  };
  auto finish = [&](std::uint64_t period, std::uint64_t steps) {
    out.outcome = Outcome::periodic;
    out.period = period;
    out.steps_used = steps;
    out.canonical = LatticeState(as_big(cx), as_big(cy));
  };

  if (seed_phi && seed_g) {
    finish(1, 1);
  } else {
    std::uint64_t n = 0;
    for (;;) {
      x = y;
      y = z;
      ++n;
      if (x == x0 && y == y0) {
        finish(n, n);
        break;
      }
      offer(x, y);
      offer(y, x);
      const long double v = nform.approx(as_ld(x), as_ld(y));
      if (v > best) {
        best = v;
        mx = x;
        my = y;
      }
      if (cap.exceeded(x, y, v)) {
        out.steps_used = n;
        break;
      }
      const bool hit_phi = x == y;
      auto f = floor_arg_of(p, x, y);
      if (!f) return std::nullopt;
      z = -*f;
      const bool hit_g = z == x;
      if (hit_phi || hit_g) {
        // Centres are c = 1 (seed in Fix(phi)) or 2 (Fix(g)) and 2n+1 / 2n+2.
        const std::uint64_t c_seed = seed_phi ? 1 : 2;
        const std::uint64_t c_hit = hit_phi ? 2 * n + 1 : 2 * n + 2;
        finish(c_hit - c_seed, n);
        break;
      }
      if (n >= b.max_steps) {
        out.steps_used = n;
        break;
      }
    }
  }
  out.max_norm_sq_seen = nform.value(as_big(mx), as_big(my)) / p.sin_sq_theta();
  return out;
}

detail::WalkOptions options_from(const Budget& b) {
  detail::WalkOptions o;
  o.max_steps = b.max_steps;
  o.max_norm_sq = b.max_norm_sq;
  return o;
}

}  // namespace

namespace detail {

WalkResult walk_orbit(const LatticeState& seed, const RotationParams& p, const WalkOptions& o) {
  if (o.max_steps < 1) throw DomainError("budget max_steps must be >= 1");
  if (seed.fits_int64()) {
    const std::int64_t x = seed.x.get_si();
    const std::int64_t y = seed.y.get_si();
    if (std::abs(x) <= kFastLimit && std::abs(y) <= kFastLimit) {
      if (auto r = walk_impl<std::int64_t>(x, y, p, o)) return *r;
    }
  }
  return *walk_impl<BigInt>(seed.x, seed.y, p, o);
}

SymmetryClass classify_hits(const WalkResult& w) {
  if ((w.phi_hits > 0 && w.g_hits > 0) || w.phi_hits >= 2 || w.g_hits >= 2)
    return SymmetryClass::doubly_symmetric;
  if (w.phi_hits == 1) return SymmetryClass::phi_symmetric;
  if (w.g_hits == 1) return SymmetryClass::g_symmetric;
  return SymmetryClass::asymmetric;
}

}  // namespace detail

std::string_view to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::asymmetric: return "asymmetric";
    case SymmetryClass::phi_symmetric: return "phi_symmetric";
    case SymmetryClass::g_symmetric: return "g_symmetric";
    case SymmetryClass::doubly_symmetric: return "doubly_symmetric";
  }
  return "asymmetric";
}

SymmetryClass symmetry_from_string(std::string_view text) {
  for (auto c : {SymmetryClass::asymmetric, SymmetryClass::phi_symmetric, SymmetryClass::g_symmetric,
                 SymmetryClass::doubly_symmetric})
    if (to_string(c) == text) return c;
  throw ParseError("unknown symmetry class '" + std::string(text) + "'");
}

OrbitResult detect_period(const LatticeState& seed, const RotationParams& p, const Budget& b) {
  auto w = detail::walk_orbit(seed, p, options_from(b));
  OrbitResult r;
  r.outcome = w.periodic ? Outcome::periodic : Outcome::unresolved;
  r.period = w.period;
  r.steps_used = w.steps_used;
  r.max_norm_sq_seen = w.max_norm_sq;
  if (w.periodic) r.canonical = w.canonical;
  return r;
}

OrbitResult detect_period_symmetric(const LatticeState& seed, const RotationParams& p,
                                    const Budget& b) {
  if (b.max_steps < 1) throw DomainError("budget max_steps must be >= 1");
  if (seed.fits_int64()) {
    const std::int64_t x = seed.x.get_si();
    const std::int64_t y = seed.y.get_si();
    if (std::abs(x) <= detail::kFastLimit && std::abs(y) <= detail::kFastLimit) {
      if (auto r = symmetric_impl<std::int64_t>(x, y, p, b)) return *r;
    }
  }
  return *symmetric_impl<BigInt>(seed.x, seed.y, p, b);
}

SymmetryClass classify_symmetry(const LatticeState& seed, const RotationParams& p, const Budget& b) {
  auto w = detail::walk_orbit(seed, p, options_from(b));
  if (!w.periodic)
    throw PreconditionError("orbit of " + seed.to_string() + " unresolved after " +
                            std::to_string(w.steps_used) + " steps; refusing to classify");
  return detail::classify_hits(w);
}

SymmetryCenters symmetry_centers(const LatticeState& seed, const RotationParams& p, const Budget& b) {
  auto w = detail::walk_orbit(seed, p, options_from(b));
  if (!w.periodic)
    throw PreconditionError("orbit of " + seed.to_string() + " unresolved");
  return {w.period, w.phi_centers, w.g_centers};
}

bool theta_over_pi_rational(const RotationParams& p) {
  const FieldElement& l = p.lambda().value();
  if (l.is_rational()) return l == 0 || l == 1 || l == -1;
  const FieldElement& l2 = p.lambda_sq();
  if (l2 == 2 || l2 == 3) return true;
  // lambda^2 -+ lambda - 1 = 0 picks out (+-1 +- sqrt5)/2.
  return (l2 - l - 1).is_zero() || (l2 + l - 1).is_zero();
}

double period_p_ball_radius(std::uint64_t pd, const RotationParams& p) {
  if (pd == 0) throw DomainError("period must be positive");
  if (theta_over_pi_rational(p))
    throw DomainError("theta/pi is rational for lambda " + p.lambda().to_string() +
                      "; period-p orbits need not be finite");
  const long double theta = p.theta_ld();
  const long double sin_t = std::sqrt(p.sin_sq_theta().to_long_double());
  const long double s = std::fabs(std::sin(static_cast<long double>(pd) * theta / 2.0L));
  const long double rho = static_cast<long double>(pd) / sin_t / (2.0L * s);
  return static_cast<double>(rho * (1.0L + 1e-9L));
}

Rational radius_sq_upper(double radius) {
  constexpr double kScale = 1048576.0;  // 2^20
  BigInt num(std::ceil(radius * kScale));
  Rational r(num, BigInt(1048576));
  r.canonicalize();
  return r * r;
}

PeriodEnumeration enumerate_period_in_ball(std::uint64_t pd, const Rational& radius_sq,
                                           const RotationParams& p, const Budget& b,
                                           unsigned threads) {
  if (pd == 0) throw DomainError("period must be positive");
  BallRegion region(p, natural_spec(radius_sq, p));
  const auto seeds = region.ball_states();
  const unsigned workers = static_cast<unsigned>(
      std::max<std::size_t>(1, std::min<std::size_t>(detail::resolve_threads(threads), seeds.size())));

  struct Local {
    std::set<LatticeState> reps;
    std::vector<LatticeState> unresolved;
    std::vector<State64> recorded;
  };
  std::vector<Local> locals(workers);
  std::vector<detail::VisitedMap> visited(workers, detail::VisitedMap(region.ball_box()));

  detail::WalkOptions o;
  // A period-pd orbit returns within pd steps.
  o.max_steps = std::min<std::uint64_t>(b.max_steps, pd);
  o.max_norm_sq = b.max_norm_sq;
  o.record_box = &region.ball_box();

  detail::parallel_for(seeds.size(), workers, [&](unsigned w, std::size_t i) {
    const State64 s = seeds[i];
    if (visited[w].test(s.x, s.y)) return;
    Local& local = locals[w];
    detail::WalkOptions ow = o;
    ow.recorded = &local.recorded;
    auto r = detail::walk_orbit(LatticeState(s.x, s.y), p, ow);
    if (r.periodic) {
      for (const auto& t : local.recorded) visited[w].set(t.x, t.y);
      if (r.period == pd) local.reps.insert(r.canonical);
    } else if (b.max_steps < pd) {
      local.unresolved.emplace_back(s.x, s.y);
    }
  });

  PeriodEnumeration out;
  out.period = pd;
  out.radius_sq = radius_sq;
  out.seeds_scanned = seeds.size();
  std::set<LatticeState> reps;
  std::set<LatticeState> unresolved;
  for (auto& l : locals) {
    reps.insert(l.reps.begin(), l.reps.end());
    unresolved.insert(l.unresolved.begin(), l.unresolved.end());
  }
  out.representatives.assign(reps.begin(), reps.end());
  out.unresolved_seeds.assign(unresolved.begin(), unresolved.end());
  out.complete = out.unresolved_seeds.empty() && !b.max_norm_sq;
  return out;
}

PeriodEnumeration enumerate_orbits_with_period(std::uint64_t pd, const RotationParams& p,
                                               const Budget& b, unsigned threads) {
  const double rho = period_p_ball_radius(pd, p);
  return enumerate_period_in_ball(pd, radius_sq_upper(rho), p, b, threads);
}

}  // namespace drot
