// SPDX-License-Identifier: Apache-2.0
#include "drot/census.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "drot/detail/parallel.hpp"
#include "drot/detail/visited.hpp"
#include "drot/errors.hpp"

namespace drot {

namespace {

using detail::State64;

SymmetryClass seed_class(const LatticeState& s, const RotationParams& p) {
  const bool phi = in_fix_phi(s);
  const bool g = in_fix_g(s, p);
  if (phi && g) return SymmetryClass::doubly_symmetric;
  if (phi) return SymmetryClass::phi_symmetric;
  if (g) return SymmetryClass::g_symmetric;
  return SymmetryClass::asymmetric;
}

void finalize(CensusReport& r) {
  std::sort(r.orbit_reps.begin(), r.orbit_reps.end(),
            [](const OrbitRecord& a, const OrbitRecord& b) { return a.canonical < b.canonical; });
  std::sort(r.unresolved.begin(), r.unresolved.end(),
            [](const UnresolvedRecord& a, const UnresolvedRecord& b) { return a.seed < b.seed; });
  r.histogram.clear();
  for (const auto& o : r.orbit_reps) ++r.histogram[o.period];
  Rational radius = radius_from_sq(r.radius_sq);
  r.empirical_C = Rational(static_cast<unsigned long>(r.orbit_reps.size())) / radius;
  r.empirical_C.canonicalize();
}

double as_double(const Rational& q) { return q.get_d(); }

}  // namespace

Rational radius_from_sq(const Rational& radius_sq) {
  if (mpz_perfect_square_p(radius_sq.get_num().get_mpz_t()) &&
      mpz_perfect_square_p(radius_sq.get_den().get_mpz_t())) {
    Rational r(isqrt(radius_sq.get_num()), isqrt(radius_sq.get_den()));
    r.canonicalize();
    return r;
  }
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 12);
  Rational scaled = radius_sq * Rational(scale * scale);
  Rational r(floor_sqrt(scaled), scale);
  r.canonicalize();
  return r;
}

CensusReport scan_ball(const Rational& radius_sq, const RotationParams& p, const Budget& b,
                       const ScanOptions& opts) {
  if (opts.part_count == 0 || opts.part_index >= opts.part_count)
    throw DomainError("invalid seed partition");
  const TrapSpec spec = natural_spec(radius_sq, p);
  BallRegion region(p, spec);

  std::vector<State64> seeds;
  {
    auto all = region.ball_states();
    for (std::size_t i = opts.part_index; i < all.size(); i += opts.part_count) seeds.push_back(all[i]);
  }

  const unsigned workers = static_cast<unsigned>(std::max<std::size_t>(
      1, std::min<std::size_t>(detail::resolve_threads(opts.threads), seeds.size())));
  struct Local {
    std::map<LatticeState, OrbitRecord> reps;
    std::vector<UnresolvedRecord> unresolved;
    std::vector<State64> recorded;
  };
  std::vector<Local> locals(workers);
  std::vector<detail::VisitedMap> visited(workers, detail::VisitedMap(region.ball_box()));

  detail::parallel_for(seeds.size(), workers, [&](unsigned w, std::size_t i) {
    const State64 s = seeds[i];
    if (visited[w].test(s.x, s.y)) return;
    Local& local = locals[w];
    detail::WalkOptions o;
    o.max_steps = b.max_steps;
    o.max_norm_sq = b.max_norm_sq;
    o.record_box = &region.ball_box();
    o.recorded = &local.recorded;
    const LatticeState seed(s.x, s.y);
    auto r = detail::walk_orbit(seed, p, o);
    if (!r.periodic) {
      local.unresolved.push_back({seed, r.steps_used, r.max_norm_sq, seed_class(seed, p)});
      return;
    }
    std::uint64_t inside = 0;
    for (const auto& t : local.recorded) {
      visited[w].set(t.x, t.y);
      if (region.in_ball(t.x, t.y)) ++inside;
    }
    local.reps.try_emplace(r.canonical, OrbitRecord{r.canonical, r.period, detail::classify_hits(r),
                                                    inside, r.max_norm_sq});
  });

  CensusReport report{.params = p, .radius_sq = radius_sq};
  std::map<LatticeState, OrbitRecord> reps;
  for (auto& l : locals) {
    reps.merge(l.reps);
    report.unresolved.insert(report.unresolved.end(), l.unresolved.begin(), l.unresolved.end());
  }
  for (auto& [k, v] : reps) report.orbit_reps.push_back(std::move(v));

  const auto streams = enumerate_symmetric_seeds(radius_sq, p);
  const auto refl = trap_count_mod_reflection(spec, p, opts.threads);
  report.counts = {streams.fix_phi.size(), streams.fix_g.size(), refl.trap_points, refl.classes};
  const double radius = std::sqrt(as_double(radius_sq));
  const double ch = p.cos_half_theta();
  report.bounds = {2 * radius * ch, radius + radius * ch, 2 * floor_radius(radius_sq) + 1};
  report.meta = {seeds.size(), b.max_steps, b.max_norm_sq, spec.shifted};
  finalize(report);
  return report;
}

CensusReport merge(const CensusReport& a, const CensusReport& b) {
  if (!(a.params == b.params) || a.radius_sq != b.radius_sq || a.meta.max_steps != b.meta.max_steps ||
      a.meta.max_norm_sq != b.meta.max_norm_sq || a.meta.shifted != b.meta.shifted)
    throw DomainError("cannot merge census reports of different scans");
  if (!(a.counts == b.counts) || !(a.bounds == b.bounds))
    throw DomainError("census reports disagree on region counts");
  CensusReport out = a;
  std::map<LatticeState, OrbitRecord> reps;
  for (const auto* r : {&a, &b})
    for (const auto& o : r->orbit_reps) {
      auto [it, inserted] = reps.try_emplace(o.canonical, o);
      if (!inserted && !(it->second == o))
        throw DomainError("conflicting records for orbit " + o.canonical.to_string());
    }
  out.orbit_reps.clear();
  for (auto& [k, v] : reps) out.orbit_reps.push_back(v);
  std::map<LatticeState, UnresolvedRecord> unresolved;
  for (const auto* r : {&a, &b})
    for (const auto& u : r->unresolved) unresolved.try_emplace(u.seed, u);
  out.unresolved.clear();
  for (auto& [k, v] : unresolved) out.unresolved.push_back(v);
  out.meta.seeds_scanned = a.meta.seeds_scanned + b.meta.seeds_scanned;
  finalize(out);
  return out;
}

SymmetricSeeds enumerate_symmetric_seeds(const Rational& radius_sq, const RotationParams& p) {
  BallRegion region(p, natural_spec(radius_sq, p));
  const ScanBox& box = region.ball_box();
  SymmetricSeeds out;
  for (std::int64_t x = box.x_min; x <= box.x_max; ++x)
    if (region.in_ball(x, x)) out.fix_phi.emplace_back(x, x);
  // For each y the band 0 <= 2x + v < 1, v = lambda y + eta, forces 2x = -floor(v).
  for (std::int64_t y = box.y_min; y <= box.y_max; ++y) {
    BigInt f = p.floor_arg().floor(BigInt(0), BigInt(static_cast<long>(y)));
    if (!mpz_even_p(f.get_mpz_t())) continue;
    LatticeState s(BigInt(-f / 2), BigInt(static_cast<long>(y)));
    if (region.in_ball(s)) out.fix_g.push_back(std::move(s));
  }
  std::sort(out.fix_g.begin(), out.fix_g.end());
  return out;
}

BigInt fix_phi_closed_form(const Rational& radius_sq, const RotationParams& p) {
  // (R cos(theta/2))^2 = R^2 (2 - lambda) / 4
  const FieldElement target = FieldElement(radius_sq) * (FieldElement(2) - p.lambda().value()) *
                              FieldElement::rational(1, 4);
  BigInt m(std::floor(std::sqrt(target.to_double())));
  if (m < 0) m = 0;
  while (m > 0 && sign(FieldElement(BigInt(m * m)) - target) > 0) --m;
  while (sign(FieldElement(BigInt((m + 1) * (m + 1))) - target) <= 0) ++m;
  return 2 * m + 1;
}

Bookkeeping verify_bookkeeping(const Rational& radius_sq, const RotationParams& p, unsigned threads) {
  Bookkeeping bk;
  bk.radius_sq = radius_sq;
  bk.radius = std::sqrt(as_double(radius_sq));
  bk.cos_half_theta = p.cos_half_theta();
  const double R = bk.radius;
  const double ch = bk.cos_half_theta;

  const auto streams = enumerate_symmetric_seeds(radius_sq, p);
  bk.stream_a = streams.fix_phi.size();
  bk.stream_b = streams.fix_g.size();
  if (!p.has_shift()) bk.stream_a_closed_form = fix_phi_closed_form(radius_sq, p);

  const TrapSpec spec = natural_spec(radius_sq, p);
  BallRegion region(p, spec);
  const ScanBox& box = region.ball_box();
  const auto& band = p.band();
  for (std::int64_t y = box.y_min; y <= box.y_max; ++y) {
    // Exactly one x per y has 2x + v in [-1, 1): 2x is -floor(v) or -floor(v) - 1.
    BigInt f = p.floor_arg().floor(BigInt(0), BigInt(static_cast<long>(y)));
    for (const BigInt& two_x : {BigInt(-f), BigInt(-f - 1)}) {
      if (!mpz_even_p(two_x.get_mpz_t())) continue;
      LatticeState s(BigInt(two_x / 2), BigInt(static_cast<long>(y)));
      if (!region.in_ball(s)) continue;
      FieldElement v = band.value(s.x, s.y);
      if (sign(v + 1) >= 0 && sign(v - 1) < 0) {
        ++bk.band2_states;
        if (sign(v) < 0) ++bk.band_negative;
      }
    }
  }
  bk.band_symmetry_holds = bk.band_negative + 1 == bk.stream_b;

  bk.reflection = trap_count_mod_reflection(spec, p, threads);
  bk.trap_points = bk.reflection.trap_points;
  bk.trap_formula = 2 * floor_radius(radius_sq) + 1;

  bk.lhs = 2 * R * ch + R;
  bk.rhs = R + R * ch;
  bk.gap = bk.lhs - bk.rhs;
  bk.lhs_measured = static_cast<std::int64_t>(bk.stream_a + bk.stream_b);
  bk.rhs_measured = static_cast<std::int64_t>(bk.reflection.classes);
  bk.gap_measured = bk.lhs_measured - bk.rhs_measured;

  bk.residual_fix_phi = static_cast<double>(bk.stream_a) - 2 * R * ch;
  bk.residual_fix_g = static_cast<double>(bk.stream_b) - R;
  bk.residual_trap = static_cast<double>(bk.trap_points) - 2 * R;
  bk.residual_reflection = bk.reflection.residual;
  return bk;
}

GrowthCheck growth_check(const std::vector<Rational>& radii_sq, const RotationParams& p,
                                 const Budget& b, unsigned threads) {
  GrowthCheck out;
  ScanOptions opts;
  opts.threads = threads;
  for (const auto& r2 : radii_sq) {
    auto report = scan_ball(r2, p, b, opts);
    GrowthRow row;
    row.radius_sq = r2;
    row.radius = std::sqrt(as_double(r2));
    row.periodic_orbits = report.orbit_reps.size();
    row.unresolved_seeds = report.unresolved.size();
    row.ratio = static_cast<double>(row.periodic_orbits) / row.radius;
    if (row.unresolved_seeds > 0) out.poisoned = true;
    out.rows.push_back(row);
  }
  out.empirical_C = 0;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    out.empirical_C = i == 0 ? out.rows[i].ratio : std::min(out.empirical_C, out.rows[i].ratio);
    for (std::size_t j = 0; j < out.rows.size(); ++j)
      if (out.rows[j].radius_sq >= 4 * out.rows[i].radius_sq &&
          out.rows[j].periodic_orbits <= out.rows[i].periodic_orbits)
        out.doubling_growth = false;
  }
  return out;
}

EquidistStats equidist_stats(const Rational& radius, const RotationParams& p) {
  if (radius < 0) throw DomainError("radius must be non-negative");
  EquidistStats st;
  BigInt limit;
  mpz_fdiv_q(limit.get_mpz_t(), radius.get_num().get_mpz_t(), radius.get_den().get_mpz_t());
  st.y_limit = limit;

  const FieldElement& lambda = p.lambda().value();
  const FieldElement half(FieldElement::rational(1, 2));
  const FieldElement half_lambda = lambda * half;
  const FieldElement half_eta = p.eta().value() * half;

  std::optional<BigInt> num;
  if (lambda.is_rational()) {
    Rational h = lambda.to_rational() / 2;
    h.canonicalize();
    st.q = h.get_den().get_ui();
    num = h.get_num();
    st.class_counts.assign(*st.q, 0);
  }

  const long lim = limit.get_si();
  for (long y = -lim; y <= lim; ++y) {
    ++st.total;
    // lambda Y/2 mod 1 lies in [-eta/2, (1-eta)/2) mod 1 iff frac(lambda Y/2 + eta/2) < 1/2.
    FieldElement t = half_lambda * FieldElement(y) + half_eta;
    FieldElement frac = t - FieldElement(floor(t));
    if (sign(frac - half) < 0) ++st.hits;
    BigInt f = p.floor_arg().floor(BigInt(0), BigInt(y));
    if (mpz_even_p(f.get_mpz_t())) ++st.hits_by_parity;
    if (st.q) {
      BigInt r;
      BigInt prod = *num * y;
      mpz_fdiv_r(r.get_mpz_t(), prod.get_mpz_t(), BigInt(static_cast<unsigned long>(*st.q)).get_mpz_t());
      ++st.class_counts[r.get_ui()];
    }
  }
  st.fraction = static_cast<double>(st.hits) / static_cast<double>(st.total);
  if (st.q) {
    const double expect = 1.0 / static_cast<double>(*st.q);
    for (std::uint64_t i = 0; i < *st.q; ++i) {
      double fr = static_cast<double>(st.class_counts[i]) / static_cast<double>(st.total);
      st.class_frequency.push_back(fr);
      st.max_class_deviation = std::max(st.max_class_deviation, std::fabs(fr - expect));
      FieldElement t = FieldElement::rational(BigInt(static_cast<unsigned long>(i)),
                                              BigInt(static_cast<unsigned long>(*st.q))) + half_eta;
      if (sign(t - FieldElement(floor(t)) - half) < 0) ++st.observed_cardinality;
    }
  }
  return st;
}

}  // namespace drot
