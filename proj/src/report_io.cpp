// SPDX-License-Identifier: Apache-2.0
#include "drot/report_io.hpp"

#include <sstream>

#include "drot/errors.hpp"

namespace drot {

namespace {

Json big_json(const BigInt& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return BigInt(j.get<std::string>(), 10);
  throw ParseError("expected an integer");
}

FieldElement field_from_text(const std::string& text) { return make_coeff(text).value(); }

Rational rational_from_text(const std::string& text) {
  return make_coeff(text).value().to_rational();
}

}  // namespace

Json to_json(const RotationParams& p) {
  Json j;
  j["lambda"] = p.lambda().to_string();
  j["eta"] = p.eta().to_string();
  j["lambda_sq"] = p.lambda_sq().to_string();
  j["sin_sq_theta"] = p.sin_sq_theta().to_string();
  j["kappa"] = p.kappa().to_string();
  j["theta"] = p.theta();
  return j;
}

Json to_json(const LatticeState& s) { return Json::array({big_json(s.x), big_json(s.y)}); }

LatticeState state_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("state must be a two-element array");
  return {big_from_json(j[0]), big_from_json(j[1])};
}

Json to_json(const CensusReport& r) {
  Json j;
  j["params"] = to_json(r.params);
  j["radius_sq"] = to_coeff_text(r.radius_sq);
  Json hist = Json::object();
  for (const auto& [period, count] : r.histogram) hist[std::to_string(period)] = count;
  j["histogram"] = hist;
  Json reps = Json::array();
  for (const auto& o : r.orbit_reps) {
    Json e;
    e["canonical"] = to_json(o.canonical);
    e["period"] = o.period;
    e["symmetry"] = std::string(to_string(o.symmetry));
    e["ball_points"] = o.ball_points;
    e["max_norm_sq"] = o.max_norm_sq.to_string();
    reps.push_back(std::move(e));
  }
  j["orbit_reps"] = std::move(reps);
  Json unresolved = Json::array();
  for (const auto& u : r.unresolved) {
    Json e;
    e["seed"] = to_json(u.seed);
    e["steps_used"] = u.steps_used;
    e["max_norm_sq_seen"] = u.max_norm_sq_seen.to_string();
    e["seed_class"] = std::string(to_string(u.seed_class));
    unresolved.push_back(std::move(e));
  }
  j["unresolved"] = std::move(unresolved);
  j["counts"] = {{"fix_phi_seeds", r.counts.fix_phi_seeds},
                 {"fix_g_seeds", r.counts.fix_g_seeds},
                 {"trap_points", r.counts.trap_points},
                 {"trap_points_mod_reflection", r.counts.trap_points_mod_reflection}};
  j["bounds"] = {{"two_R_cos_half_theta", r.bounds.two_R_cos_half_theta},
                 {"R_plus_R_cos_half_theta", r.bounds.R_plus_R_cos_half_theta},
                 {"two_floor_R_plus_1", big_json(r.bounds.two_floor_R_plus_1)}};
  j["empirical_C"] = to_coeff_text(r.empirical_C);
  Json meta;
  meta["seeds_scanned"] = r.meta.seeds_scanned;
  meta["periodic_orbits"] = r.orbit_reps.size();
  meta["unresolved_seeds"] = r.unresolved.size();
  meta["max_steps"] = r.meta.max_steps;
  meta["max_norm_sq"] = r.meta.max_norm_sq ? Json(to_coeff_text(*r.meta.max_norm_sq)) : Json(nullptr);
  meta["lattice"] = r.meta.shifted ? "shifted" : "plain";
  meta["ball"] = "closed";
  j["meta"] = std::move(meta);
  return j;
}

CensusReport census_from_json(const Json& j) {
  try {
    const auto& params = j.at("params");
    CensusReport r{.params = RotationParams(make_rotation_coeff(params.at("lambda").get<std::string>()),
                                            make_coeff(params.at("eta").get<std::string>())),
                   .radius_sq = rational_from_text(j.at("radius_sq").get<std::string>())};
    for (const auto& [k, v] : j.at("histogram").items())
      r.histogram[std::stoull(k)] = v.get<std::uint64_t>();
    for (const auto& e : j.at("orbit_reps")) {
      r.orbit_reps.push_back({state_from_json(e.at("canonical")), e.at("period").get<std::uint64_t>(),
                              symmetry_from_string(e.at("symmetry").get<std::string>()),
                              e.at("ball_points").get<std::uint64_t>(),
                              field_from_text(e.at("max_norm_sq").get<std::string>())});
    }
    for (const auto& e : j.at("unresolved")) {
      r.unresolved.push_back({state_from_json(e.at("seed")), e.at("steps_used").get<std::uint64_t>(),
                              field_from_text(e.at("max_norm_sq_seen").get<std::string>()),
                              symmetry_from_string(e.at("seed_class").get<std::string>())});
    }
    const auto& c = j.at("counts");
    r.counts = {c.at("fix_phi_seeds").get<std::uint64_t>(), c.at("fix_g_seeds").get<std::uint64_t>(),
                c.at("trap_points").get<std::uint64_t>(),
                c.at("trap_points_mod_reflection").get<std::uint64_t>()};
    const auto& b = j.at("bounds");
    r.bounds = {b.at("two_R_cos_half_theta").get<double>(), b.at("R_plus_R_cos_half_theta").get<double>(),
                big_from_json(b.at("two_floor_R_plus_1"))};
    r.empirical_C = rational_from_text(j.at("empirical_C").get<std::string>());
    const auto& m = j.at("meta");
    r.meta.seeds_scanned = m.at("seeds_scanned").get<std::uint64_t>();
    r.meta.max_steps = m.at("max_steps").get<std::uint64_t>();
    if (!m.at("max_norm_sq").is_null())
      r.meta.max_norm_sq = rational_from_text(m.at("max_norm_sq").get<std::string>());
    r.meta.shifted = m.at("lattice").get<std::string>() == "shifted";
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed census report: ") + e.what());
  }
}

CensusReport census_from_json_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return census_from_json(j);
}

Json to_json(const Bookkeeping& b) {
  Json j;
  j["radius_sq"] = to_coeff_text(b.radius_sq);
  j["radius"] = b.radius;
  j["cos_half_theta"] = b.cos_half_theta;
  j["stream_a"] = b.stream_a;
  j["stream_a_closed_form"] = b.stream_a_closed_form ? big_json(*b.stream_a_closed_form) : Json(nullptr);
  j["stream_b"] = b.stream_b;
  j["band2_states"] = b.band2_states;
  j["band_negative"] = b.band_negative;
  j["band_symmetry_holds"] = b.band_symmetry_holds;
  j["trap_points"] = b.trap_points;
  j["trap_formula"] = big_json(b.trap_formula);
  j["trap_points_mod_reflection"] = b.reflection.classes;
  j["reflection_pairs"] = b.reflection.pairs;
  j["reflection_fixed"] = b.reflection.phi_fixed;
  j["lhs"] = b.lhs;
  j["rhs"] = b.rhs;
  j["gap"] = b.gap;
  j["lhs_measured"] = b.lhs_measured;
  j["rhs_measured"] = b.rhs_measured;
  j["gap_measured"] = b.gap_measured;
  j["residuals"] = {{"fix_phi", b.residual_fix_phi},
                    {"fix_g", b.residual_fix_g},
                    {"trap", b.residual_trap},
                    {"reflection", b.residual_reflection}};
  return j;
}

Json to_json(const GrowthCheck& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows)
    rows.push_back({{"radius_sq", to_coeff_text(r.radius_sq)},
                    {"radius", r.radius},
                    {"periodic_orbits", r.periodic_orbits},
                    {"unresolved_seeds", r.unresolved_seeds},
                    {"ratio", r.ratio}});
  Json j;
  j["rows"] = std::move(rows);
  j["empirical_C"] = c.empirical_C;
  j["doubling_growth"] = c.doubling_growth;
  j["poisoned"] = c.poisoned;
  return j;
}

Json to_json(const EquidistStats& e) {
  Json j;
  j["y_limit"] = big_json(e.y_limit);
  j["total"] = e.total;
  j["hits"] = e.hits;
  j["hits_by_parity"] = e.hits_by_parity;
  j["fraction"] = e.fraction;
  if (e.q) {
    j["q"] = *e.q;
    j["class_counts"] = e.class_counts;
    j["class_frequency"] = e.class_frequency;
    j["max_class_deviation"] = e.max_class_deviation;
    j["observed_cardinality"] = e.observed_cardinality;
  }
  return j;
}

Json to_json(const PeriodEnumeration& e) {
  Json reps = Json::array();
  for (const auto& s : e.representatives) reps.push_back(to_json(s));
  Json unresolved = Json::array();
  for (const auto& s : e.unresolved_seeds) unresolved.push_back(to_json(s));
  Json j;
  j["period"] = e.period;
  j["radius_sq"] = to_coeff_text(e.radius_sq);
  j["seeds_scanned"] = e.seeds_scanned;
  j["complete"] = e.complete;
  j["representatives"] = std::move(reps);
  j["unresolved_seeds"] = std::move(unresolved);
  return j;
}

Json to_json(const OrbitResult& r) {
  Json j;
  j["outcome"] = r.periodic() ? "periodic" : "unresolved";
  j["period"] = r.periodic() ? Json(r.period) : Json(nullptr);
  j["steps_used"] = r.steps_used;
  j["max_norm_sq_seen"] = r.max_norm_sq_seen.to_string();
  j["canonical"] = r.canonical ? to_json(*r.canonical) : Json(nullptr);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string to_csv(const CensusReport& r) {
  std::ostringstream out;
  out << "canonical_x,canonical_y,period,symmetry_class\n";
  for (const auto& o : r.orbit_reps)
    out << o.canonical.x.get_str() << ',' << o.canonical.y.get_str() << ',' << o.period << ','
        << to_string(o.symmetry) << '\n';
  return out.str();
}

}  // namespace drot
