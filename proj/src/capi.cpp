// SPDX-License-Identifier: Apache-2.0
#include "drot/drot.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "drot/census.hpp"
#include "drot/errors.hpp"
#include "drot/geometry.hpp"
#include "drot/orbits.hpp"
#include "drot/report_io.hpp"
#include "drot/svg.hpp"

struct drot_params {
  drot::RotationParams value;
};

struct drot_report {
  drot::CensusReport value;
};

namespace {

thread_local std::string last_error;

class OverflowError : public drot::Error {
 public:
  using drot::Error::Error;
};

class ArgumentError : public drot::Error {
 public:
  using drot::Error::Error;
};

template <class Fn>
drot_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return DROT_OK;
  } catch (const drot::ParseError& e) {
    last_error = e.what();
    return DROT_ERR_PARSE;
  } catch (const drot::DomainError& e) {
    last_error = e.what();
    return DROT_ERR_DOMAIN;
  } catch (const drot::PreconditionError& e) {
    last_error = e.what();
    return DROT_ERR_PRECONDITION;
  } catch (const ArgumentError& e) {
    last_error = e.what();
    return DROT_ERR_ARGUMENT;
  } catch (const OverflowError& e) {
    last_error = e.what();
    return DROT_ERR_OVERFLOW;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DROT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DROT_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return DROT_ERR_INTERNAL;
  }
}

void require(const void* ptr, const char* what) {
  if (ptr == nullptr) throw ArgumentError(std::string(what) + " must not be null");
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

drot::BigInt parse_int(const char* text, const char* what) {
  require(text, what);
  std::string_view s(text);
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw drot::ParseError(std::string("empty integer for ") + what);
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw drot::ParseError(std::string("invalid integer for ") + what + ": " + text);
  return drot::BigInt(std::string(s[0] == '+' ? s.substr(1) : s), 10);
}

drot::LatticeState parse_seed(const char* x, const char* y) {
  return {parse_int(x, "seed x"), parse_int(y, "seed y")};
}

drot::Rational parse_radius_sq(const char* text) {
  require(text, "radius");
  std::string_view s(text);
  drot::Rational sq;
  if (s.starts_with("sq:")) {
    sq = drot::parse_rational(s.substr(3));
  } else {
    const drot::Rational r = drot::parse_rational(s);
    if (r < 0) throw drot::DomainError("radius must be non-negative");
    sq = r * r;
  }
  if (sq < 0) throw drot::DomainError("radius must be non-negative");
  return sq;
}

/// R itself for "p/q" input, else the closest representation from R^2.
drot::Rational parse_radius(const char* text) {
  require(text, "radius");
  std::string_view s(text);
  if (s.starts_with("sq:")) return drot::radius_from_sq(parse_radius_sq(text));
  const drot::Rational r = drot::parse_rational(s);
  if (r < 0) throw drot::DomainError("radius must be non-negative");
  return r;
}

drot::Budget make_budget(const drot_budget* b) {
  drot::Budget out;
  if (b == nullptr) return out;
  if (b->max_steps != 0) out.max_steps = b->max_steps;
  if (b->max_norm_sq != nullptr) out.max_norm_sq = drot::parse_rational(b->max_norm_sq);
  return out;
}

void store(const drot::LatticeState& s, int64_t* ox, int64_t* oy) {
  require(ox, "x output");
  require(oy, "y output");
  if (!s.fits_int64()) throw OverflowError("state " + s.to_string() + " does not fit in 64 bits");
  *ox = s.x.get_si();
  *oy = s.y.get_si();
}

void fill_info(const drot::OrbitResult& r, drot_orbit_info* out) {
  require(out, "output");
  *out = drot_orbit_info{};
  out->periodic = r.periodic() ? 1 : 0;
  out->period = r.period;
  out->steps_used = r.steps_used;
  if (r.canonical && r.canonical->fits_int64()) {
    out->canonical_fits = 1;
    out->canonical_x = r.canonical->x.get_si();
    out->canonical_y = r.canonical->y.get_si();
  }
}

/// {"params": ..., members of body...}.
drot::Json with_params(const drot::RotationParams& p, const drot::Json& body) {
  drot::Json j;
  j["params"] = drot::to_json(p);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

std::vector<drot::Rational> parse_radius_list(const char* text) {
  require(text, "radii");
  std::vector<drot::Rational> out;
  std::string s(text);
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_radius_sq(item.c_str()));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

extern "C" {

const char* drot_version(void) { return "0.1.0"; }

const char* drot_last_error(void) { return last_error.c_str(); }

void drot_string_free(char* s) { std::free(s); }

drot_status drot_params_create(const char* lambda, const char* eta, drot_params** out) {
  return guarded([&] {
    require(lambda, "lambda");
    require(out, "output");
    *out = nullptr;
    auto params = drot::RotationParams::parse(lambda, eta != nullptr ? eta : "rat:0/1");
    *out = new drot_params{std::move(params)};
  });
}

void drot_params_destroy(drot_params* p) { delete p; }

drot_status drot_params_json(const drot_params* p, char** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    *out = copy_out(drot::dump(drot::to_json(p->value)));
  });
}

drot_status drot_step(const drot_params* p, int64_t x, int64_t y, int64_t* ox, int64_t* oy) {
  return guarded([&] {
    require(p, "params");
    store(drot::step(drot::LatticeState(x, y), p->value), ox, oy);
  });
}

drot_status drot_step_back(const drot_params* p, int64_t x, int64_t y, int64_t* ox, int64_t* oy) {
  return guarded([&] {
    require(p, "params");
    store(drot::step_back(drot::LatticeState(x, y), p->value), ox, oy);
  });
}

drot_status drot_involution_g(const drot_params* p, int64_t x, int64_t y, int64_t* ox, int64_t* oy) {
  return guarded([&] {
    require(p, "params");
    store(drot::involution_g(drot::LatticeState(x, y), p->value), ox, oy);
  });
}

drot_status drot_in_fix_g(const drot_params* p, int64_t x, int64_t y, int* out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    *out = drot::in_fix_g(drot::LatticeState(x, y), p->value) ? 1 : 0;
  });
}

drot_status drot_detect_period(const drot_params* p, const char* x, const char* y, const drot_budget* b,
                               drot_orbit_info* out) {
  return guarded([&] {
    require(p, "params");
    fill_info(drot::detect_period(parse_seed(x, y), p->value, make_budget(b)), out);
  });
}

drot_status drot_detect_period_symmetric(const drot_params* p, const char* x, const char* y,
                                         const drot_budget* b, drot_orbit_info* out) {
  return guarded([&] {
    require(p, "params");
    fill_info(drot::detect_period_symmetric(parse_seed(x, y), p->value, make_budget(b)), out);
  });
}

drot_status drot_classify_symmetry(const drot_params* p, const char* x, const char* y, const drot_budget* b,
                                   drot_symmetry* out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    *out = static_cast<drot_symmetry>(drot::classify_symmetry(parse_seed(x, y), p->value, make_budget(b)));
  });
}

drot_status drot_orbit_json(const drot_params* p, const char* x, const char* y, const drot_budget* b,
                            uint64_t max_listed, char** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    const auto seed = parse_seed(x, y);
    const auto budget = make_budget(b);
    const auto r = drot::detect_period(seed, p->value, budget);
    drot::Json j;
    j["params"] = drot::to_json(p->value);
    j["seed"] = drot::to_json(seed);
    const drot::Json body = drot::to_json(r);
    for (const auto& [k, v] : body.items()) j[k] = v;
    if (r.periodic()) {
      const auto centers = drot::symmetry_centers(seed, p->value, budget);
      j["symmetry"] = std::string(drot::to_string(drot::classify_symmetry(seed, p->value, budget)));
      j["phi_centers"] = centers.phi;
      j["g_centers"] = centers.g;
      if (r.period <= max_listed) {
        drot::Json states = drot::Json::array();
        drot::LatticeState s = seed;
        for (std::uint64_t i = 0; i < r.period; ++i) {
          states.push_back(drot::to_json(s));
          s = drot::step(s, p->value);
        }
        j["states"] = std::move(states);
      }
    } else {
      j["symmetry"] = nullptr;
    }
    *out = copy_out(drot::dump(j));
  });
}

drot_status drot_radius_sq(const char* radius, char** out) {
  return guarded([&] {
    require(out, "output");
    *out = copy_out(drot::to_coeff_text(parse_radius_sq(radius)));
  });
}

drot_status drot_trap_count(const drot_params* p, const char* radius, unsigned threads, uint64_t* out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    *out = drot::trap_count(drot::natural_spec(parse_radius_sq(radius), p->value), p->value, threads);
  });
}

drot_status drot_trap_json(const drot_params* p, const char* radius, unsigned threads, char** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    const auto radius_sq = parse_radius_sq(radius);
    const auto spec = drot::natural_spec(radius_sq, p->value);
    const auto rc = drot::trap_count_mod_reflection(spec, p->value, threads);
    drot::Json j;
    j["params"] = drot::to_json(p->value);
    j["radius_sq"] = drot::to_coeff_text(radius_sq);
    j["lattice"] = spec.shifted ? "shifted" : "plain";
    j["trap_points"] = rc.trap_points;
    const drot::BigInt formula = 2 * drot::floor_radius(radius_sq) + 1;
    j["two_floor_R_plus_1"] = formula.fits_slong_p() ? drot::Json(formula.get_si()) : drot::Json(formula.get_str());
    j["trap_points_mod_reflection"] = rc.classes;
    j["reflection_pairs"] = rc.pairs;
    j["reflection_fixed"] = rc.phi_fixed;
    j["R_plus_R_cos_half_theta"] = rc.bound;
    j["residual"] = rc.residual;
    *out = copy_out(drot::dump(j));
  });
}

drot_status drot_census_run(const drot_params* p, const char* radius, const drot_budget* b, unsigned threads,
                            drot_report** out) {
  return drot_census_run_part(p, radius, b, threads, 0, 1, out);
}

drot_status drot_census_run_part(const drot_params* p, const char* radius, const drot_budget* b,
                                 unsigned threads, size_t part_index, size_t part_count, drot_report** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    *out = nullptr;
    if (part_count == 0 || part_index >= part_count) throw ArgumentError("part_index must be below part_count");
    drot::ScanOptions opts{threads, part_index, part_count};
    *out = new drot_report{drot::scan_ball(parse_radius_sq(radius), p->value, make_budget(b), opts)};
  });
}

drot_status drot_census_merge(const drot_report* a, const drot_report* b, drot_report** out) {
  return guarded([&] {
    require(a, "report a");
    require(b, "report b");
    require(out, "output");
    *out = nullptr;
    *out = new drot_report{drot::merge(a->value, b->value)};
  });
}

drot_status drot_census_from_json(const char* json, drot_report** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "output");
    *out = nullptr;
    *out = new drot_report{drot::census_from_json_text(json)};
  });
}

drot_status drot_census_json(const drot_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "output");
    *out = copy_out(drot::dump(drot::to_json(r->value)));
  });
}

drot_status drot_census_csv(const drot_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "output");
    *out = copy_out(drot::to_csv(r->value));
  });
}

drot_status drot_census_get_counts(const drot_report* r, drot_census_counts* out) {
  return guarded([&] {
    require(r, "report");
    require(out, "output");
    const auto& v = r->value;
    *out = drot_census_counts{v.orbit_reps.size(),      v.unresolved.size(),     v.meta.seeds_scanned,
                              v.counts.fix_phi_seeds,   v.counts.fix_g_seeds,    v.counts.trap_points,
                              v.counts.trap_points_mod_reflection};
  });
}

drot_status drot_census_equal(const drot_report* a, const drot_report* b, int* out) {
  return guarded([&] {
    require(a, "report a");
    require(b, "report b");
    require(out, "output");
    *out = a->value == b->value ? 1 : 0;
  });
}

void drot_report_destroy(drot_report* r) { delete r; }

drot_status drot_verify_json(const drot_params* p, const char* radius, unsigned threads, char** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    const auto b = drot::verify_bookkeeping(parse_radius_sq(radius), p->value, threads);
    *out = copy_out(drot::dump(with_params(p->value, drot::to_json(b))));
  });
}

drot_status drot_growth_json(const drot_params* p, const char* radii, const drot_budget* b, unsigned threads,
                             char** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    const auto c = drot::growth_check(parse_radius_list(radii), p->value, make_budget(b), threads);
    *out = copy_out(drot::dump(with_params(p->value, drot::to_json(c))));
  });
}

drot_status drot_equidist_json(const drot_params* p, const char* radius, char** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    const auto e = drot::equidist_stats(parse_radius(radius), p->value);
    *out = copy_out(drot::dump(with_params(p->value, drot::to_json(e))));
  });
}

drot_status drot_enumerate_period_json(const drot_params* p, uint64_t period, const char* radius,
                                       const drot_budget* b, unsigned threads, char** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    const auto budget = make_budget(b);
    const auto e = radius == nullptr
                       ? drot::enumerate_orbits_with_period(period, p->value, budget, threads)
                       : drot::enumerate_period_in_ball(period, parse_radius_sq(radius), p->value, budget, threads);
    *out = copy_out(drot::dump(with_params(p->value, drot::to_json(e))));
  });
}

drot_status drot_plot_svg(const drot_params* p, const char* radius, unsigned size_px, unsigned threads,
                          char** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "output");
    drot::PlotOptions o;
    if (size_px != 0) o.size_px = size_px;
    o.threads = threads;
    *out = copy_out(drot::plot_trap_svg(parse_radius_sq(radius), p->value, o));
  });
}

}  // extern "C"
