// SPDX-License-Identifier: Apache-2.0
#include "drot/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "drot/geometry.hpp"

namespace drot {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string plot_trap_svg(const Rational& radius_sq, const RotationParams& p, const PlotOptions& o) {
  const TrapSpec spec = natural_spec(radius_sq, p);
  const BallRegion region(p, spec);
  const double r = std::sqrt(radius_sq.get_d());
  const double sin_t = std::sqrt(p.sin_sq_theta().to_double());
  const double cot_t = -p.lambda().value().to_double() / 2.0 / sin_t;
  const double csc_t = 1.0 / sin_t;

  // World extent covers the ball and its translate by e2 = (cot t, 1).
  const double extent = r + csc_t + 1.0;
  const double px = static_cast<double>(o.size_px);
  const double scale = px / (2.0 * extent);
  auto sx = [&](double x) { return num((x + extent) * scale); };
  auto sy = [&](double y) { return num((extent - y) * scale); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << o.size_px
      << "\" height=\"" << o.size_px << "\" viewBox=\"0 0 " << o.size_px << ' ' << o.size_px << "\">\n"
      << "<title>trap region lambda=" << p.lambda().to_string() << " eta=" << p.eta().to_string()
      << " R^2=" << to_coeff_text(radius_sq) << "</title>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Trap band: boundary of (B + e2) \ B, sampled. The two circles meet at
  // distance csc(t)/2 along e2, offset h perpendicular to it.
  const double ex = cot_t, ey = 1.0, d = csc_t;
  const double ux = ex / d, uy = ey / d;
  if (2.0 * r > d) {
    const double h = std::sqrt(r * r - d * d / 4.0);
    const double a0 = std::atan2(uy, ux);
    const double half = std::atan2(h, d / 2.0);  // angle of intersections seen from 0
    const int samples = 96;
    out << "<polygon class=\"band\" fill=\"#f6d3a8\" fill-opacity=\"0.6\" stroke=\"none\" points=\"";
    // Outer arc of the translated circle, centred at e2, away from the origin.
    for (int i = 0; i <= samples; ++i) {
      const double a = a0 - (M_PI - half) + 2.0 * (M_PI - half) * i / samples;
      out << sx(ex + r * std::cos(a)) << ',' << sy(ey + r * std::sin(a)) << ' ';
    }
    // Back along the original circle between the same intersections.
    for (int i = 0; i <= samples; ++i) {
      const double a = a0 + half - 2.0 * half * i / samples;
      out << sx(r * std::cos(a)) << ',' << sy(r * std::sin(a)) << ' ';
    }
    out << "\"/>\n";
  }

  out << "<circle class=\"ball\" cx=\"" << sx(0) << "\" cy=\"" << sy(0) << "\" r=\"" << num(r * scale)
      << "\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"1.5\"/>\n";

  // Phi swaps coordinates: its axis is the line through (1,1) in the plane.
  {
    const double axx = -csc_t + cot_t, axy = 1.0;
    const double len = std::hypot(axx, axy);
    const double t = extent * 1.5 / len;
    out << "<line class=\"axis\" x1=\"" << sx(-t * axx) << "\" y1=\"" << sy(-t * axy) << "\" x2=\""
        << sx(t * axx) << "\" y2=\"" << sy(t * axy)
        << "\" stroke=\"#555555\" stroke-dasharray=\"6,4\" stroke-width=\"1\"/>\n";
  }

  const double dot = std::max(1.0, std::min(4.0, scale * 0.18));
  auto marker = [&](const LatticeState& s, const char* cls, const char* fill, double rad) {
    const auto [x, y] = embed_real(s, p, spec.shifted);
    out << "<circle class=\"" << cls << "\" cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\""
        << num(rad) << "\" fill=\"" << fill << "\"/>\n";
  };

  if (o.lattice_points) {
    out << "<g id=\"lattice\">\n";
    for (const auto& s : region.ball_states()) marker(LatticeState(s.x, s.y), "lattice", "#7f7f7f", dot * 0.6);
    out << "</g>\n";
  }

  out << "<g id=\"trap\">\n";
  const ScanBox& box = region.trap_box();
  for (std::int64_t x = box.x_min; x <= box.x_max; ++x)
    for (std::int64_t y = box.y_min; y <= box.y_max; ++y)
      if (region.in_trap(x, y)) marker(LatticeState(x, y), "trap", "#c0392b", dot);
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace drot
