// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "drot/dynamics.hpp"
#include "drot/exact.hpp"

namespace drot {

struct PlotOptions {
  unsigned size_px = 640;
  /// Draw every ball state, not just the trap.
  bool lattice_points = true;
  unsigned threads = 1;
};

/// SVG 1.1 figure of the ball, the trap band, the lattice states and the
/// Phi axis. Trap states are the only elements with class "trap".
std::string plot_trap_svg(const Rational& radius_sq, const RotationParams& p,
                          const PlotOptions& o = {});

}  // namespace drot
