// SPDX-License-Identifier: Apache-2.0
#pragma once

// The discretized rotation F(x,y) = (y, -floor(x + lambda*y + eta)) on Z^2,
// its inverse, and the two reversing involutions phi and g with F = phi o g.

#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>

#include "drot/detail/kernel.hpp"
#include "drot/exact.hpp"

namespace drot {

struct LatticeState {
  BigInt x{0};
  BigInt y{0};

  LatticeState() = default;
  LatticeState(BigInt x_, BigInt y_) : x(std::move(x_)), y(std::move(y_)) {}
  LatticeState(long x_, long y_) : x(x_), y(y_) {}

  friend bool operator==(const LatticeState& l, const LatticeState& r) {
    return l.x == r.x && l.y == r.y;
  }
  // Lexicographic, x first; this ordering defines canonical representatives.
  friend std::strong_ordering operator<=>(const LatticeState& l, const LatticeState& r) {
    if (int c = cmp(l.x, r.x); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = cmp(l.y, r.y);
    if (c == 0) return std::strong_ordering::equal;
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  bool fits_int64() const { return x.fits_slong_p() && y.fits_slong_p(); }
  std::string to_string() const { return "(" + x.get_str() + "," + y.get_str() + ")"; }
};

/// The system (lambda, eta) with its exact derived constants.
class RotationParams {
 public:
  /// lambda must lie in (-2,2); lambda and eta must be rational or share
  /// one quadratic field. Throws DomainError otherwise.
  explicit RotationParams(ExactCoeff lambda, ExactCoeff eta = ExactCoeff{});
  static RotationParams parse(std::string_view lambda, std::string_view eta = "rat:0/1");

  const ExactCoeff& lambda() const { return lambda_; }
  const ExactCoeff& eta() const { return eta_; }
  const FieldElement& lambda_sq() const { return lambda_sq_; }
  /// 1 - lambda^2/4, the exact square of sin(theta).
  const FieldElement& sin_sq_theta() const { return sin_sq_theta_; }
  /// eta / (2 + lambda).
  const FieldElement& kappa() const { return kappa_; }
  /// arccos(-lambda/2) in (0, pi); reporting only.
  double theta() const { return static_cast<double>(theta_); }
  long double theta_ld() const { return theta_; }
  double cos_half_theta() const;
  bool has_shift() const { return !eta_.value().is_zero(); }

  /// x + lambda*y + eta as a form in (x, y).
  const detail::SurdForm& floor_arg() const { return floor_arg_; }
  /// 2x + lambda*y + eta, the Fix(g) band value.
  const detail::SurdForm& band() const { return band_; }
  /// x'^2 + y'^2 + lambda*x'*y' with x' = x (+ kappa when shifted); the
  /// squared lattice norm times sin^2(theta).
  const detail::SurdForm& norm_numerator(bool shifted) const {
    return shifted ? norm_shifted_ : norm_plain_;
  }
  /// Shifted geometry is the natural one whenever eta != 0.
  const detail::SurdForm& natural_norm_numerator() const { return norm_numerator(has_shift()); }

  friend bool operator==(const RotationParams& l, const RotationParams& r) {
    return l.lambda_ == r.lambda_ && l.eta_ == r.eta_;
  }

 private:
  ExactCoeff lambda_;
  ExactCoeff eta_;
  FieldElement lambda_sq_;
  FieldElement sin_sq_theta_;
  FieldElement kappa_;
  long double theta_ = 0;
  detail::SurdForm floor_arg_;
  detail::SurdForm band_;
  detail::SurdForm norm_plain_;
  detail::SurdForm norm_shifted_;
};

/// One step with its floor argument and fractional part mu in [0,1).
struct StepTrace {
  LatticeState state_before;
  LatticeState state_after;
  FieldElement floor_arg;
  FieldElement mu;
};

LatticeState step(const LatticeState& s, const RotationParams& p);
LatticeState step_back(const LatticeState& s, const RotationParams& p);
StepTrace trace_step(const LatticeState& s, const RotationParams& p);

inline LatticeState involution_phi(const LatticeState& s) { return {s.y, s.x}; }
/// g(x,y) = (-floor(x + lambda*y + eta), y), so that F = phi o g.
LatticeState involution_g(const LatticeState& s, const RotationParams& p);

inline bool in_fix_phi(const LatticeState& s) { return s.x == s.y; }
/// -eta <= 2x + lambda*y < 1 - eta, decided by exact sign tests.
bool in_fix_g(const LatticeState& s, const RotationParams& p);

/// -eta <= c + lambda*b + a < 1 - eta; holds iff step((a,b)) == (b,c).
bool three_term_check(const BigInt& a, const BigInt& b, const BigInt& c, const RotationParams& p);

namespace detail {

struct State64 {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const State64&, const State64&) = default;
  friend auto operator<=>(const State64&, const State64&) = default;
};

/// Coordinates above this magnitude leave the 64-bit fast path.
inline constexpr std::int64_t kFastLimit = std::int64_t{1} << 40;

/// floor(x + lambda*y + eta) on the fast path; nullopt when out of range.
inline std::optional<std::int64_t> floor_arg_fast(const RotationParams& p, std::int64_t x,
                                                  std::int64_t y) {
  auto f = p.floor_arg().floor_fast(x, y);
  if (!f || *f > kFastLimit || *f < -kFastLimit) return std::nullopt;
  return static_cast<std::int64_t>(*f);
}

}  // namespace detail

}  // namespace drot
