#pragma once

#include <cstddef>
#include <optional>

#include "cmc/profile.hpp"

namespace cmc {

/// Parabolic / parabolic-screw family in the half-plane model: the curve
/// (0, y, u(y)) swept by (x, y, t) -> (x + s, y, t + pitch * s).
struct ParScrewParams {
  double H = 0.0;
  double d = 0.0;
  double tau = -0.5;
  double pitch = 0.0;
};

/// du/dy = (dy - 2H) sqrt(1 + (pitch y - 2 tau)^2) / (y sqrt(1 - (dy - 2H)^2)).
/// Throws OutsideDomain unless y > 0 and |dy - 2H| < 1.
double par_integrand(const ParScrewParams& p, double y);

struct ParDomain {
  double lo = 0.0;  // 0 when the curve reaches the asymptotic boundary
  double hi = 0.0;  // +inf when unbounded
  bool lo_vertical = false;
  bool hi_vertical = false;
  std::optional<double> y1;
  std::optional<double> y0;
  std::optional<double> y2;
};

/// Domain and critical heights. Throws EmptyFamily naming the condition.
ParDomain par_domain(double H, double d);

RegimeReport classify_parabolic(double H, double d);

/// Sampled curve; u(y0) = 0 when y0 exists, otherwise u(y_hi) = 0.
/// Curves reaching y = 0 start at opts.y_min_fraction * y_hi.
ParProfileCurve par_profile_numeric(const ParScrewParams& p, std::size_t n,
                                    const ProfileOptions& opts = {});

ParProfileCurve par_profile_numeric_serial(const ParScrewParams& p, std::size_t n,
                                           const ProfileOptions& opts = {});

/// Height u(y) with the same normalization as par_profile_numeric.
double par_height(const ParScrewParams& p, double y, const ProfileOptions& opts = {});

/// Closed-form antiderivative (pitch 0), K = sqrt(1 + 4 tau^2):
///   H = 0:    K arcsin(dy)
///   H = 1/2:  K arcsin(dy - 1) + 2K / (tan(arcsin(dy - 1)/2) + 1)
///   H > 1/2:  K arcsin(dy - 2H)
///             - 4KH/sqrt(4H^2-1) arctan((2H tan(arcsin(dy - 2H)/2) + 1)/sqrt(4H^2-1))
/// Throws DomainError for 0 < H < 1/2 or y outside the domain.
double par_closed_form(double H, double d, double tau, double y);

/// d -> 0 limit for 0 < H < 1/2:
/// F(y) = -2 sqrt(1 + 4 tau^2) H ln(y) / sqrt(1 - 4H^2).
double par_limit_surface(double H, double tau, double y);

}  // namespace cmc
