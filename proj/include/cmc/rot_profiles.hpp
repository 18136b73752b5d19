#pragma once

#include <cstddef>

#include "cmc/profile.hpp"

namespace cmc {

/// Rotational / rotational-screw family. `d` is the first-integral constant
/// of sinh(rho) u' / W = 2H cosh(rho) + d; `pitch` is l = l~ - 2 tau, so
/// pitch = 0 is the pure rotational surface t = u(rho).
struct RotScrewParams {
  double H = 0.0;
  double d = 0.0;
  double tau = -0.5;
  double pitch = 0.0;
};

/// f(rho) = sinh^2(rho) - (d + 2H cosh(rho))^2; the surface exists where f > 0.
double f_poly(double H, double d, double rho);

/// Same polynomial expanded in c = cosh(rho):
/// (1 - 4H^2) c^2 - 4 H d c - (1 + d^2).
double f_poly_expanded(double H, double d, double rho);

/// g(rho) = d + 2H cosh(rho); u' has the sign of g.
double g_fun(double H, double d, double rho);

/// du/drho = g sqrt(1 + K^2) / sqrt(f) with
/// K = pitch / sinh(rho) - 2 tau tanh(rho / 2).
/// Throws OutsideDomain when f(rho) <= 0.
double rot_integrand(const RotScrewParams& p, double rho);

/// Regime and critical radii for rotational H-surfaces.
/// Throws EmptyFamily (naming the violated condition) when no profile
/// exists, InvalidH for H < 0.
RegimeReport classify_rotational(double H, double d);

/// Sampled generating curve over the regime's domain, u = 0 at the
/// reference radius (rho0 if present, otherwise rho1, 0 on the axis).
/// Unbounded regimes stop at max(opts.rho_max, reference + 1).
ProfileCurve profile_numeric(const RotScrewParams& p, std::size_t n,
                             const ProfileOptions& opts = {});

/// Serial reference for profile_numeric; bitwise-identical output.
ProfileCurve profile_numeric_serial(const RotScrewParams& p, std::size_t n,
                                    const ProfileOptions& opts = {});

/// Height u(rho) with the same normalization as profile_numeric.
double rot_height(const RotScrewParams& p, double rho,
                  const ProfileOptions& opts = {});

/// Closed forms of the d = -2H, tau = -1/2 profile (antiderivatives; the
/// additive constant differs from profile_numeric's normalization).
enum class ClosedFormCase { BelowHalf, Half, AboveHalf };

ClosedFormCase closed_form_case(double H);

/// BelowHalf (0 < H < 1/2):
///   4 sqrt2 H / sqrt(1-4H^2) ln(sqrt(c) + sqrt(k + c))
///   - 2 arctan(sqrt(8H^2/(1-4H^2)) sqrt(c) / sqrt(k + c)),  k = (1+4H^2)/(1-4H^2)
/// Half:
///   2 sqrt(c) - 2 arctan(sqrt(c))
/// AboveHalf (H > 1/2, cosh(rho) <= k):
///   4 sqrt2 H / sqrt(4H^2-1) arctan(sqrt(c) / sqrt(k - c))
///   - 2 arctan(sqrt(8H^2/(4H^2-1)) sqrt(c) / sqrt(k - c)),  k = (4H^2+1)/(4H^2-1)
/// with c = cosh(rho). Throws DomainError when the case does not match H or
/// rho is outside the regime's range.
double rot_closed_form(double H, double rho, ClosedFormCase which);

inline double rot_closed_form(double H, double rho) {
  return rot_closed_form(H, rho, closed_form_case(H));
}

struct GrowthEstimate {
  double u;            // height of the H = 1/2 end at rho
  double ratio;        // u * exp(-rho / 2)
  double coefficient;  // sqrt(1 + 4 tau^2) / sqrt(alpha)
};

/// End of the H = 1/2, d = -alpha rotational surface. alpha > 0.
GrowthEstimate end_growth(double alpha, double tau, double rho,
                          const ProfileOptions& opts = {});

struct SphereBarrier {
  double rho2;
  ProfileCurve profile;
};

/// Compact rotational sphere (d = -2H) for H > 1/2; throws InvalidH otherwise.
SphereBarrier sphere_barrier(double H, double tau = -0.5, std::size_t n = 512,
                             const ProfileOptions& opts = {});

}  // namespace cmc
