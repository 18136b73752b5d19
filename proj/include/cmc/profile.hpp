#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmc {

enum class Family { Rotational, Parabolic };

std::string_view to_string(Family family);

enum class Regime {
  Slice,
  Catenoid,
  EmbeddedAnnulus,
  EntireGraph,
  ImmersedAnnulus,
  Sphere,
  Nodoid,
  Unduloid,
  Cylinder,
  /// Parabolic minimal graph over 0 < y < 1/|d|.
  EmbeddedStrip,
};

std::string_view to_string(Regime regime);

/// Classification outcome. For the rotational family the critical values
/// are hyperbolic radii rho1 / rho0 / rho2; for the parabolic family they
/// are the heights y1 / y0 / y2 in the half-plane.
struct RegimeReport {
  Family family = Family::Rotational;
  double H = 0.0;
  double d = 0.0;
  Regime regime = Regime::Slice;
  std::optional<double> r1;
  std::optional<double> r0;
  std::optional<double> r2;
  std::optional<double> neck_distance;
  bool embedded = true;
  std::string notes;
};

struct EndpointFlags {
  bool vertical_tangent = false;
  bool zero_derivative = false;
  /// The curve continues past this end (domain truncated or open towards
  /// the asymptotic boundary).
  bool asymptotic = false;
};

struct ProfileSample {
  double s;    // rho (rotational) or y (parabolic)
  double u;    // height
  double du;   // du/ds; +-inf at vertical tangents
};

/// Sampled generating curve t = u(s).
struct ProfileCurve {
  Family family = Family::Rotational;
  std::vector<ProfileSample> samples;
  double lo = 0.0;
  double hi = 0.0;
  EndpointFlags lo_flags;
  EndpointFlags hi_flags;
  /// Parameter value where u = 0.
  double reference = 0.0;
  /// Rotational cylinder: the curve is the vertical line s = lo.
  bool vertical_line = false;
  // Parameters the curve was generated from.
  double H = 0.0;
  double d = 0.0;
  double tau = 0.0;
  double pitch = 0.0;
};

using ParProfileCurve = ProfileCurve;

struct ProfileOptions {
  /// Absolute quadrature tolerance; a segment fails when its error
  /// estimate exceeds max(10 * tol, 1e-12 * L1).
  double tol = 1e-10;
  /// Right end for rotational profiles that extend to infinity.
  double rho_max = 6.0;
  /// Left end for parabolic profiles that reach the asymptotic boundary
  /// y = 0, as a fraction of the right end of the domain.
  double y_min_fraction = 1e-3;
  /// Right end for parabolic profiles unbounded in y.
  double y_max = 10.0;
};

/// Tolerance from CMC_PSL2_TOL when set and valid, otherwise `fallback`.
double default_tolerance(double fallback = 1e-10);

}  // namespace cmc
