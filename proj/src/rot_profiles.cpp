#include "cmc/rot_profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cmc/detail/mapped_quadrature.hpp"
#include "cmc/detail/numeric.hpp"
#include "cmc/error.hpp"

namespace cmc {

using detail::MapKind;
using detail::MappedPoint;
using detail::Piece;
using detail::nearly_equal;

double f_poly(double H, double d, double rho) {
  const double s = std::sinh(rho);
  const double g = d + 2.0 * H * std::cosh(rho);
  return s * s - g * g;
}

double f_poly_expanded(double H, double d, double rho) {
  const double c = std::cosh(rho);
  return (1.0 - 4.0 * H * H) * c * c - 4.0 * H * d * c - (1.0 + d * d);
}

double g_fun(double H, double d, double rho) {
  return d + 2.0 * H * std::cosh(rho);
}

namespace {

double pitch_factor(const RotScrewParams& p, double rho) {
  const double k = p.pitch / std::sinh(rho) - 2.0 * p.tau * std::tanh(0.5 * rho);
  return std::sqrt(1.0 + k * k);
}

}  // namespace

double rot_integrand(const RotScrewParams& p, double rho) {
  const double f = f_poly(p.H, p.d, rho);
  if (!(f > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "f(rho) = " << f << " <= 0 at rho = " << rho << " (H = " << p.H
       << ", d = " << p.d << ")";
    fail(ErrorCode::OutsideDomain, os.str());
  }
  return g_fun(p.H, p.d, rho) * pitch_factor(p, rho) / std::sqrt(f);
}

// ---------------------------------------------------------------------------
// Classification

RegimeReport classify_rotational(double H, double d) {
  if (!std::isfinite(H) || !std::isfinite(d) || H < 0.0) {
    fail(ErrorCode::InvalidH, "rotational profiles need finite H >= 0 and finite d");
  }
  RegimeReport r;
  r.family = Family::Rotational;
  r.H = H;
  r.d = d;

  if (H == 0.0) {
    if (d == 0.0) {
      r.regime = Regime::Slice;
      r.notes = "minimal slice t = 0";
      return r;
    }
    r.regime = Regime::Catenoid;
    r.r1 = std::asinh(std::abs(d));
    r.neck_distance = r.r1;
    r.notes = d > 0.0 ? "minimal catenoid, embedded annulus with neck at rho = asinh(d)"
                      : "minimal catenoid, mirror image (t -> -t) of the d = |d| catenoid";
    return r;
  }

  const double H2 = H * H;
  if (nearly_equal(H, 0.5)) {
    if (!(d < 0.0) || nearly_equal(d, 0.0)) {
      fail(ErrorCode::EmptyFamily, "d<0 required for H=1/2");
    }
    const double c1 = (1.0 + d * d) / (-2.0 * d);
    if (nearly_equal(d, -1.0)) {
      r.regime = Regime::EntireGraph;
      r.r1 = 0.0;
      r.notes = "entire vertical graph tangent to the slice t = 0 at the origin";
      return r;
    }
    r.r1 = std::acosh(c1);
    r.neck_distance = r.r1;
    if (d > -1.0) {
      r.regime = Regime::EmbeddedAnnulus;
      r.notes = "properly embedded annulus symmetric about t = 0";
    } else {
      r.regime = Regime::ImmersedAnnulus;
      r.r0 = std::acosh(-d);
      r.embedded = false;
      r.notes = "properly immersed, nonembedded annulus symmetric about t = 0";
    }
    return r;
  }

  if (H < 0.5) {
    const double a = 1.0 - 4.0 * H2;
    if (nearly_equal(d, -2.0 * H)) {
      r.regime = Regime::EntireGraph;
      r.r1 = 0.0;
      r.notes = "entire vertical graph tangent to the slice t = 0 at the origin";
      return r;
    }
    const double c1 = (2.0 * d * H + std::sqrt(a + d * d)) / a;
    r.r1 = std::acosh(std::max(1.0, c1));
    r.neck_distance = r.r1;
    if (d > -2.0 * H) {
      r.regime = Regime::EmbeddedAnnulus;
      r.notes = "properly embedded annulus symmetric about t = 0";
    } else {
      r.regime = Regime::ImmersedAnnulus;
      r.r0 = std::acosh(-d / (2.0 * H));
      r.embedded = false;
      r.notes = "properly immersed, nonembedded annulus symmetric about t = 0";
    }
    return r;
  }

  const double s = std::sqrt(4.0 * H2 - 1.0);
  if (d > -s && !nearly_equal(d, -s)) {
    fail(ErrorCode::EmptyFamily, "d<=-sqrt(4H^2-1) required for H>1/2");
  }
  if (nearly_equal(d, -s)) {
    r.regime = Regime::Cylinder;
    r.r1 = std::acosh(2.0 * H / s);
    r.r2 = r.r1;
    r.notes = "vertical cylinder over a circle";
    return r;
  }
  const double a = 1.0 - 4.0 * H2;
  const double disc = std::sqrt(std::max(0.0, a + d * d));
  if (nearly_equal(d, -2.0 * H)) {
    r.regime = Regime::Sphere;
    r.r1 = 0.0;
    r.r2 = std::acosh((4.0 * H2 + 1.0) / (4.0 * H2 - 1.0));
    r.notes = "embedded sphere";
    return r;
  }
  r.r1 = std::acosh(std::max(1.0, (2.0 * d * H + disc) / a));
  r.r2 = std::acosh((2.0 * d * H - disc) / a);
  r.neck_distance = r.r1;
  if (d < -2.0 * H) {
    r.regime = Regime::Nodoid;
    r.r0 = std::acosh(-d / (2.0 * H));
    r.embedded = false;
    r.notes = "immersed nonembedded annulus, periodic under a vertical translation";
  } else {
    r.regime = Regime::Unduloid;
    r.notes = "embedded annulus, periodic under a vertical translation";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Profiles

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RotSetup {
  RotScrewParams p;
  RegimeReport report;
  std::vector<Piece> pieces;
  double lo = 0.0;
  double hi = 0.0;
  double reference = 0.0;
  double rho1 = kNaN;
  double rho0 = kNaN;
  double rho2 = kNaN;
  bool axis = false;  // d = -2H with H > 0: the profile starts on the axis
};

// cosh(x) - cosh(y) = 2 sinh((x + y)/2) sinh((x - y)/2), with x - y given.
double cosh_gap(double x, double y, double diff) {
  return 2.0 * std::sinh(0.5 * (x + y)) * std::sinh(0.5 * diff);
}

// Slope du/drho. d1 = rho - rho1 and d2 = rho2 - rho, exact when the piece
// ends at those roots, so f keeps its relative precision at the endpoint.
double stable_slope(const RotSetup& st, double rho, double d1, double d2) {
  const double H = st.p.H;
  const double d = st.p.d;
  const double tau = st.p.tau;
  const double c = std::cosh(rho);

  if (H == 0.0) {
    if (d == 0.0) return 0.0;
    const double gap = 2.0 * std::cosh(0.5 * (rho + st.rho1)) * std::sinh(0.5 * d1);
    const double f = gap * (std::sinh(rho) + std::abs(d));
    return d * pitch_factor(st.p, rho) / std::sqrt(f);
  }

  if (st.axis) {
    // f = 2 sinh^2(rho/2) B(rho) and g = 4H sinh^2(rho/2).
    double b;
    if (nearly_equal(H, 0.5)) {
      b = 2.0;
    } else if (H < 0.5) {
      b = (1.0 - 4.0 * H * H) * c + 1.0 + 4.0 * H * H;
    } else {
      b = (4.0 * H * H - 1.0) * cosh_gap(st.rho2, rho, d2);
    }
    const double sh = std::sinh(0.5 * rho);
    const double ch = std::cosh(0.5 * rho);
    const double k = st.p.pitch / (2.0 * ch) - 2.0 * tau * std::tanh(0.5 * rho) * sh;
    const double q = std::sqrt(sh * sh + k * k);  // sinh(rho/2) sqrt(1 + K^2)
    return 4.0 * H * q / std::sqrt(2.0 * b);
  }

  double f;
  if (nearly_equal(H, 0.5)) {
    f = -2.0 * d * cosh_gap(rho, st.rho1, d1);
  } else if (H < 0.5) {
    const double a = 1.0 - 4.0 * H * H;
    const double c2 = (2.0 * d * H - std::sqrt(a + d * d)) / a;
    f = a * cosh_gap(rho, st.rho1, d1) * (c - c2);
  } else {
    f = (4.0 * H * H - 1.0) * cosh_gap(rho, st.rho1, d1) * cosh_gap(st.rho2, rho, d2);
  }
  const double g = std::isnan(st.rho0)
                       ? d + 2.0 * H * c
                       : 2.0 * H * cosh_gap(rho, st.rho0, rho - st.rho0);
  return g * pitch_factor(st.p, rho) / std::sqrt(f);
}

double slope_at(const RotSetup& st, const MappedPoint& m) {
  const double d1 = (m.piece->a == st.rho1) ? m.from_a : m.s - st.rho1;
  const double d2 = (m.piece->b == st.rho2) ? m.to_b : st.rho2 - m.s;
  return stable_slope(st, m.s, d1, d2);
}

RotSetup make_setup(const RotScrewParams& p, const ProfileOptions& opts) {
  if (!std::isfinite(p.tau) || !std::isfinite(p.pitch)) {
    fail(ErrorCode::DomainError, "tau and pitch must be finite");
  }
  RotSetup st;
  st.p = p;
  st.report = classify_rotational(p.H, p.d);
  const auto& r = st.report;
  st.rho1 = r.r1.value_or(kNaN);
  st.rho0 = r.r0.value_or(kNaN);
  st.rho2 = r.r2.value_or(kNaN);
  auto unbounded_hi = [&](double start) { return std::max(opts.rho_max, start + 1.0); };

  switch (r.regime) {
    case Regime::Slice:
      st.lo = 0.0;
      st.hi = unbounded_hi(0.0);
      st.pieces = {{st.lo, st.hi, MapKind::Linear}};
      st.reference = 0.0;
      st.rho1 = 0.0;
      break;
    case Regime::Catenoid:
    case Regime::EmbeddedAnnulus:
      st.lo = st.rho1;
      st.hi = unbounded_hi(st.rho1);
      st.pieces = {{st.lo, st.hi, MapKind::SqrtLo}};
      st.reference = st.rho1;
      break;
    case Regime::EntireGraph:
      st.axis = true;
      st.lo = 0.0;
      st.hi = unbounded_hi(0.0);
      st.pieces = {{st.lo, st.hi, MapKind::Linear}};
      st.reference = 0.0;
      break;
    case Regime::ImmersedAnnulus:
      st.lo = st.rho1;
      st.hi = unbounded_hi(st.rho0);
      st.pieces = {{st.rho1, st.rho0, MapKind::SqrtLo},
                   {st.rho0, st.hi, MapKind::Linear}};
      st.reference = st.rho0;
      break;
    case Regime::Sphere:
      st.axis = true;
      st.lo = 0.0;
      st.hi = st.rho2;
      st.pieces = {{0.0, st.rho2, MapKind::SqrtHi}};
      st.reference = 0.0;
      break;
    case Regime::Nodoid:
      st.lo = st.rho1;
      st.hi = st.rho2;
      st.pieces = {{st.rho1, st.rho0, MapKind::SqrtLo},
                   {st.rho0, st.rho2, MapKind::SqrtHi}};
      st.reference = st.rho0;
      break;
    case Regime::Unduloid:
      st.lo = st.rho1;
      st.hi = st.rho2;
      st.pieces = {{st.rho1, st.rho2, MapKind::SqrtBoth}};
      st.reference = st.rho1;
      break;
    case Regime::Cylinder:
      st.lo = st.hi = st.reference = st.rho1;
      break;
    case Regime::EmbeddedStrip:
      break;
  }
  return st;
}

bool bounded_above(Regime regime) {
  return regime == Regime::Sphere || regime == Regime::Nodoid ||
         regime == Regime::Unduloid || regime == Regime::Cylinder;
}

double endpoint_slope(const RotSetup& st, double rho, bool vertical) {
  if (vertical) {
    const double g = g_fun(st.p.H, st.p.d, rho);
    return std::copysign(std::numeric_limits<double>::infinity(), g);
  }
  return stable_slope(st, rho, rho - st.rho1, st.rho2 - rho);
}

ProfileCurve build_profile(const RotScrewParams& p, std::size_t n,
                           const ProfileOptions& opts, bool parallel) {
  const RotSetup st = make_setup(p, opts);
  ProfileCurve curve;
  curve.family = Family::Rotational;
  curve.H = p.H;
  curve.d = p.d;
  curve.tau = p.tau;
  curve.pitch = p.pitch;
  curve.lo = st.lo;
  curve.hi = st.hi;
  curve.reference = st.reference;

  const Regime regime = st.report.regime;
  if (regime == Regime::Cylinder) {
    curve.vertical_line = true;
    curve.lo_flags.vertical_tangent = curve.hi_flags.vertical_tangent = true;
    curve.samples = {{st.rho1, 0.0, std::numeric_limits<double>::infinity()}};
    return curve;
  }

  curve.lo_flags.vertical_tangent = !st.axis && regime != Regime::Slice;
  curve.lo_flags.zero_derivative = (st.axis && p.pitch == 0.0) || regime == Regime::Slice;
  curve.hi_flags.vertical_tangent = bounded_above(regime);
  curve.hi_flags.asymptotic = !bounded_above(regime);
  if (regime == Regime::Slice) curve.hi_flags.zero_derivative = true;

  const auto grid = detail::make_grid(st.pieces, std::max<std::size_t>(n, 2));
  const detail::Slope slope = [&st](const MappedPoint& m) { return slope_at(st, m); };
  const auto sums = parallel ? detail::cumulative(slope, st.pieces, grid, opts.tol)
                             : detail::cumulative_serial(slope, st.pieces, grid, opts.tol);
  const auto ref_it = std::find(grid.s.begin(), grid.s.end(), st.reference);
  const double offset = sums[static_cast<std::size_t>(ref_it - grid.s.begin())];

  curve.samples.resize(grid.s.size());
  const std::size_t last = grid.s.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    const double rho = grid.s[i];
    double du;
    if (i == 0) {
      du = endpoint_slope(st, rho, curve.lo_flags.vertical_tangent);
    } else if (i == last) {
      du = endpoint_slope(st, rho, curve.hi_flags.vertical_tangent);
    } else {
      const MappedPoint m =
          detail::map_point(st.pieces[grid.piece_of[i]], grid.sigma[i]);
      du = slope_at(st, m);
    }
    curve.samples[i] = {rho, sums[i] - offset, du};
  }
  curve.samples[static_cast<std::size_t>(ref_it - grid.s.begin())].u = 0.0;
  return curve;
}

}  // namespace

ProfileCurve profile_numeric(const RotScrewParams& p, std::size_t n,
                             const ProfileOptions& opts) {
  return build_profile(p, n, opts, true);
}

ProfileCurve profile_numeric_serial(const RotScrewParams& p, std::size_t n,
                                    const ProfileOptions& opts) {
  return build_profile(p, n, opts, false);
}

double rot_height(const RotScrewParams& p, double rho, const ProfileOptions& opts) {
  ProfileOptions o = opts;
  o.rho_max = std::max(opts.rho_max, rho);
  const RotSetup st = make_setup(p, o);
  if (st.report.regime == Regime::Cylinder) {
    fail(ErrorCode::OutsideDomain, "the cylinder profile is a vertical line");
  }
  if (!(rho >= st.lo && rho <= st.hi)) {
    std::ostringstream os;
    os.precision(17);
    os << "rho = " << rho << " outside the profile domain [" << st.lo << ", " << st.hi
       << "]";
    fail(ErrorCode::OutsideDomain, os.str());
  }
  const detail::Slope slope = [&st](const MappedPoint& m) { return slope_at(st, m); };
  return detail::integral_to(slope, st.pieces, rho, o.tol) -
         detail::integral_to(slope, st.pieces, st.reference, o.tol);
}

// ---------------------------------------------------------------------------
// Closed forms (tau = -1/2, d = -2H)

ClosedFormCase closed_form_case(double H) {
  if (!(H > 0.0)) fail(ErrorCode::DomainError, "closed forms need H > 0");
  if (nearly_equal(H, 0.5)) return ClosedFormCase::Half;
  return H < 0.5 ? ClosedFormCase::BelowHalf : ClosedFormCase::AboveHalf;
}

double rot_closed_form(double H, double rho, ClosedFormCase which) {
  if (closed_form_case(H) != which) {
    fail(ErrorCode::DomainError, "closed-form case does not match H");
  }
  if (!(rho >= 0.0)) fail(ErrorCode::DomainError, "closed forms need rho >= 0");
  const double c = std::cosh(rho);
  const double sc = std::sqrt(c);
  const double H2 = H * H;
  switch (which) {
    case ClosedFormCase::Half:
      return 2.0 * sc - 2.0 * std::atan(sc);
    case ClosedFormCase::BelowHalf: {
      const double a = 1.0 - 4.0 * H2;
      const double k = (1.0 + 4.0 * H2) / a;
      const double root = std::sqrt(k + c);
      return 4.0 * std::sqrt(2.0) * H / std::sqrt(a) * std::log(sc + root) -
             2.0 * std::atan(std::sqrt(8.0 * H2 / a) * sc / root);
    }
    case ClosedFormCase::AboveHalf: {
      const double a = 4.0 * H2 - 1.0;
      const double k = (4.0 * H2 + 1.0) / a;
      if (c > k) {
        fail(ErrorCode::DomainError, "rho beyond the sphere's maximal radius");
      }
      const double root = std::sqrt(k - c);
      // atan2 keeps the value finite (pi/2) at rho = rho2.
      return 4.0 * std::sqrt(2.0) * H / std::sqrt(a) * std::atan2(sc, root) -
             2.0 * std::atan2(std::sqrt(8.0 * H2 / a) * sc, root);
    }
  }
  return 0.0;
}

GrowthEstimate end_growth(double alpha, double tau, double rho,
                          const ProfileOptions& opts) {
  if (!(alpha > 0.0)) fail(ErrorCode::DomainError, "alpha = -d must be > 0");
  const RotScrewParams p{0.5, -alpha, tau, 0.0};
  const double u = rot_height(p, rho, opts);
  return {u, u * std::exp(-0.5 * rho), std::sqrt(1.0 + 4.0 * tau * tau) / std::sqrt(alpha)};
}

SphereBarrier sphere_barrier(double H, double tau, std::size_t n,
                             const ProfileOptions& opts) {
  if (!(H > 0.5) || nearly_equal(H, 0.5)) {
    fail(ErrorCode::InvalidH, "the sphere barrier needs H > 1/2");
  }
  ProfileCurve profile = profile_numeric({H, -2.0 * H, tau, 0.0}, n, opts);
  return {profile.hi, std::move(profile)};
}

}  // namespace cmc
