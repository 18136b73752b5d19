#include "cmc/par_profiles.hpp"

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

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double pitch_factor(const ParScrewParams& p, double y) {
  const double k = p.pitch * y - 2.0 * p.tau;
  return std::sqrt(1.0 + k * k);
}

void require_h(double H, double d) {
  if (!std::isfinite(H) || !std::isfinite(d) || H < 0.0) {
    fail(ErrorCode::InvalidH, "parabolic profiles need finite H >= 0 and finite d");
  }
}

}  // namespace

double par_integrand(const ParScrewParams& p, double y) {
  const double g = p.d * y - 2.0 * p.H;
  if (!(y > 0.0) || !(std::abs(g) < 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "y = " << y << " outside the profile domain (need y > 0 and |dy - 2H| < 1)";
    fail(ErrorCode::OutsideDomain, os.str());
  }
  return g * pitch_factor(p, y) / (y * std::sqrt(1.0 - g * g));
}

ParDomain par_domain(double H, double d) {
  require_h(H, d);
  ParDomain dom;
  if (H == 0.0) {
    dom.hi = d == 0.0 ? kInf : 1.0 / std::abs(d);
    dom.hi_vertical = d != 0.0;
    if (d != 0.0) dom.y2 = dom.hi;
    return dom;
  }
  if (nearly_equal(H, 0.5)) {
    if (!(d > 0.0)) fail(ErrorCode::EmptyFamily, "d>0 required for H=1/2");
    dom.y0 = 1.0 / d;
    dom.y2 = 2.0 / d;
    dom.hi = 2.0 / d;
    dom.hi_vertical = true;
    return dom;
  }
  if (H > 0.5) {
    if (!(d > 0.0)) fail(ErrorCode::EmptyFamily, "d>0 required for H>1/2");
    dom.y1 = (2.0 * H - 1.0) / d;
    dom.y0 = 2.0 * H / d;
    dom.y2 = (2.0 * H + 1.0) / d;
    dom.lo = *dom.y1;
    dom.hi = *dom.y2;
    dom.lo_vertical = dom.hi_vertical = true;
    return dom;
  }
  if (d == 0.0) {
    dom.hi = kInf;
    return dom;
  }
  if (d > 0.0) {
    dom.y0 = 2.0 * H / d;
    dom.y2 = (2.0 * H + 1.0) / d;
  } else {
    dom.y2 = (1.0 - 2.0 * H) / (-d);
  }
  dom.hi = *dom.y2;
  dom.hi_vertical = true;
  return dom;
}

RegimeReport classify_parabolic(double H, double d) {
  const ParDomain dom = par_domain(H, d);
  RegimeReport r;
  r.family = Family::Parabolic;
  r.H = H;
  r.d = d;
  r.r1 = dom.y1;
  r.r0 = dom.y0;
  r.r2 = dom.y2;
  if (H == 0.0) {
    if (d == 0.0) {
      r.regime = Regime::Slice;
      r.notes = "minimal slice t = 0";
    } else {
      r.regime = Regime::EmbeddedStrip;
      r.notes = "minimal vertical graph over 0 < y < 1/|d|; complete and embedded "
                "after the rotation by pi about the y-axis";
    }
    return r;
  }
  if (nearly_equal(H, 0.5)) {
    r.regime = Regime::ImmersedAnnulus;
    r.embedded = false;
    r.notes = "properly immersed annulus symmetric about t = 0, "
              "asymptotic to the asymptotic boundary; the endpoint 2/d is reported "
              "as y2";
    return r;
  }
  if (H > 0.5) {
    r.regime = Regime::ImmersedAnnulus;
    r.embedded = false;
    r.notes = "immersed nonembedded annulus invariant by a vertical translation, "
              "between the vertical cylinders y = y1 and y = y2";
    return r;
  }
  if (d == 0.0) {
    r.regime = Regime::EntireGraph;
    r.notes = "limit surface F(y) = -2 sqrt(1+4tau^2) H ln(y) / sqrt(1-4H^2)";
  } else if (d > 0.0) {
    r.regime = Regime::ImmersedAnnulus;
    r.embedded = false;
    r.notes = "properly immersed annulus symmetric about t = 0, maximal height y2";
  } else {
    r.regime = Regime::EmbeddedAnnulus;
    r.notes = "properly embedded annulus symmetric about t = 0, maximal height y2";
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct ParSetup {
  ParScrewParams p;
  ParDomain dom;
  std::vector<Piece> pieces;
  double lo = 0.0;
  double hi = 0.0;
  double reference = 0.0;
  double y_plus = kNaN;   // dy - 2H = +1
  double y_minus = kNaN;  // dy - 2H = -1
  double y0 = kNaN;
};

// 1 - G^2 = d^2 (y_plus - y)(y - y_minus), offsets exact at piece ends.
double stable_slope(const ParSetup& st, const MappedPoint& m) {
  const double H = st.p.H;
  const double d = st.p.d;
  const double y = m.s;
  if (d == 0.0) {
    if (H == 0.0) return 0.0;
    return -2.0 * H * pitch_factor(st.p, y) / (y * std::sqrt(1.0 - 4.0 * H * H));
  }
  auto offset_to = [&](double root) {
    if (m.piece->a == root) return y - root < 0.0 ? -m.from_a : m.from_a;
    if (m.piece->b == root) return -m.to_b;
    return y - root;
  };
  const double plus = -offset_to(st.y_plus);   // y_plus - y
  const double minus = offset_to(st.y_minus);  // y - y_minus
  const double one_minus_g2 = d * d * plus * minus;
  const double g = std::isnan(st.y0) ? d * y - 2.0 * H : d * offset_to(st.y0);
  return g * pitch_factor(st.p, y) / (y * std::sqrt(one_minus_g2));
}

ParSetup make_setup(const ParScrewParams& p, const ProfileOptions& opts,
                    double y_floor, double y_ceiling) {
  if (!std::isfinite(p.tau) || !std::isfinite(p.pitch)) {
    fail(ErrorCode::DomainError, "tau and pitch must be finite");
  }
  ParSetup st;
  st.p = p;
  st.dom = par_domain(p.H, p.d);
  if (p.d != 0.0) {
    st.y_plus = (1.0 + 2.0 * p.H) / p.d;
    st.y_minus = (2.0 * p.H - 1.0) / p.d;
  }
  st.y0 = st.dom.y0.value_or(kNaN);
  const auto& dom = st.dom;

  st.hi = std::isinf(dom.hi) ? std::max(opts.y_max, y_ceiling) : dom.hi;
  // Reuse the exact root values so piece ends compare equal to them.
  if (dom.hi_vertical) st.hi = std::abs(st.hi - st.y_plus) < std::abs(st.hi - st.y_minus)
                                   ? st.y_plus
                                   : st.y_minus;
  st.lo = dom.lo > 0.0 ? dom.lo : std::min(opts.y_min_fraction * st.hi, y_floor);
  if (dom.lo_vertical) st.lo = st.y_minus;

  const bool reaches_boundary = dom.lo == 0.0;
  if (!std::isnan(st.y0)) {
    st.reference = st.y0;
    st.pieces = {{st.lo, st.y0, reaches_boundary ? MapKind::LogLo : MapKind::SqrtLo},
                 {st.y0, st.hi, MapKind::SqrtHi}};
  } else if (dom.hi_vertical) {
    st.reference = st.hi;
    const double mid = 0.5 * st.hi;
    if (st.lo < mid) {
      st.pieces = {{st.lo, mid, MapKind::LogLo}, {mid, st.hi, MapKind::SqrtHi}};
    } else {
      st.pieces = {{st.lo, st.hi, MapKind::SqrtHi}};
    }
  } else {
    st.reference = st.hi;
    st.pieces = {{st.lo, st.hi, MapKind::LogLo}};
  }
  return st;
}

ParProfileCurve build_profile(const ParScrewParams& p, std::size_t n,
                              const ProfileOptions& opts, bool parallel) {
  const ParSetup st = make_setup(p, opts, kInf, 0.0);
  ParProfileCurve curve;
  curve.family = Family::Parabolic;
  curve.H = p.H;
  curve.d = p.d;
  curve.tau = p.tau;
  curve.pitch = p.pitch;
  curve.lo = st.lo;
  curve.hi = st.hi;
  curve.reference = st.reference;
  curve.lo_flags.vertical_tangent = st.dom.lo_vertical;
  curve.lo_flags.asymptotic = st.dom.lo == 0.0;
  curve.hi_flags.vertical_tangent = st.dom.hi_vertical;
  curve.hi_flags.asymptotic = std::isinf(st.dom.hi);

  const auto grid = detail::make_grid(st.pieces, std::max<std::size_t>(n, 2));
  const detail::Slope slope = [&st](const MappedPoint& m) { return stable_slope(st, m); };
  const auto sums = parallel ? detail::cumulative(slope, st.pieces, grid, opts.tol)
                             : detail::cumulative_serial(slope, st.pieces, grid, opts.tol);
  const auto ref_idx = static_cast<std::size_t>(
      std::find(grid.s.begin(), grid.s.end(), st.reference) - grid.s.begin());
  const double offset = sums[ref_idx];

  curve.samples.resize(grid.s.size());
  const std::size_t last = grid.s.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    const double y = grid.s[i];
    const bool vertical = (i == 0 && st.dom.lo_vertical) || (i == last && st.dom.hi_vertical);
    double du;
    if (vertical) {
      du = std::copysign(kInf, p.d * y - 2.0 * p.H);
    } else {
      const Piece& piece = st.pieces[grid.piece_of[i]];
      du = stable_slope(st, detail::map_point(piece, grid.sigma[i]));
    }
    curve.samples[i] = {y, sums[i] - offset, du};
  }
  curve.samples[ref_idx].u = 0.0;
  return curve;
}

}  // namespace

ParProfileCurve par_profile_numeric(const ParScrewParams& p, std::size_t n,
                                    const ProfileOptions& opts) {
  return build_profile(p, n, opts, true);
}

ParProfileCurve par_profile_numeric_serial(const ParScrewParams& p, std::size_t n,
                                           const ProfileOptions& opts) {
  return build_profile(p, n, opts, false);
}

double par_height(const ParScrewParams& p, double y, const ProfileOptions& opts) {
  if (!(y > 0.0)) fail(ErrorCode::OutsideDomain, "parabolic heights need y > 0");
  const ParSetup st = make_setup(p, opts, y, y);
  if (!(y >= st.lo && y <= st.hi)) {
    std::ostringstream os;
    os.precision(17);
    os << "y = " << y << " outside the profile domain [" << st.lo << ", " << st.hi << "]";
    fail(ErrorCode::OutsideDomain, os.str());
  }
  const detail::Slope slope = [&st](const MappedPoint& m) { return stable_slope(st, m); };
  return detail::integral_to(slope, st.pieces, y, opts.tol) -
         detail::integral_to(slope, st.pieces, st.reference, opts.tol);
}

double par_closed_form(double H, double d, double tau, double y) {
  require_h(H, d);
  const double g = d * y - 2.0 * H;
  if (!(y > 0.0) || !(std::abs(g) <= 1.0)) {
    fail(ErrorCode::DomainError, "y outside the closed form's domain");
  }
  const double k = std::sqrt(1.0 + 4.0 * tau * tau);
  const double phi = std::asin(g);
  if (H == 0.0) return k * phi;
  if (nearly_equal(H, 0.5)) {
    return k * phi + 2.0 * k / (std::tan(0.5 * phi) + 1.0);
  }
  if (H > 0.5) {
    const double s = std::sqrt(4.0 * H * H - 1.0);
    return k * phi -
           4.0 * k * H / s * std::atan((2.0 * H * std::tan(0.5 * phi) + 1.0) / s);
  }
  fail(ErrorCode::DomainError, "no closed form for 0 < H < 1/2");
}

double par_limit_surface(double H, double tau, double y) {
  if (!(H > 0.0 && H < 0.5) || !(y > 0.0)) {
    fail(ErrorCode::DomainError, "the limit surface needs 0 < H < 1/2 and y > 0");
  }
  return -2.0 * std::sqrt(1.0 + 4.0 * tau * tau) * H * std::log(y) /
         std::sqrt(1.0 - 4.0 * H * H);
}

}  // namespace cmc
