#include "cmc/ambient.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmc/error.hpp"

namespace cmc {

namespace {

std::string point_text(double x, double y) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x << ", " << y << ")";
  return os.str();
}

}  // namespace

bool in_domain(Model model, double x, double y) noexcept {
  if (!std::isfinite(x) || !std::isfinite(y)) return false;
  if (model == Model::HalfPlane) return y > 0.0;
  return x * x + y * y < 1.0;
}

void require_domain(Model model, double x, double y) {
  if (!in_domain(model, x, y)) {
    fail(ErrorCode::DomainError,
         "point " + point_text(x, y) + " outside the " +
             (model == Model::Disk ? "disk" : "half-plane") + " model domain");
  }
}

ConformalFactor conformal_factor(Model model, double x, double y) {
  require_domain(model, x, y);
  if (model == Model::HalfPlane) {
    return {1.0 / y, 0.0, -1.0 / (y * y)};
  }
  const double lam = 2.0 / (1.0 - (x * x + y * y));
  // d/dx 2/(1-r^2) = 4x/(1-r^2)^2 = lambda^2 x
  return {lam, lam * lam * x, lam * lam * y};
}

ConnectionForm connection_form(const AmbientSpace& space, double x, double y) {
  const auto lam = conformal_factor(space.model, x, y);
  return {2.0 * space.tau * lam.dy / lam.value,
          -2.0 * space.tau * lam.dx / lam.value};
}

Mat3 metric_tensor(const AmbientSpace& space, const Point3& p) {
  const auto lam = conformal_factor(space.model, p.x, p.y);
  const auto [a, b] = connection_form(space, p.x, p.y);
  const double l2 = lam.value * lam.value;
  return Mat3{Vec3{l2 + a * a, a * b, a},
              Vec3{a * b, l2 + b * b, b},
              Vec3{a, b, 1.0}};
}

double metric_inner(const AmbientSpace& space, const Point3& p, const Vec3& v,
                    const Vec3& w) {
  const Mat3 g = metric_tensor(space, p);
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += v[i] * g[i][j] * w[j];
  return s;
}

Frame frame(const AmbientSpace& space, const Point3& p) {
  const auto lam = conformal_factor(space.model, p.x, p.y);
  const double l = lam.value;
  const double tau2 = 2.0 * space.tau;
  return Frame{Vec3{1.0 / l, 0.0, -tau2 * lam.dy / (l * l)},
               Vec3{0.0, 1.0 / l, tau2 * lam.dx / (l * l)},
               Vec3{0.0, 0.0, 1.0}};
}

Cartesian2 polar_to_cartesian(double rho, double theta) {
  if (!(rho >= 0.0)) {
    fail(ErrorCode::DomainError, "polar radius must be >= 0");
  }
  const double r = std::tanh(0.5 * rho);
  return {r * std::cos(theta), r * std::sin(theta)};
}

Polar2 cartesian_to_polar(double x, double y) {
  require_domain(Model::Disk, x, y);
  const double r = std::hypot(x, y);
  if (r == 0.0) return {0.0, 0.0};
  return {2.0 * std::atanh(r), std::atan2(y, x)};
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kCoefTol = 1e-12;

double coef_scale(std::complex<double> a, std::complex<double> b,
                  std::complex<double> c, std::complex<double> d) {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d), 1e-300});
}

}  // namespace

MobiusSpec::MobiusSpec(Model model, Complex a, Complex b, Complex c, Complex d)
    : model_(model), a_(a), b_(b), c_(c), d_(d) {
  const double scale = coef_scale(a, b, c, d);
  const Complex det = a * d - b * c;
  if (model == Model::HalfPlane) {
    const bool real = std::abs(a.imag()) <= kCoefTol * scale &&
                      std::abs(b.imag()) <= kCoefTol * scale &&
                      std::abs(c.imag()) <= kCoefTol * scale &&
                      std::abs(d.imag()) <= kCoefTol * scale;
    if (!real) {
      fail(ErrorCode::InvalidIsometry,
           "half-plane Moebius coefficients must be real");
    }
    a_ = a.real();
    b_ = b.real();
    c_ = c.real();
    d_ = d.real();
    if (!(det.real() > 0.0)) {
      fail(ErrorCode::InvalidIsometry,
           "ad - bc must be positive (orientation-reversing or degenerate map)");
    }
    return;
  }
  const bool su11 = std::abs(d - std::conj(a)) <= kCoefTol * scale &&
                    std::abs(c - std::conj(b)) <= kCoefTol * scale;
  if (!su11) {
    fail(ErrorCode::InvalidIsometry,
         "disk Moebius map must have the form d = conj(a), c = conj(b)");
  }
  if (!(std::norm(a) > std::norm(b))) {
    fail(ErrorCode::InvalidIsometry,
         "disk Moebius map needs |a| > |b| (ad - bc > 0)");
  }
}

MobiusSpec MobiusSpec::identity(Model model) {
  return MobiusSpec(model, 1.0, 0.0, 0.0, 1.0);
}

MobiusSpec MobiusSpec::rotation(double angle) {
  const Complex half = std::polar(1.0, 0.5 * angle);
  return MobiusSpec(Model::Disk, half, 0.0, 0.0, std::conj(half));
}

MobiusSpec MobiusSpec::disk_automorphism(double phi, Complex p) {
  if (!(std::abs(p) < 1.0)) {
    fail(ErrorCode::InvalidIsometry, "disk automorphism centre must satisfy |p| < 1");
  }
  // e^{i phi}(z - p)/(1 - conj(p) z), rescaled by e^{-i phi/2}.
  const Complex h = std::polar(1.0, 0.5 * phi);
  return MobiusSpec(Model::Disk, h, -h * p, -std::conj(h * p), std::conj(h));
}

MobiusSpec MobiusSpec::translation(double shift) {
  return MobiusSpec(Model::HalfPlane, 1.0, shift, 0.0, 1.0);
}

MobiusSpec MobiusSpec::dilation(double k) {
  if (!(k > 0.0)) fail(ErrorCode::InvalidIsometry, "dilation factor must be > 0");
  return MobiusSpec(Model::HalfPlane, k, 0.0, 0.0, 1.0);
}

MobiusSpec MobiusSpec::half_plane(double a, double b, double c, double d) {
  return MobiusSpec(Model::HalfPlane, a, b, c, d);
}

MobiusSpec::Complex MobiusSpec::apply(Complex z) const {
  return (a_ * z + b_) / (c_ * z + d_);
}

MobiusSpec::Complex MobiusSpec::derivative(Complex z) const {
  const Complex q = c_ * z + d_;
  return (a_ * d_ - b_ * c_) / (q * q);
}

double MobiusSpec::arg_derivative(Complex z) const {
  const double det_arg = std::arg(a_ * d_ - b_ * c_);
  if (model_ == Model::Disk) {
    // |c/d| < 1 on the disk, so 1 + (c/d) z stays in the right half-plane
    // and its principal argument is continuous.
    return det_arg - 2.0 * (std::arg(d_) + std::arg(1.0 + (c_ / d_) * z));
  }
  // Real coefficients: c z + d stays in one open half-plane for Im z > 0
  // (or is a nonzero real constant when c = 0).
  return det_arg - 2.0 * std::arg(c_ * z + d_);
}

MobiusSpec MobiusSpec::inverse() const {
  return MobiusSpec(model_, d_, -b_, -c_, a_);
}

Point3 isometry_apply(const AmbientSpace& space, const MobiusSpec& f,
                      double shift, const Point3& p) {
  if (f.model() != space.model) {
    fail(ErrorCode::InvalidIsometry, "Moebius map belongs to the other model");
  }
  require_domain(space.model, p.x, p.y);
  const std::complex<double> z(p.x, p.y);
  const auto w = f.apply(z);
  return {w.real(), w.imag(),
          p.t - 2.0 * space.tau * f.arg_derivative(z) + shift};
}

}  // namespace cmc
