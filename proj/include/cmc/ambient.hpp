#pragma once

#include <array>
#include <complex>

namespace cmc {

/// Model of the hyperbolic base: unit disk or upper half-plane.
enum class Model { Disk, HalfPlane };

/// PSL~2(R, tau) as the bundle over a hyperbolic model with
/// bundle curvature tau. tau = 0 is H^2 x R.
struct AmbientSpace {
  Model model = Model::Disk;
  double tau = -0.5;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;  // fiber coordinate
};

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

/// Conformal factor lambda and its analytic first partials.
struct ConformalFactor {
  double value;
  double dx;
  double dy;
};

/// Orthonormal frame {E1, E2, E3}; components in (d_x, d_y, d_t).
struct Frame {
  Vec3 e1;
  Vec3 e2;
  Vec3 e3;
};

bool in_domain(Model model, double x, double y) noexcept;

/// Throws DomainError when (x, y) is outside the open model domain.
void require_domain(Model model, double x, double y);

ConformalFactor conformal_factor(Model model, double x, double y);

inline double lambda(const AmbientSpace& space, double x, double y) {
  return conformal_factor(space.model, x, y).value;
}

/// Coefficients of g = lambda^2 (dx^2 + dy^2) + (a dx + b dy + dt)^2 with
/// a = 2 tau lambda_y / lambda and b = -2 tau lambda_x / lambda.
struct ConnectionForm {
  double a;
  double b;
};

ConnectionForm connection_form(const AmbientSpace& space, double x, double y);

Mat3 metric_tensor(const AmbientSpace& space, const Point3& p);

double metric_inner(const AmbientSpace& space, const Point3& p, const Vec3& v,
                    const Vec3& w);

Frame frame(const AmbientSpace& space, const Point3& p);

struct Cartesian2 {
  double x;
  double y;
};

struct Polar2 {
  double rho;    // hyperbolic distance from the disk origin
  double theta;  // in (-pi, pi]
};

/// (rho, theta) -> (tanh(rho/2) cos theta, tanh(rho/2) sin theta).
Cartesian2 polar_to_cartesian(double rho, double theta);

/// Inverse of polar_to_cartesian on the open disk. theta = 0 at the origin.
Polar2 cartesian_to_polar(double x, double y);

/// A positive isometry of the hyperbolic model as a Moebius map
/// z -> (a z + b) / (c z + d).
///
/// Disk maps are stored in the SU(1,1) form d = conj(a), c = conj(b) with
/// |a| > |b|, so ad - bc = |a|^2 - |b|^2 > 0. Half-plane maps have real
/// coefficients with ad - bc > 0.
class MobiusSpec {
 public:
  using Complex = std::complex<double>;

  /// Validates the coefficients; throws InvalidIsometry otherwise.
  MobiusSpec(Model model, Complex a, Complex b, Complex c, Complex d);

  static MobiusSpec identity(Model model);
  /// Disk rotation z -> e^{i angle} z about the origin.
  static MobiusSpec rotation(double angle);
  /// Disk automorphism z -> e^{i phi} (z - p) / (1 - conj(p) z), |p| < 1.
  static MobiusSpec disk_automorphism(double phi, Complex p);
  /// Half-plane z -> z + shift.
  static MobiusSpec translation(double shift);
  /// Half-plane z -> k z, k > 0.
  static MobiusSpec dilation(double k);
  /// Half-plane z -> (a z + b) / (c z + d), real, ad - bc > 0.
  static MobiusSpec half_plane(double a, double b, double c, double d);

  Model model() const noexcept { return model_; }
  Complex apply(Complex z) const;
  Complex derivative(Complex z) const;
  /// Continuous branch of arg f'(z) on the model domain.
  double arg_derivative(Complex z) const;
  MobiusSpec inverse() const;

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }

 private:
  Model model_;
  Complex a_, b_, c_, d_;
};

/// F(z, t) = (f(z), t - 2 tau arg f'(z) + shift). Throws DomainError for p
/// outside the domain and InvalidIsometry when f belongs to another model.
Point3 isometry_apply(const AmbientSpace& space, const MobiusSpec& f,
                      double shift, const Point3& p);

}  // namespace cmc
