#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cmc/ambient.hpp"

namespace cmc {

struct Gradient {
  double ux;
  double uy;
};

/// A vertical graph t = u(x, y) over a subdomain of the model.
///
/// Callbacks must be pure: the batch kernels call them from several
/// threads. When no analytic gradient is given, gradient() uses the
/// five-point central stencil with step `fd_step`.
class GraphFunction {
 public:
  using ValueFn = std::function<double(double, double)>;
  using GradientFn = std::function<Gradient(double, double)>;
  using DomainFn = std::function<bool(double, double)>;

  explicit GraphFunction(ValueFn value, GradientFn gradient = {},
                         DomainFn domain = {}, double fd_step = 1e-3);

  double value(double x, double y) const;
  Gradient gradient(double x, double y) const;
  bool contains(double x, double y) const;
  bool has_analytic_gradient() const noexcept { return bool(gradient_); }
  double fd_step() const noexcept { return fd_step_; }

 private:
  ValueFn value_;
  GradientFn gradient_;
  DomainFn domain_;
  double fd_step_;
};

/// (alpha/W, beta/W): components of the flux vector in the frame (e1, e2).
struct FluxField {
  double p;
  double q;
  double norm() const;
};

FluxField flux_field(const AmbientSpace& space, const GraphFunction& u,
                     double x, double y);

struct OracleOptions {
  double step = 1e-4;  // central-difference step in model coordinates
  bool richardson = true;
  /// StepTooLarge when |H(step/2) - H(step)| exceeds this.
  double error_tol = 1e-5;
};

/// Mean curvature of the graph, H = div/2 with the divergence taken in the
/// conformal base metric:
///
///   2H = (1/lambda^2) [ d_x(lambda * alpha/W) + d_y(lambda * beta/W) ],
///
/// which is div(X) for X = (alpha/W) e1 + (beta/W) e2, e_i = lambda^{-1} d_i.
/// Orientation: unit normal with positive E3 component, so the rotational
/// H = 1/2 entire graph reports +1/2.
double mean_curvature_div(const AmbientSpace& space, const GraphFunction& u,
                          double x, double y, const OracleOptions& opts = {});

/// Mean curvature from the second-order equation in the half-plane model,
///
///   2H lambda^2 m^3 = u_xx(lambda^3 + lambda u_y^2)
///                   + u_yy lambda(lambda^2 + (u_x - 2 tau lambda)^2)
///                   - 2 u_xy lambda (u_x - 2 tau lambda) u_y
///                   - u_x u_y lambda^2 (u_x - 2 tau lambda) - lambda^2 u_y^3,
///
/// with m = sqrt(lambda^2 + (2 tau lambda - u_x)^2 + u_y^2). Second
/// derivatives are central differences of the gradient. Same orientation as
/// mean_curvature_div. Throws DomainError for the disk model.
double mean_curvature_pde(const AmbientSpace& space, const GraphFunction& u,
                          double x, double y, const OracleOptions& opts = {});

enum class Oracle { Divergence, Pde };

struct SamplePoint {
  double x;
  double y;
};

/// Evaluates one oracle at every point (OpenMP).
std::vector<double> mean_curvature_batch(const AmbientSpace& space,
                                         const GraphFunction& u,
                                         std::span<const SamplePoint> points,
                                         Oracle oracle,
                                         const OracleOptions& opts = {});

/// Serial reference for mean_curvature_batch; results are bitwise equal.
std::vector<double> mean_curvature_batch_serial(
    const AmbientSpace& space, const GraphFunction& u,
    std::span<const SamplePoint> points, Oracle oracle,
    const OracleOptions& opts = {});

/// Samples t = u(x, y) on a uniform square grid, row-major in y.
class GridGraph {
 public:
  /// Accepts (x, y, u) triples in any order. Throws DomainError unless they
  /// cover a rectilinear grid with equal spacing in x and y.
  static GridGraph from_samples(std::span<const std::array<double, 3>> samples);

  std::size_t nx() const noexcept { return xs_.size(); }
  std::size_t ny() const noexcept { return ys_.size(); }
  double spacing() const noexcept { return h_; }
  double x(std::size_t i) const { return xs_[i]; }
  double y(std::size_t j) const { return ys_[j]; }
  double at(std::size_t i, std::size_t j) const { return u_[j * xs_.size() + i]; }

  /// Node values with fourth-order central-difference gradients. Queries
  /// must fall on grid nodes (OutsideDomain otherwise).
  GraphFunction graph() const;

  /// Nodes whose oracle stencil (step = 2 * spacing, gradients included)
  /// stays on the grid.
  std::vector<SamplePoint> interior() const;

 private:
  std::size_t index(double v, const std::vector<double>& axis) const;
  Gradient node_gradient(std::size_t i, std::size_t j) const;

  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> u_;
  double h_ = 0.0;
};

/// Oracle evaluated at every interior node with step 2 * spacing, so the
/// Richardson half-step lands on the grid as well.
std::vector<double> grid_mean_curvature(const AmbientSpace& space, const GridGraph& grid,
                                        std::span<const SamplePoint> points, Oracle oracle,
                                        double error_tol = 1e-5);

}  // namespace cmc
