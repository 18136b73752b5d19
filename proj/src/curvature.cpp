#include "cmc/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cmc/detail/parallel.hpp"
#include "cmc/error.hpp"

namespace cmc {

namespace {

std::string where(double x, double y) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x << ", " << y << ")";
  return os.str();
}

double finite_or_throw(double v, double x, double y, const char* what) {
  if (!std::isfinite(v)) {
    fail(ErrorCode::NonFinite, std::string(what) + " is not finite at " + where(x, y));
  }
  return v;
}

}  // namespace

GraphFunction::GraphFunction(ValueFn value, GradientFn gradient,
                             DomainFn domain, double fd_step)
    : value_(std::move(value)),
      gradient_(std::move(gradient)),
      domain_(std::move(domain)),
      fd_step_(fd_step) {}

bool GraphFunction::contains(double x, double y) const {
  return !domain_ || domain_(x, y);
}

double GraphFunction::value(double x, double y) const {
  if (!contains(x, y)) {
    fail(ErrorCode::DomainError, "graph evaluated outside its domain at " + where(x, y));
  }
  return finite_or_throw(value_(x, y), x, y, "u");
}

Gradient GraphFunction::gradient(double x, double y) const {
  if (gradient_) {
    if (!contains(x, y)) {
      fail(ErrorCode::DomainError,
           "graph gradient evaluated outside its domain at " + where(x, y));
    }
    const Gradient g = gradient_(x, y);
    finite_or_throw(g.ux, x, y, "u_x");
    finite_or_throw(g.uy, x, y, "u_y");
    return g;
  }
  const double h = fd_step_;
  auto five_point = [&](double dx, double dy) {
    const double fp2 = value(x + 2 * dx, y + 2 * dy);
    const double fp1 = value(x + dx, y + dy);
    const double fm1 = value(x - dx, y - dy);
    const double fm2 = value(x - 2 * dx, y - 2 * dy);
    return (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
  };
  return {five_point(h, 0.0), five_point(0.0, h)};
}

double FluxField::norm() const { return std::hypot(p, q); }

FluxField flux_field(const AmbientSpace& space, const GraphFunction& u,
                     double x, double y) {
  const auto lam = conformal_factor(space.model, x, y);
  const Gradient g = u.gradient(x, y);
  const double l = lam.value;
  const double alpha = g.ux / l + 2.0 * space.tau * lam.dy / (l * l);
  const double beta = g.uy / l - 2.0 * space.tau * lam.dx / (l * l);
  const double w = std::sqrt(1.0 + alpha * alpha + beta * beta);
  return {alpha / w, beta / w};
}

namespace {

void require_stencil(const AmbientSpace& space, const GraphFunction& u,
                     double x, double y, double reach) {
  const double pts[5][2] = {{x, y}, {x + reach, y}, {x - reach, y},
                            {x, y + reach}, {x, y - reach}};
  for (const auto& p : pts) {
    if (!in_domain(space.model, p[0], p[1]) || !u.contains(p[0], p[1])) {
      fail(ErrorCode::DomainError, "finite-difference stencil leaves the domain at " +
                                       where(x, y));
    }
  }
}

double div_at_step(const AmbientSpace& space, const GraphFunction& u, double x,
                   double y, double h) {
  auto scaled = [&](double px, double py) {
    const double l = lambda(space, px, py);
    const FluxField f = flux_field(space, u, px, py);
    return std::pair{l * f.p, l * f.q};
  };
  const double l = lambda(space, x, y);
  const double dx = scaled(x + h, y).first - scaled(x - h, y).first;
  const double dy = scaled(x, y + h).second - scaled(x, y - h).second;
  return 0.5 * (dx + dy) / (2.0 * h * l * l);
}

double pde_at_step(const AmbientSpace& space, const GraphFunction& u, double x,
                   double y, double h) {
  const double l = lambda(space, x, y);
  const double tau = space.tau;
  const Gradient g = u.gradient(x, y);
  const Gradient gxp = u.gradient(x + h, y);
  const Gradient gxm = u.gradient(x - h, y);
  const Gradient gyp = u.gradient(x, y + h);
  const Gradient gym = u.gradient(x, y - h);
  const double ux = g.ux;
  const double uy = g.uy;
  const double uxx = (gxp.ux - gxm.ux) / (2.0 * h);
  const double uyy = (gyp.uy - gym.uy) / (2.0 * h);
  const double uxy = ((gyp.ux - gym.ux) + (gxp.uy - gxm.uy)) / (4.0 * h);
  const double p = ux - 2.0 * tau * l;
  const double m = std::sqrt(l * l + p * p + uy * uy);
  const double rhs = uxx * (l * l * l + l * uy * uy) +
                     uyy * l * (l * l + p * p) - 2.0 * uxy * l * p * uy -
                     ux * uy * l * l * p - l * l * uy * uy * uy;
  return rhs / (2.0 * l * l * m * m * m);
}

template <class StepFn>
double extrapolate(StepFn at_step, const OracleOptions& opts, double x, double y) {
  const double coarse = at_step(opts.step);
  if (!opts.richardson) return coarse;
  const double fine = at_step(0.5 * opts.step);
  const double estimate = std::abs(fine - coarse);
  if (!(estimate <= opts.error_tol)) {
    std::ostringstream os;
    os << "Richardson error estimate " << estimate << " exceeds " << opts.error_tol
       << " at " << where(x, y);
    fail(ErrorCode::StepTooLarge, os.str());
  }
  return (4.0 * fine - coarse) / 3.0;
}

double reach(const GraphFunction& u, double step) {
  return step + (u.has_analytic_gradient() ? 0.0 : 2.0 * u.fd_step());
}

}  // namespace

double mean_curvature_div(const AmbientSpace& space, const GraphFunction& u,
                          double x, double y, const OracleOptions& opts) {
  require_stencil(space, u, x, y, reach(u, opts.step));
  return extrapolate(
      [&](double h) { return div_at_step(space, u, x, y, h); }, opts, x, y);
}

double mean_curvature_pde(const AmbientSpace& space, const GraphFunction& u,
                          double x, double y, const OracleOptions& opts) {
  if (space.model != Model::HalfPlane) {
    fail(ErrorCode::DomainError, "the PDE oracle is defined for the half-plane model");
  }
  require_stencil(space, u, x, y, reach(u, opts.step));
  return extrapolate(
      [&](double h) { return pde_at_step(space, u, x, y, h); }, opts, x, y);
}

namespace {

double evaluate(const AmbientSpace& space, const GraphFunction& u,
                const SamplePoint& p, Oracle oracle, const OracleOptions& opts) {
  return oracle == Oracle::Divergence ? mean_curvature_div(space, u, p.x, p.y, opts)
                                      : mean_curvature_pde(space, u, p.x, p.y, opts);
}

}  // namespace

std::vector<double> mean_curvature_batch(const AmbientSpace& space,
                                         const GraphFunction& u,
                                         std::span<const SamplePoint> points,
                                         Oracle oracle,
                                         const OracleOptions& opts) {
  std::vector<double> out(points.size());
  detail::parallel_for(static_cast<std::ptrdiff_t>(points.size()),
                       [&](std::ptrdiff_t i) {
                         out[i] = evaluate(space, u, points[i], oracle, opts);
                       });
  return out;
}

std::vector<double> mean_curvature_batch_serial(
    const AmbientSpace& space, const GraphFunction& u,
    std::span<const SamplePoint> points, Oracle oracle,
    const OracleOptions& opts) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(evaluate(space, u, p, oracle, opts));
  return out;
}

}  // namespace cmc

// ---------------------------------------------------------------------------

namespace cmc {

namespace {

std::vector<double> unique_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double uniform_spacing(const std::vector<double>& axis, const char* name) {
  if (axis.size() < 2) {
    fail(ErrorCode::DomainError, std::string("grid needs at least two distinct ") + name);
  }
  const double h = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (std::abs(axis[i] - axis[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      fail(ErrorCode::DomainError, std::string("grid ") + name + " values are not uniformly spaced");
    }
  }
  return h;
}

}  // namespace

GridGraph GridGraph::from_samples(std::span<const std::array<double, 3>> samples) {
  GridGraph g;
  std::vector<double> xs, ys;
  for (const auto& s : samples) {
    if (!std::isfinite(s[0]) || !std::isfinite(s[1]) || !std::isfinite(s[2])) {
      fail(ErrorCode::NonFinite, "grid sample is not finite");
    }
    xs.push_back(s[0]);
    ys.push_back(s[1]);
  }
  g.xs_ = unique_sorted(std::move(xs));
  g.ys_ = unique_sorted(std::move(ys));
  const double hx = uniform_spacing(g.xs_, "x");
  const double hy = uniform_spacing(g.ys_, "y");
  if (std::abs(hx - hy) > 1e-9 * hx) fail(ErrorCode::DomainError, "grid spacing differs in x and y");
  g.h_ = hx;
  if (samples.size() != g.xs_.size() * g.ys_.size()) {
    fail(ErrorCode::DomainError, "grid is not a full rectilinear product");
  }
  g.u_.assign(samples.size(), std::numeric_limits<double>::quiet_NaN());
  for (const auto& s : samples) {
    const std::size_t k = g.index(s[1], g.ys_) * g.xs_.size() + g.index(s[0], g.xs_);
    if (!std::isnan(g.u_[k])) fail(ErrorCode::DomainError, "duplicate grid node");
    g.u_[k] = s[2];
  }
  return g;
}

std::size_t GridGraph::index(double v, const std::vector<double>& axis) const {
  const double k = std::round((v - axis.front()) / h_);
  const double node = axis.front() + k * h_;
  if (k < 0.0 || k >= static_cast<double>(axis.size()) || std::abs(v - node) > 1e-6 * h_) {
    fail(ErrorCode::OutsideDomain, "query is not a grid node");
  }
  return static_cast<std::size_t>(k);
}

Gradient GridGraph::node_gradient(std::size_t i, std::size_t j) const {
  if (i < 2 || j < 2 || i + 2 >= xs_.size() || j + 2 >= ys_.size()) {
    fail(ErrorCode::OutsideDomain, "gradient stencil leaves the grid");
  }
  auto d4 = [&](double m2, double m1, double p1, double p2) {
    return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h_);
  };
  return {d4(at(i - 2, j), at(i - 1, j), at(i + 1, j), at(i + 2, j)),
          d4(at(i, j - 2), at(i, j - 1), at(i, j + 1), at(i, j + 2))};
}

GraphFunction GridGraph::graph() const {
  return GraphFunction(
      [this](double x, double y) { return at(index(x, xs_), index(y, ys_)); },
      [this](double x, double y) { return node_gradient(index(x, xs_), index(y, ys_)); },
      [this](double x, double y) {
        return x >= xs_.front() - 1e-6 * h_ && x <= xs_.back() + 1e-6 * h_ &&
               y >= ys_.front() - 1e-6 * h_ && y <= ys_.back() + 1e-6 * h_;
      });
}

std::vector<SamplePoint> GridGraph::interior() const {
  constexpr std::size_t margin = 4;
  std::vector<SamplePoint> pts;
  for (std::size_t j = margin; j + margin < ys_.size(); ++j) {
    for (std::size_t i = margin; i + margin < xs_.size(); ++i) pts.push_back({xs_[i], ys_[j]});
  }
  return pts;
}

std::vector<double> grid_mean_curvature(const AmbientSpace& space, const GridGraph& grid,
                                        std::span<const SamplePoint> points, Oracle oracle,
                                        double error_tol) {
  OracleOptions opts;
  opts.step = 2.0 * grid.spacing();
  opts.error_tol = error_tol;
  return mean_curvature_batch(space, grid.graph(), points, oracle, opts);
}

}  // namespace cmc
