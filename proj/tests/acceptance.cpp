// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <chrono>
#include <complex>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cmc/curvature.hpp"
#include "cmc/error.hpp"
#include "cmc/par_profiles.hpp"
#include "cmc/rot_profiles.hpp"
#include "cmc/surface_builder.hpp"

using namespace cmc;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body,
               double time_limit = 0.0) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0.0 && secs >= time_limit) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(time_limit) + " s limit)";
  }
  if (!o.pass) ++failures;
  std::printf("%s [%2d] %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Plain formulas, kept apart from the library.
double f_ref(double H, double d, double rho) {
  const double g = d + 2 * H * std::cosh(rho);
  return std::sinh(rho) * std::sinh(rho) - g * g;
}

double g_ref(double H, double d, double rho) { return d + 2 * H * std::cosh(rho); }

// Regime names from the case conditions on (H, d); empty
// when the family has no member.
std::string expected_rotational(double H, double d) {
  if (H == 0) return d == 0 ? "Slice" : "Catenoid";
  if (H < 0.5) {
    if (d == -2 * H) return "EntireGraph";
    return d > -2 * H ? "EmbeddedAnnulus" : "ImmersedAnnulus";
  }
  if (H == 0.5) {
    if (d >= 0) return "";
    if (d == -1) return "EntireGraph";
    return d > -1 ? "EmbeddedAnnulus" : "ImmersedAnnulus";
  }
  const double s = std::sqrt(4 * H * H - 1);
  if (d > -s) return "";
  if (d == -s) return "Cylinder";
  if (d == -2 * H) return "Sphere";
  return d > -2 * H ? "Unduloid" : "Nodoid";
}

std::string expected_parabolic(double H, double d) {
  if (H == 0) return d == 0 ? "Slice" : "EmbeddedStrip";
  if (H < 0.5) {
    if (d == 0) return "EntireGraph";
    return d > 0 ? "ImmersedAnnulus" : "EmbeddedAnnulus";
  }
  return d > 0 ? "ImmersedAnnulus" : "";
}

Outcome closed_form_vs_quadrature() {
  double worst = 0;
  for (double H : {0.5, std::sqrt(3.0) / 2}) {
    const RotScrewParams p{H, -2 * H, -0.5, 0.0};
    const ProfileCurve c = profile_numeric(p, 2000);
    std::vector<ProfileSample> inner;
    for (const auto& s : c.samples) {
      const bool keep = H == 0.5 ? (s.s >= 0.1 && s.s <= 5.0) : (s.s > c.lo && s.s < c.hi);
      if (keep) inner.push_back(s);
    }
    const ProfileSample& mid = inner[inner.size() / 2];
    const double k = mid.u - rot_closed_form(H, mid.s);
    for (const auto& s : inner) worst = std::max(worst, std::abs(s.u - rot_closed_form(H, s.s) - k));
  }
  return {worst < 1e-6, "max |u - closed form| = " + num(worst)};
}

Outcome derivative_identity() {
  double worst = 0;
  int points = 0;
  for (double H : {0.25, 0.5, 1.0, std::sqrt(3.0) / 2}) {
    const RotScrewParams p{H, -2 * H, -0.5, 0.0};
    const double top = H > 0.5 ? std::acosh((4 * H * H + 1) / (4 * H * H - 1)) : 5.0;
    for (int i = 1; i <= 200; ++i) {
      const double rho = top * i / 201.0;
      const double h = 1e-6 * std::min(1.0, rho);
      const double fd = (rot_closed_form(H, rho + h) - rot_closed_form(H, rho - h)) / (2 * h);
      worst = std::max(worst, std::abs(fd - rot_integrand(p, rho)));
      ++points;
    }
  }
  struct Par {
    double H, d;
  };
  for (const Par c : {Par{0.0, 1.0}, Par{0.5, 2.0}, Par{2.0, 8.0}}) {
    const ParDomain dom = par_domain(c.H, c.d);
    const double lo = std::max(dom.lo, 0.02 * dom.hi);
    for (int i = 1; i <= 200; ++i) {
      const double y = lo + (dom.hi - lo) * i / 201.0;
      const double h = 1e-7 * y;
      const double fd = (par_closed_form(c.H, c.d, -0.5, y + h) - par_closed_form(c.H, c.d, -0.5, y - h)) / (2 * h);
      const double exact = par_integrand({c.H, c.d, -0.5, 0.0}, y);
      worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
      ++points;
    }
  }
  return {worst < 1e-6, std::to_string(points) + " points, max FD error " + num(worst)};
}

Outcome oracle_reproduction() {
  double dev = 0, gap = 0;
  int points = 0;
  auto ring = [](double lo, double hi, int n, auto&& fn) {
    for (int i = 0; i < n; ++i) {
      const auto c = polar_to_cartesian(lo + (hi - lo) * (i + 0.5) / n, 0.61 * i);
      fn(c.x, c.y);
    }
  };
  {
    const GraphFunction u = rotational_graph({0.5, -1.0, -0.5, 0.0});
    ring(0.1, 3.0, 100, [&](double x, double y) {
      dev = std::max(dev, std::abs(mean_curvature_div({Model::Disk, -0.5}, u, x, y) - 0.5));
      ++points;
    });
  }
  {
    const GraphFunction u = rotational_graph({0.0, 1.0, -0.5, 0.0});
    ring(std::asinh(1.0) + 0.05, 3.0, 100, [&](double x, double y) {
      dev = std::max(dev, std::abs(mean_curvature_div({Model::Disk, -0.5}, u, x, y)));
      ++points;
    });
  }
  {
    const GraphFunction u = parabolic_graph({0.0, 1.0, -0.5, 0.0});
    const AmbientSpace s{Model::HalfPlane, -0.5};
    for (int i = 0; i < 100; ++i) {
      const double x = -1.0 + 0.02 * i, y = 0.05 + 0.9 * (i + 0.5) / 100;
      const double hd = mean_curvature_div(s, u, x, y);
      const double hp = mean_curvature_pde(s, u, x, y);
      dev = std::max({dev, std::abs(hd), std::abs(hp)});
      gap = std::max(gap, std::abs(hd - hp));
      ++points;
    }
  }
  return {dev < 1e-3 && gap < 1e-4, std::to_string(points) + " points, max |H - target| = " + num(dev) +
                                         ", max oracle gap = " + num(gap)};
}

Outcome classification_table() {
  int checked = 0, wrong = 0;
  double residual = 0;
  std::string first_wrong;
  for (double H : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (double d : {-3.0, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5}) {
      for (bool rot : {true, false}) {
        const std::string want = rot ? expected_rotational(H, d) : expected_parabolic(H, d);
        std::string got;
        RegimeReport r;
        try {
          r = rot ? classify_rotational(H, d) : classify_parabolic(H, d);
          got = std::string(to_string(r.regime));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::EmptyFamily) throw;
        }
        ++checked;
        if (got != want) {
          ++wrong;
          if (first_wrong.empty()) {
            first_wrong = std::string(rot ? "rot" : "par") + " H=" + num(H) + " d=" + num(d) +
                          " got '" + got + "' want '" + want + "'";
          }
        }
        if (got.empty()) continue;
        if (rot) {
          if (r.regime != Regime::Cylinder && r.r1 && *r.r1 > 0)
            residual = std::max(residual, std::abs(f_ref(H, d, *r.r1)));
          if (r.r0) residual = std::max(residual, std::abs(g_ref(H, d, *r.r0)));
          if (r.r2 && r.regime != Regime::Cylinder)
            residual = std::max(residual, std::abs(f_ref(H, d, *r.r2)));
        } else {
          for (const auto& y : {r.r1, r.r2}) {
            if (y) residual = std::max(residual, std::abs(1 - std::pow(d * *y - 2 * H, 2)));
          }
          if (r.r0) residual = std::max(residual, std::abs(d * *r.r0 - 2 * H));
        }
      }
    }
  }
  std::string detail = std::to_string(checked) + " cells, " + std::to_string(wrong) +
                       " mismatches, max root residual " + num(residual);
  if (!first_wrong.empty()) detail += "; first: " + first_wrong;
  return {wrong == 0 && residual < 1e-10, detail};
}

Outcome sphere_geometry() {
  const RotScrewParams p{1.0, -2.0, -0.5, 0.0};
  const RegimeReport r = classify_rotational(1.0, -2.0);
  const double err = std::abs(*r.r2 - std::acosh(5.0 / 3.0));
  const double rounded = std::abs(*r.r2 - 1.0986123);
  const SurfaceMesh m = sweep_rotational(symmetric_completion(profile_numeric(p, 256)), p, 64);
  const long chi = euler_characteristic(m);
  return {err < 1e-9 && rounded < 1e-7 && chi == 2,
          "rho2 = " + std::to_string(*r.r2) + ", chi = " + std::to_string(chi)};
}

Outcome cylinder_degeneration() {
  const double H = 1.0;
  const double s = std::sqrt(4 * H * H - 1);
  const double rc = std::acosh(2 * H / s);
  bool shrinking = true;
  double prev_gap = 1e9, last_gap = 0, last_dist = 0;
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 1e-14}) {
    const RegimeReport r = classify_rotational(H, -s - eps);
    const double gap = *r.r2 - *r.r1;
    if (!(gap < prev_gap)) shrinking = false;
    prev_gap = last_gap = gap;
    last_dist = std::max(std::abs(*r.r1 - rc), std::abs(*r.r2 - rc));
  }
  const RegimeReport at = classify_rotational(H, -s);
  const bool limit_ok = at.regime == Regime::Cylinder && std::abs(*at.r1 - 0.5493061) < 1e-6;
  return {shrinking && last_dist < 1e-6 && limit_ok,
          "rho2 - rho1 -> " + num(last_gap) + ", distance to " + std::to_string(rc) + " = " +
              num(last_dist)};
}

Outcome end_growth_check() {
  double worst = 0;
  for (double alpha : {1.0, 4.0}) {
    for (double tau : {0.0, -0.5}) {
      const GrowthEstimate g = end_growth(alpha, tau, 20.0);
      const double want = std::sqrt(1 + 4 * tau * tau) / std::sqrt(alpha);
      worst = std::max(worst, std::abs(g.ratio / want - 1));
    }
  }
  return {worst < 0.01, "max relative error " + num(worst)};
}

Outcome tau_zero_reduction() {
  double diff = 0, factor = 0;
  for (int i = 1; i <= 200; ++i) {
    const double rho = 0.7 + 4.0 * i / 200.0;
    for (auto [H, d, l] : {std::tuple{0.0, 1.0, 0.0}, {0.3, -0.1, 0.0}, {0.5, -1.0, 0.0},
                           {0.5, -1.0, 0.8}, {1.0, -1.9, 0.0}}) {
      const double f = f_ref(H, d, rho);
      if (f <= 0) continue;
      const double g = g_ref(H, d, rho);
      const double sh = std::sinh(rho);
      const double h2r = g * std::sqrt(1 + l * l / (sh * sh)) / std::sqrt(f);
      diff = std::max(diff, std::abs(rot_integrand({H, d, 0.0, l}, rho) - h2r) / std::max(1.0, std::abs(h2r)));
      if (l == 0.0 && g != 0.0) {
        const double t = std::tanh(rho / 2);
        const double ratio = rot_integrand({H, d, -0.5, 0.0}, rho) / rot_integrand({H, d, 0.0, 0.0}, rho);
        factor = std::max(factor, std::abs(ratio - std::sqrt(1 + t * t)));
      }
    }
  }
  struct Par {
    double H, d, lo, hi;
  };
  for (const Par c : {Par{0.0, 1.0, 0.01, 0.99}, Par{0.5, 2.0, 0.01, 0.99}, Par{1.0, 1.0, 1.01, 2.99},
                      Par{0.25, -0.5, 0.01, 0.99}}) {
    for (int i = 0; i <= 100; ++i) {
      const double y = c.lo + (c.hi - c.lo) * i / 100.0;
      const double g = c.d * y - 2 * c.H;
      const double h2r = g / (y * std::sqrt(1 - g * g));
      diff = std::max(diff, std::abs(par_integrand({c.H, c.d, 0.0, 0.0}, y) - h2r) / std::max(1.0, std::abs(h2r)));
      if (g != 0.0) {
        const double ratio = par_integrand({c.H, c.d, 1.3, 0.0}, y) / par_integrand({c.H, c.d, 0.0, 0.0}, y);
        factor = std::max(factor, std::abs(ratio - std::sqrt(1 + 4 * 1.3 * 1.3)));
      }
      if (c.H == 0.25) continue;
      const double phi = std::asin(g);
      double classical;
      if (c.H == 0.0) {
        classical = phi;
      } else if (c.H == 0.5) {
        classical = phi + 2 / (std::tan(phi / 2) + 1);
      } else {
        const double s = std::sqrt(4 * c.H * c.H - 1);
        classical = phi - 4 * c.H / s * std::atan((2 * c.H * std::tan(phi / 2) + 1) / s);
      }
      diff = std::max(diff, std::abs(par_closed_form(c.H, c.d, 0.0, y) - classical) / std::max(1.0, std::abs(classical)));
    }
  }
  return {diff < 1e-12 && factor < 1e-12,
          "max diff " + num(diff) + ", bundle factor error " + num(factor)};
}

Outcome parabolic_limit() {
  std::vector<double> sup;
  for (double d : {1e-2, 1e-3, 1e-4}) {
    const ParScrewParams p{0.25, d, 0.0, 0.0};
    const double u1 = par_height(p, 1.0);
    double s = 0;
    for (int i = 0; i <= 150; ++i) {
      const double y = 0.5 + 1.5 * i / 150.0;
      s = std::max(s, std::abs(par_height(p, y) - u1 - par_limit_surface(0.25, 0.0, y)));
    }
    sup.push_back(s);
  }
  const bool monotone = sup[1] < sup[0] && sup[2] < sup[1];
  return {monotone, "sup distance " + num(sup[0]) + " -> " + num(sup[1]) + " -> " + num(sup[2])};
}

Outcome isometry_invariance() {
  const RotScrewParams p{0.5, -1.0, -0.5, 0.0};
  const AmbientSpace s{Model::Disk, -0.5};
  const SurfaceMesh m = sweep_rotational(profile_numeric(p, 64), p, 24);
  // Rotation by phi about q: T_q^{-1} R_phi T_q with T_q(z) = (z - q)/(1 - conj(q) z).
  using C = std::complex<double>;
  const C q{0.25, 0.15};
  const double phi = 1.1;
  const C h = std::polar(1.0, phi / 2);
  const C a = h - std::conj(h) * std::norm(q), b = q * (std::conj(h) - h);
  const C c = std::conj(b), dd = std::conj(a);
  const MobiusSpec f(Model::Disk, a, b, c, dd);
  const double shift = 0.3;
  const SurfaceMesh fm = transform_mesh(s, m, f, shift);
  const GraphFunction u = rotational_graph(p);
  const GraphFunction v = transformed_graph(s, u, f, shift);
  double worst = 0, fixed = std::abs(f.apply(q) - q), on_graph = 0;
  int points = 0;
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    const auto& pv = m.vertices[i];
    const double r = std::hypot(pv.x, pv.y);
    if (r < 0.1 || r > 0.8 || i % 5 != 0) continue;
    const auto& qv = fm.vertices[i];
    on_graph = std::max(on_graph, std::abs(qv.t - v.value(qv.x, qv.y)));
    const double before = mean_curvature_div(s, u, pv.x, pv.y);
    const double after = mean_curvature_div(s, v, qv.x, qv.y, {1e-4, true, 1e-4});
    worst = std::max(worst, std::abs(after - before));
    ++points;
  }
  return {worst < 1e-3 && on_graph < 1e-8 && fixed < 1e-14 && points >= 50,
          std::to_string(points) + " vertices, max |H' - H| = " + num(worst) +
              ", max graph residual " + num(on_graph)};
}

}  // namespace

int main() {
  criterion(1, "closed form vs quadrature (rotational)", closed_form_vs_quadrature, 5.0);
  criterion(2, "derivative identity", derivative_identity);
  criterion(3, "curvature oracle reproduction", oracle_reproduction);
  criterion(4, "classification table", classification_table);
  criterion(5, "sphere geometry", sphere_geometry);
  criterion(6, "cylinder degeneration", cylinder_degeneration);
  criterion(7, "end growth", end_growth_check, 10.0);
  criterion(8, "tau = 0 reduction", tau_zero_reduction);
  criterion(9, "parabolic limit", parabolic_limit);
  criterion(10, "isometry invariance", isometry_invariance);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
