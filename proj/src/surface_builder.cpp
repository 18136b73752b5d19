#include "cmc/surface_builder.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cmc/detail/parallel.hpp"
#include "cmc/error.hpp"

namespace cmc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double max_abs_u(const ProfileCurve& curve) {
  double m = 0.0;
  for (const auto& s : curve.samples) m = std::max(m, std::abs(s.u));
  return m;
}

void check_params(const ProfileCurve& curve, Family family, double H, double d,
                  double tau, double pitch) {
  if (curve.family != family || curve.H != H || curve.d != d || curve.tau != tau ||
      curve.pitch != pitch) {
    fail(ErrorCode::ParamMismatch, "curve was generated from different parameters");
  }
}

void check_params(const GeneratingCurve& curve, Family family, double H, double d,
                  double tau, double pitch) {
  if (curve.family != family || curve.H != H || curve.d != d || curve.tau != tau ||
      curve.pitch != pitch) {
    fail(ErrorCode::ParamMismatch, "curve was generated from different parameters");
  }
}

std::string parameter_name(Family family) {
  return family == Family::Rotational ? "rho" : "y";
}

GeneratingCurve as_generating(const ProfileCurve& curve) {
  GeneratingCurve g;
  g.family = curve.family;
  g.H = curve.H;
  g.d = curve.d;
  g.tau = curve.tau;
  g.pitch = curve.pitch;
  if (curve.vertical_line) {
    // Vertical cylinder: a unit band of the line s = lo.
    constexpr int n = 33;
    for (int i = 0; i < n; ++i) {
      g.points.push_back({curve.lo, -1.0 + 2.0 * i / (n - 1)});
    }
    g.normalization = "vertical cylinder " + parameter_name(curve.family) + " = " +
                      fmt(curve.lo) + ", t in [-1, 1]";
    return g;
  }
  for (const auto& s : curve.samples) g.points.push_back({s.s, s.u});
  g.normalization = "u = 0 at " + parameter_name(curve.family) + " = " + fmt(curve.reference);
  return g;
}

// Faces between two rows; a row of size 1 is a pole.
void stitch(std::vector<std::array<std::size_t, 3>>& faces, std::size_t a0, std::size_t na,
            std::size_t b0, std::size_t nb, std::size_t quads, bool wrap) {
  for (std::size_t j = 0; j < quads; ++j) {
    const std::size_t j1 = wrap ? (j + 1) % quads : j + 1;
    if (na == 1 && nb == 1) return;
    if (na == 1) {
      faces.push_back({a0, b0 + j1, b0 + j});
    } else if (nb == 1) {
      faces.push_back({a0 + j, a0 + j1, b0});
    } else {
      faces.push_back({a0 + j, a0 + j1, b0 + j1});
      faces.push_back({a0 + j, b0 + j1, b0 + j});
    }
  }
}

SurfaceMesh sweep_rotational_impl(const GeneratingCurve& curve, const RotScrewParams& p,
                                  std::size_t n_theta, bool parallel) {
  check_params(curve, Family::Rotational, p.H, p.d, p.tau, p.pitch);
  if (n_theta < 3) fail(ErrorCode::DomainError, "n_theta must be at least 3");
  if (curve.points.empty()) fail(ErrorCode::EmptyMesh, "generating curve has no points");

  const bool wrap = p.pitch == 0.0;
  const std::size_t ring = wrap ? n_theta : n_theta + 1;
  const std::size_t rows = curve.points.size();
  std::vector<std::size_t> start(rows + 1, 0);
  std::vector<std::size_t> count(rows, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double rho = curve.points[r][0];
    if (!(rho >= 0.0) || !std::isfinite(rho) || !std::isfinite(curve.points[r][1])) {
      fail(ErrorCode::NonFinite, "generating curve point is not a finite (rho >= 0, t)");
    }
    count[r] = (rho == 0.0 && wrap) ? 1 : ring;
    start[r + 1] = start[r] + count[r];
  }

  SurfaceMesh mesh;
  mesh.model = Model::Disk;
  mesh.vertices.resize(start[rows]);
  auto fill_row = [&](std::ptrdiff_t ri) {
    const auto r = static_cast<std::size_t>(ri);
    const double rho = curve.points[r][0];
    const double t = curve.points[r][1];
    const double radius = std::tanh(0.5 * rho);
    for (std::size_t j = 0; j < count[r]; ++j) {
      const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(n_theta);
      mesh.vertices[start[r] + j] = {radius * std::cos(theta), radius * std::sin(theta),
                                     t + p.pitch * theta};
    }
  };
  if (parallel) {
    detail::parallel_for(static_cast<std::ptrdiff_t>(rows), fill_row);
  } else {
    for (std::size_t r = 0; r < rows; ++r) fill_row(static_cast<std::ptrdiff_t>(r));
  }

  for (std::size_t r = 0; r + 1 < rows; ++r) {
    stitch(mesh.faces, start[r], count[r], start[r + 1], count[r + 1], n_theta, wrap);
  }
  // A closed curve ends where it started only through the poles; nothing to join.

  mesh.metadata.family = Family::Rotational;
  mesh.metadata.params = {p.H, p.d, p.tau, p.pitch};
  mesh.metadata.timestamp = generation_timestamp();
  mesh.metadata.normalization = curve.normalization;
  return mesh;
}

}  // namespace

// ---------------------------------------------------------------------------

ProfileCurve renormalize(const ProfileCurve& curve, double s) {
  if (curve.samples.empty()) fail(ErrorCode::EmptyMesh, "profile has no samples");
  std::size_t k = 0;
  for (std::size_t i = 1; i < curve.samples.size(); ++i) {
    if (std::abs(curve.samples[i].s - s) < std::abs(curve.samples[k].s - s)) k = i;
  }
  ProfileCurve out = curve;
  const double shift = curve.samples[k].u;
  for (auto& smp : out.samples) smp.u -= shift;
  out.samples[k].u = 0.0;
  out.reference = curve.samples[k].s;
  return out;
}

GeneratingCurve reflect_union(const ProfileCurve& curve) {
  if (curve.vertical_line) {
    fail(ErrorCode::NotNormalized, "a vertical cylinder has no reflection endpoint");
  }
  if (curve.samples.size() < 2) fail(ErrorCode::NotNormalized, "profile has fewer than two samples");
  const auto& smp = curve.samples;
  const std::size_t last = smp.size() - 1;
  const bool lo_v = curve.lo_flags.vertical_tangent;
  const bool hi_v = curve.hi_flags.vertical_tangent;
  const bool any_vertical = lo_v || hi_v;
  const double zero_tol = 1e-12 * std::max(1.0, max_abs_u(curve));
  const bool lo_ok = (!any_vertical || lo_v) && std::abs(smp[0].u) <= zero_tol;
  const bool hi_ok = (!any_vertical || hi_v) && std::abs(smp[last].u) <= zero_tol;
  if (!lo_ok && !hi_ok) {
    fail(ErrorCode::NotNormalized,
         any_vertical ? "u must vanish at a vertical-tangent endpoint"
                      : "u must vanish at an endpoint");
  }

  GeneratingCurve g = as_generating(curve);
  g.points.clear();
  double other_u;
  if (lo_ok) {
    for (std::size_t i = last; i >= 1; --i) g.points.push_back({smp[i].s, -smp[i].u});
    g.junction = g.points.size();
    g.points.push_back({smp[0].s, 0.0});
    for (std::size_t i = 1; i <= last; ++i) g.points.push_back({smp[i].s, smp[i].u});
    other_u = smp[last].u;
  } else {
    for (std::size_t i = 0; i < last; ++i) g.points.push_back({smp[i].s, smp[i].u});
    g.junction = g.points.size();
    g.points.push_back({smp[last].s, 0.0});
    for (std::size_t i = last; i >= 1; --i) g.points.push_back({smp[i - 1].s, -smp[i - 1].u});
    other_u = smp[0].u;
  }
  const double junction_s = lo_ok ? smp[0].s : smp[last].s;
  g.normalization = "reflected in t = 0 at " + parameter_name(curve.family) + " = " +
                    fmt(junction_s);
  if (lo_v && hi_v) {
    g.periodic = true;
    g.period = 2.0 * std::abs(other_u);
    g.normalization += ", period " + fmt(g.period);
  }
  g.closed = curve.family == Family::Rotational && g.points.front()[0] == 0.0 &&
             g.points.back()[0] == 0.0;
  return g;
}

GeneratingCurve symmetric_completion(const ProfileCurve& curve) {
  if (curve.samples.empty()) fail(ErrorCode::NotNormalized, "profile has no samples");
  if (curve.lo_flags.vertical_tangent) {
    return reflect_union(renormalize(curve, curve.samples.front().s));
  }
  if (curve.hi_flags.vertical_tangent) {
    return reflect_union(renormalize(curve, curve.samples.back().s));
  }
  return reflect_union(curve);
}

GeneratingCurve periodic_extension(const GeneratingCurve& curve, std::size_t copies) {
  if (!curve.periodic) fail(ErrorCode::DomainError, "curve is not periodic");
  if (copies == 0) fail(ErrorCode::DomainError, "need at least one copy");
  GeneratingCurve out = curve;
  out.points.clear();
  // Consecutive periods share an endpoint; orient so each copy starts where
  // the previous one ended.
  const double step = curve.points.back()[1] - curve.points.front()[1];
  for (std::size_t k = 0; k < copies; ++k) {
    const double shift = step * static_cast<double>(k);
    for (std::size_t i = (k == 0 ? 0 : 1); i < curve.points.size(); ++i) {
      out.points.push_back({curve.points[i][0], curve.points[i][1] + shift});
    }
  }
  return out;
}

SurfaceMesh sweep_rotational(const ProfileCurve& curve, const RotScrewParams& p,
                             std::size_t n_theta) {
  check_params(curve, Family::Rotational, p.H, p.d, p.tau, p.pitch);
  return sweep_rotational_impl(as_generating(curve), p, n_theta, true);
}

SurfaceMesh sweep_rotational(const GeneratingCurve& curve, const RotScrewParams& p,
                             std::size_t n_theta) {
  return sweep_rotational_impl(curve, p, n_theta, true);
}

SurfaceMesh sweep_rotational_serial(const GeneratingCurve& curve, const RotScrewParams& p,
                                    std::size_t n_theta) {
  return sweep_rotational_impl(curve, p, n_theta, false);
}

SurfaceMesh sweep_parabolic(const GeneratingCurve& curve, const ParScrewParams& p,
                            std::array<double, 2> x_range, std::size_t n_x) {
  check_params(curve, Family::Parabolic, p.H, p.d, p.tau, p.pitch);
  if (n_x < 1) fail(ErrorCode::DomainError, "n_x must be at least 1");
  if (!(x_range[0] < x_range[1]) || !std::isfinite(x_range[0]) || !std::isfinite(x_range[1])) {
    fail(ErrorCode::DomainError, "x_range must be a finite increasing interval");
  }
  if (curve.points.empty()) fail(ErrorCode::EmptyMesh, "generating curve has no points");
  const std::size_t cols = n_x + 1;
  const std::size_t rows = curve.points.size();
  for (const auto& pt : curve.points) {
    if (!(pt[0] > 0.0) || !std::isfinite(pt[0]) || !std::isfinite(pt[1])) {
      fail(ErrorCode::OutsideDomain, "generating curve point outside the half-plane");
    }
  }
  SurfaceMesh mesh;
  mesh.model = Model::HalfPlane;
  mesh.vertices.resize(rows * cols);
  detail::parallel_for(static_cast<std::ptrdiff_t>(rows), [&](std::ptrdiff_t ri) {
    const auto r = static_cast<std::size_t>(ri);
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = x_range[0] + (x_range[1] - x_range[0]) * static_cast<double>(j) /
                                        static_cast<double>(n_x);
      mesh.vertices[r * cols + j] = {x, curve.points[r][0], curve.points[r][1] + p.pitch * x};
    }
  });
  for (std::size_t r = 0; r + 1 < rows; ++r) {
    stitch(mesh.faces, r * cols, cols, (r + 1) * cols, cols, n_x, false);
  }
  mesh.metadata.family = Family::Parabolic;
  mesh.metadata.params = {p.H, p.d, p.tau, p.pitch};
  mesh.metadata.timestamp = generation_timestamp();
  mesh.metadata.normalization = curve.normalization;
  return mesh;
}

SurfaceMesh sweep_parabolic(const ParProfileCurve& curve, const ParScrewParams& p,
                            std::array<double, 2> x_range, std::size_t n_x) {
  check_params(curve, Family::Parabolic, p.H, p.d, p.tau, p.pitch);
  return sweep_parabolic(as_generating(curve), p, x_range, n_x);
}

long euler_characteristic(const SurfaceMesh& mesh) {
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = f[k];
      const std::size_t b = f[(k + 1) % 3];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return static_cast<long>(mesh.vertices.size()) - static_cast<long>(edges.size()) +
         static_cast<long>(mesh.faces.size());
}

// ---------------------------------------------------------------------------

GraphFunction rotational_graph(const RotScrewParams& p, const ProfileOptions& opts) {
  auto value = [p, opts](double x, double y) {
    const Polar2 pc = cartesian_to_polar(x, y);
    return rot_height(p, pc.rho, opts) + p.pitch * pc.theta;
  };
  auto gradient = [p](double x, double y) -> Gradient {
    const double r2 = x * x + y * y;
    if (r2 == 0.0) {
      if (p.pitch != 0.0) fail(ErrorCode::DomainError, "screw graph is singular on the axis");
      return {0.0, 0.0};
    }
    const double r = std::sqrt(r2);
    const double rho = 2.0 * std::atanh(r);
    const double radial = rot_integrand(p, rho) * 2.0 / (1.0 - r2) / r;
    return {radial * x - p.pitch * y / r2, radial * y + p.pitch * x / r2};
  };
  auto domain = [p](double x, double y) {
    if (!in_domain(Model::Disk, x, y)) return false;
    const double r2 = x * x + y * y;
    if (r2 == 0.0) return p.pitch == 0.0 && f_poly(p.H, p.d, 1e-8) > 0.0;
    return f_poly(p.H, p.d, 2.0 * std::atanh(std::sqrt(r2))) > 0.0;
  };
  return GraphFunction(value, gradient, domain);
}

GraphFunction parabolic_graph(const ParScrewParams& p, const ProfileOptions& opts) {
  auto value = [p, opts](double x, double y) { return par_height(p, y, opts) + p.pitch * x; };
  auto gradient = [p](double, double y) -> Gradient {
    return {p.pitch, par_integrand(p, y)};
  };
  auto domain = [p](double, double y) {
    return y > 0.0 && std::abs(p.d * y - 2.0 * p.H) < 1.0;
  };
  return GraphFunction(value, gradient, domain);
}

GraphFunction transformed_graph(const AmbientSpace& space, const GraphFunction& u,
                                const MobiusSpec& f, double shift, double fd_step) {
  if (f.model() != space.model) {
    fail(ErrorCode::InvalidIsometry, "isometry belongs to another model");
  }
  const MobiusSpec inv = f.inverse();
  auto value = [space, u, f, inv, shift](double x, double y) {
    const auto z = inv.apply({x, y});
    return u.value(z.real(), z.imag()) - 2.0 * space.tau * f.arg_derivative(z) + shift;
  };
  auto domain = [space, u, inv](double x, double y) {
    if (!in_domain(space.model, x, y)) return false;
    const auto z = inv.apply({x, y});
    return in_domain(space.model, z.real(), z.imag()) && u.contains(z.real(), z.imag());
  };
  return GraphFunction(value, {}, domain, fd_step);
}

SurfaceMesh transform_mesh(const AmbientSpace& space, const SurfaceMesh& mesh,
                           const MobiusSpec& f, double shift) {
  if (space.model != mesh.model) fail(ErrorCode::InvalidIsometry, "mesh lives in another model");
  SurfaceMesh out = mesh;
  detail::parallel_for(static_cast<std::ptrdiff_t>(mesh.vertices.size()), [&](std::ptrdiff_t i) {
    out.vertices[i] = isometry_apply(space, f, shift, mesh.vertices[i]);
  });
  out.metadata.normalization += "; pushed through an isometry, fiber shift " + fmt(shift);
  return out;
}

// ---------------------------------------------------------------------------

std::string generation_timestamp() {
  std::time_t when;
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  char* end = nullptr;
  long long parsed = epoch ? std::strtoll(epoch, &end, 10) : 0;
  if (epoch && end != epoch && *end == '\0') {
    when = static_cast<std::time_t>(parsed);
  } else {
    when = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&when, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string obj_string(const SurfaceMesh& mesh) {
  if (mesh.empty()) fail(ErrorCode::EmptyMesh, "mesh has no vertices or faces");
  const auto& m = mesh.metadata;
  std::string out;
  out += "# cmc surface mesh, coordinates (x, y, t) as OBJ (x, y, z)\n";
  out += "# model " + std::string(mesh.model == Model::Disk ? "disk" : "half-plane") + "\n";
  out += "# family " + std::string(to_string(m.family)) + " H " + fmt(m.params.H) + " d " +
         fmt(m.params.d) + " tau " + fmt(m.params.tau) + " pitch " + fmt(m.params.pitch) + "\n";
  if (!m.normalization.empty()) out += "# " + m.normalization + "\n";
  for (const auto& v : mesh.vertices) {
    out += "v " + fmt(v.x) + " " + fmt(v.y) + " " + fmt(v.t) + "\n";
  }
  for (const auto& f : mesh.faces) {
    out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " +
           std::to_string(f[2] + 1) + "\n";
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::IOError, "cannot open " + path.string() + " for writing");
  os << body;
  if (!os.flush()) fail(ErrorCode::IOError, "write to " + path.string() + " failed");
}

}  // namespace

void export_obj(const SurfaceMesh& mesh, const std::filesystem::path& path) {
  write_file(path, obj_string(mesh));
}

SurfaceMesh read_obj(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::IOError, "cannot open " + path.string());
  SurfaceMesh mesh;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      Point3 p;
      if (!(ls >> p.x >> p.y >> p.t)) fail(ErrorCode::IOError, "malformed vertex line");
      mesh.vertices.push_back(p);
    } else if (tag == "f") {
      std::array<std::size_t, 3> f{};
      if (!(ls >> f[0] >> f[1] >> f[2])) fail(ErrorCode::IOError, "malformed face line");
      for (auto& i : f) {
        if (i == 0 || i > mesh.vertices.size()) fail(ErrorCode::IOError, "face index out of range");
        --i;
      }
      mesh.faces.push_back(f);
    } else if (tag == "#" && line.find("# model half-plane") == 0) {
      mesh.model = Model::HalfPlane;
    }
  }
  return mesh;
}

GridGraph read_grid_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::IOError, "cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line)) fail(ErrorCode::IOError, "grid file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y,u") fail(ErrorCode::IOError, "grid header must be x,y,u");
  std::vector<std::array<double, 3>> samples;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::array<double, 3> s{};
    std::istringstream ls(line);
    char c1 = 0, c2 = 0;
    if (!(ls >> s[0] >> c1 >> s[1] >> c2 >> s[2]) || c1 != ',' || c2 != ',') {
      fail(ErrorCode::IOError, "malformed grid line " + std::to_string(lineno));
    }
    samples.push_back(s);
  }
  return GridGraph::from_samples(samples);
}

std::string csv_string(const ProfileCurve& curve) {
  const std::string s = parameter_name(curve.family);
  std::string out = s + ",u,dud" + s + "\n";
  for (const auto& smp : curve.samples) {
    out += fmt(smp.s) + "," + fmt(smp.u) + "," + fmt(smp.du) + "\n";
  }
  return out;
}

void export_csv(const ProfileCurve& curve, const std::filesystem::path& path) {
  write_file(path, csv_string(curve));
}

std::string json_string(const RegimeReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = "cmc-regime-report";
  j["version"] = kReportSchemaVersion;
  j["family"] = std::string(to_string(report.family));
  j["H"] = report.H;
  j["d"] = report.d;
  j["regime"] = std::string(to_string(report.regime));
  const std::string s = parameter_name(report.family);
  if (report.r1) j[s + "1"] = *report.r1;
  if (report.r0) j[s + "0"] = *report.r0;
  if (report.r2) j[s + "2"] = *report.r2;
  if (report.neck_distance) j["neck_distance"] = *report.neck_distance;
  j["embedded"] = report.embedded;
  j["notes"] = report.notes;
  return j.dump() + "\n";
}

void export_json(const RegimeReport& report, const std::filesystem::path& path) {
  write_file(path, json_string(report));
}

}  // namespace cmc
