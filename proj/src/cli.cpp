#include "cmc/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmc/error.hpp"
#include "cmc/par_profiles.hpp"
#include "cmc/rot_profiles.hpp"
#include "cmc/surface_builder.hpp"

namespace cmc::cli {

namespace {

struct Options {
  std::string family;
  double H = 0.0;
  double d = 0.0;
  double tau = -0.5;
  double pitch = 0.0;
  std::size_t samples = 512;
  std::string out;
  std::string format;
  double tol = 0.0;
  // mesh
  std::size_t n_around = 128;
  bool reflect = false;
  double x_min = -1.0;
  double x_max = 1.0;
  // verify
  std::string grid;
  std::string oracle = "both";
  std::string model;
  double error_tol = 1e-5;
  // growth
  double rho = 20.0;
};

void emit(const Options& o, const std::string& body, std::ostream& out) {
  if (o.out.empty() || o.out == "-") {
    out << body;
    return;
  }
  std::ofstream os(o.out, std::ios::binary);
  if (!os) fail(ErrorCode::IOError, "cannot open " + o.out + " for writing");
  os << body;
  if (!os.flush()) fail(ErrorCode::IOError, "write to " + o.out + " failed");
}

ProfileOptions profile_options(const Options& o) {
  ProfileOptions p;
  p.tol = o.tol > 0.0 ? o.tol : default_tolerance();
  return p;
}

RegimeReport classify(const Options& o) {
  return o.family == "rotational" ? classify_rotational(o.H, o.d)
                                  : classify_parabolic(o.H, o.d);
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  if (o.format.empty()) return;
  for (const char* a : allowed) {
    if (o.format == a) return;
  }
  throw CLI::ValidationError("--format", "format '" + o.format + "' not supported here");
}

void cmd_profile(const Options& o, std::ostream& out) {
  require_format(o, {"csv"});
  classify(o);
  const ProfileOptions po = profile_options(o);
  const ProfileCurve c =
      o.family == "rotational"
          ? profile_numeric({o.H, o.d, o.tau, o.pitch}, o.samples, po)
          : par_profile_numeric({o.H, o.d, o.tau, o.pitch}, o.samples, po);
  emit(o, csv_string(c), out);
}

void cmd_classify(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  emit(o, json_string(classify(o)), out);
}

void cmd_mesh(const Options& o, std::ostream& out) {
  require_format(o, {"obj"});
  classify(o);
  const ProfileOptions po = profile_options(o);
  SurfaceMesh mesh;
  if (o.family == "rotational") {
    const RotScrewParams p{o.H, o.d, o.tau, o.pitch};
    const ProfileCurve c = profile_numeric(p, o.samples, po);
    mesh = o.reflect ? sweep_rotational(symmetric_completion(c), p, o.n_around)
                     : sweep_rotational(c, p, o.n_around);
  } else {
    const ParScrewParams p{o.H, o.d, o.tau, o.pitch};
    const ProfileCurve c = par_profile_numeric(p, o.samples, po);
    mesh = o.reflect ? sweep_parabolic(symmetric_completion(c), p, {o.x_min, o.x_max}, o.n_around)
                     : sweep_parabolic(c, p, {o.x_min, o.x_max}, o.n_around);
  }
  emit(o, obj_string(mesh), out);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void cmd_verify(const Options& o, std::ostream& out) {
  require_format(o, {"json", "csv"});
  const Model model = o.model.empty() ? (o.family == "rotational" ? Model::Disk : Model::HalfPlane)
                                      : (o.model == "disk" ? Model::Disk : Model::HalfPlane);
  const AmbientSpace space{model, o.tau};
  const GridGraph grid = read_grid_csv(o.grid);
  const auto pts = grid.interior();
  if (pts.empty()) fail(ErrorCode::DomainError, "grid too small: needs 9 nodes per axis");
  const bool div = o.oracle != "pde";
  const bool pde = o.oracle != "div";
  std::vector<double> hd, hp;
  if (div) hd = grid_mean_curvature(space, grid, pts, Oracle::Divergence, o.error_tol);
  if (pde) hp = grid_mean_curvature(space, grid, pts, Oracle::Pde, o.error_tol);

  if (o.format == "csv") {
    std::string body = "x,y";
    if (div) body += ",H_div";
    if (pde) body += ",H_pde";
    body += "\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      body += fmt(pts[i].x) + "," + fmt(pts[i].y);
      if (div) body += "," + fmt(hd[i]);
      if (pde) body += "," + fmt(hp[i]);
      body += "\n";
    }
    emit(o, body, out);
    return;
  }
  auto stats = [&](const std::vector<double>& h) {
    double lo = h.front(), hi = h.front(), sum = 0.0, dev = 0.0;
    for (double v : h) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
      dev = std::max(dev, std::abs(v - o.H));
    }
    nlohmann::ordered_json j;
    j["mean"] = sum / static_cast<double>(h.size());
    j["min"] = lo;
    j["max"] = hi;
    j["max_abs_deviation"] = dev;
    return j;
  };
  nlohmann::ordered_json j;
  j["grid"] = o.grid;
  j["model"] = model == Model::Disk ? "disk" : "half-plane";
  j["tau"] = o.tau;
  j["target_H"] = o.H;
  j["points"] = pts.size();
  j["spacing"] = grid.spacing();
  if (div) j["div"] = stats(hd);
  if (pde) j["pde"] = stats(hp);
  if (div && pde) {
    double gap = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) gap = std::max(gap, std::abs(hd[i] - hp[i]));
    j["max_oracle_gap"] = gap;
  }
  emit(o, j.dump() + "\n", out);
}

void cmd_growth(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  if (o.family == "parabolic") {
    throw CLI::ValidationError("--family", "growth applies to the rotational family");
  }
  classify_rotational(0.5, o.d);
  const GrowthEstimate g = end_growth(-o.d, o.tau, o.rho, profile_options(o));
  nlohmann::ordered_json j;
  j["alpha"] = -o.d;
  j["tau"] = o.tau;
  j["rho"] = o.rho;
  j["u"] = g.u;
  j["ratio"] = g.ratio;
  j["coefficient"] = g.coefficient;
  j["relative_error"] = std::abs(g.ratio - g.coefficient) / g.coefficient;
  emit(o, j.dump() + "\n", out);
}

void add_common(CLI::App* sub, Options& o, bool family_required) {
  auto* f = sub->add_option("--family", o.family, "rotational or parabolic")
                ->check(CLI::IsMember({"rotational", "parabolic"}));
  if (family_required) f->required();
  sub->add_option("--H", o.H, "mean curvature H >= 0 (verify: target)");
  sub->add_option("--d", o.d, "first-integral constant d");
  sub->add_option("--tau", o.tau, "bundle curvature")->capture_default_str();
  sub->add_option("--pitch", o.pitch, "screw pitch l")->capture_default_str();
  sub->add_option("--samples", o.samples, "profile samples")->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  sub->add_option("--out", o.out, "output path (default stdout)");
  sub->add_option("--format", o.format, "csv, obj or json")
      ->check(CLI::IsMember({"csv", "obj", "json"}));
  sub->add_option("--tol", o.tol, "quadrature tolerance (default CMC_PSL2_TOL or 1e-10)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"CMC surfaces invariant by one-parameter isometry groups of PSL~2(R, tau)"};
  app.name(args.empty() ? "cmc_psl2" : args.front());
  app.require_subcommand(1);

  auto* profile = app.add_subcommand("profile", "sample a generating curve (CSV)");
  add_common(profile, o, true);
  auto* classify_cmd = app.add_subcommand("classify", "regime report (JSON)");
  add_common(classify_cmd, o, true);
  auto* mesh = app.add_subcommand("mesh", "swept surface mesh (OBJ)");
  add_common(mesh, o, true);
  mesh->add_option("--n", o.n_around, "theta steps (rotational) or x steps (parabolic)")
      ->capture_default_str();
  mesh->add_flag("--reflect", o.reflect, "join the curve with its mirror in t = 0");
  mesh->add_option("--x-min", o.x_min, "parabolic strip start")->capture_default_str();
  mesh->add_option("--x-max", o.x_max, "parabolic strip end")->capture_default_str();
  auto* verify = app.add_subcommand("verify", "mean curvature statistics of a sampled graph (JSON, or CSV per node)");
  add_common(verify, o, false);
  verify->add_option("--grid", o.grid, "CSV with header x,y,u on a uniform grid")->required();
  verify->add_option("--oracle", o.oracle, "div, pde or both")
      ->check(CLI::IsMember({"div", "pde", "both"}))->capture_default_str();
  verify->add_option("--model", o.model, "disk or half-plane (default from --family)")
      ->check(CLI::IsMember({"disk", "half-plane"}));
  verify->add_option("--error-tol", o.error_tol, "Richardson error bound per node")
      ->capture_default_str();
  auto* growth = app.add_subcommand("growth", "end growth of the H = 1/2 annulus (JSON)");
  add_common(growth, o, false);
  growth->add_option("--rho", o.rho, "radius where the ratio is taken")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("cmc_psl2");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (*profile) cmd_profile(o, out);
    else if (*classify_cmd) cmd_classify(o, out);
    else if (*mesh) cmd_mesh(o, out);
    else if (*verify) cmd_verify(o, out);
    else if (*growth) cmd_growth(o, out);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help("", CLI::AppFormatMode::All);
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::EmptyFamily ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace cmc::cli
