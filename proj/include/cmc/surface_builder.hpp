#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "cmc/ambient.hpp"
#include "cmc/curvature.hpp"
#include "cmc/par_profiles.hpp"
#include "cmc/profile.hpp"
#include "cmc/rot_profiles.hpp"

namespace cmc {

struct MeshParams {
  double H = 0.0;
  double d = 0.0;
  double tau = -0.5;
  double pitch = 0.0;
};

struct MeshMetadata {
  Family family = Family::Rotational;
  MeshParams params;
  /// SOURCE_DATE_EPOCH when set, otherwise the wall clock (ISO 8601, UTC).
  std::string timestamp;
  std::string normalization;
};

/// Triangle mesh in model coordinates (x, y, t).
struct SurfaceMesh {
  Model model = Model::Disk;
  std::vector<Point3> vertices;
  std::vector<std::array<std::size_t, 3>> faces;
  MeshMetadata metadata;

  bool empty() const noexcept { return vertices.empty() || faces.empty(); }
};

/// Planar curve (s, t) in the generating plane, s = rho or y.
struct GeneratingCurve {
  Family family = Family::Rotational;
  std::vector<std::array<double, 2>> points;
  /// Index of the point the reflection was joined at.
  std::size_t junction = 0;
  /// Invariant under t -> t + period (one period stored).
  bool periodic = false;
  double period = 0.0;
  /// Both ends on the rotation axis: the swept surface is closed.
  bool closed = false;
  double H = 0.0;
  double d = 0.0;
  double tau = -0.5;
  double pitch = 0.0;
  std::string normalization;
};

/// Shifts u so that it vanishes at the sample with parameter closest to s.
ProfileCurve renormalize(const ProfileCurve& curve, double s);

/// Joins the curve with its mirror image in the slice t = 0 at the endpoint
/// where u = 0. When an endpoint has a vertical tangent the junction must be
/// such an endpoint; otherwise any endpoint with u = 0 is used. Throws
/// NotNormalized when no admissible endpoint has u = 0.
GeneratingCurve reflect_union(const ProfileCurve& curve);

/// Renormalizes at a vertical-tangent endpoint (the lower one when both
/// are vertical), or keeps the curve when it has none, then reflects.
GeneratingCurve symmetric_completion(const ProfileCurve& curve);

/// The curve repeated `copies` times along the vertical translation.
GeneratingCurve periodic_extension(const GeneratingCurve& curve, std::size_t copies);

/// Vertices phi(rho, theta) = (tanh(rho/2) cos theta, tanh(rho/2) sin theta,
/// u(rho) + pitch * theta) in the disk model. The theta seam is closed for
/// pitch = 0 and left open (theta in [0, 2 pi]) otherwise; samples on the
/// axis become single pole vertices. Throws ParamMismatch when the curve was
/// generated from other parameters.
SurfaceMesh sweep_rotational(const ProfileCurve& curve, const RotScrewParams& p,
                             std::size_t n_theta = 128);
SurfaceMesh sweep_rotational(const GeneratingCurve& curve, const RotScrewParams& p,
                             std::size_t n_theta = 128);
SurfaceMesh sweep_rotational_serial(const GeneratingCurve& curve, const RotScrewParams& p,
                                    std::size_t n_theta = 128);

/// Vertices (x, y, u(y) + pitch * x) in the half-plane model, x uniform in
/// x_range.
SurfaceMesh sweep_parabolic(const ParProfileCurve& curve, const ParScrewParams& p,
                            std::array<double, 2> x_range = {-1.0, 1.0},
                            std::size_t n_x = 128);
SurfaceMesh sweep_parabolic(const GeneratingCurve& curve, const ParScrewParams& p,
                            std::array<double, 2> x_range = {-1.0, 1.0},
                            std::size_t n_x = 128);

/// V - E + F.
long euler_characteristic(const SurfaceMesh& mesh);

/// Graph t = u(rho) + pitch * theta near the point, with the analytic
/// gradient u'(rho) grad(rho) + pitch grad(theta). Values use quadrature.
GraphFunction rotational_graph(const RotScrewParams& p, const ProfileOptions& opts = {});

/// Graph t = u(y) + pitch * x.
GraphFunction parabolic_graph(const ParScrewParams& p, const ProfileOptions& opts = {});

/// The graph pushed through the isometry (f, shift): the image of
/// (z, u(z)) is (f(z), u(z) - 2 tau arg f'(z) + shift). Gradient by finite
/// differences.
GraphFunction transformed_graph(const AmbientSpace& space, const GraphFunction& u,
                                const MobiusSpec& f, double shift, double fd_step = 1e-3);

SurfaceMesh transform_mesh(const AmbientSpace& space, const SurfaceMesh& mesh,
                           const MobiusSpec& f, double shift);

/// `v x y t` / `f i j k` (1-based), %.17g. Throws EmptyMesh, IOError.
void export_obj(const SurfaceMesh& mesh, const std::filesystem::path& path);
std::string obj_string(const SurfaceMesh& mesh);
SurfaceMesh read_obj(const std::filesystem::path& path);

/// Header `rho,u,dudrho` or `y,u,dudy`.
void export_csv(const ProfileCurve& curve, const std::filesystem::path& path);
std::string csv_string(const ProfileCurve& curve);

inline constexpr int kReportSchemaVersion = 1;

/// {"schema":"cmc-regime-report","version":1,"family","H","d","regime",
///  "rho1"|"y1","rho0"|"y0","rho2"|"y2","neck_distance","embedded","notes"};
/// absent critical values are omitted.
void export_json(const RegimeReport& report, const std::filesystem::path& path);
std::string json_string(const RegimeReport& report);

/// Grid CSV with header `x,y,u`.
GridGraph read_grid_csv(const std::filesystem::path& path);

/// Generation timestamp: SOURCE_DATE_EPOCH when set, else now.
std::string generation_timestamp();

}  // namespace cmc
