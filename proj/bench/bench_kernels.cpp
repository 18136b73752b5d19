// Serial reference vs OpenMP kernels.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "cmc/curvature.hpp"
#include "cmc/par_profiles.hpp"
#include "cmc/rot_profiles.hpp"
#include "cmc/surface_builder.hpp"

using namespace cmc;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.4f %10.4f %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial s", "openmp s", "speedup");

  const RotScrewParams rot{1.0, -1.9, -0.5, 0.0};
  row("rotational profile n=20000",
      best_of(reps, [&] { profile_numeric_serial(rot, 20000); }),
      best_of(reps, [&] { profile_numeric(rot, 20000); }));

  const ParScrewParams par{0.25, -0.5, -0.5, 0.3};
  row("parabolic profile n=20000",
      best_of(reps, [&] { par_profile_numeric_serial(par, 20000); }),
      best_of(reps, [&] { par_profile_numeric(par, 20000); }));

  const GraphFunction u = rotational_graph({0.5, -1.0, -0.5, 0.0});
  std::vector<SamplePoint> pts;
  for (int i = 0; i < 2000; ++i) {
    const auto c = polar_to_cartesian(0.1 + 2.9 * (i + 0.5) / 2000, 0.61 * i);
    pts.push_back({c.x, c.y});
  }
  const AmbientSpace disk{Model::Disk, -0.5};
  row("oracle batch 2000 points",
      best_of(reps, [&] { mean_curvature_batch_serial(disk, u, pts, Oracle::Divergence); }),
      best_of(reps, [&] { mean_curvature_batch(disk, u, pts, Oracle::Divergence); }));

  const GeneratingCurve g = periodic_extension(symmetric_completion(profile_numeric(rot, 4000)), 4);
  row("sweep 32000 rows x 256",
      best_of(reps, [&] { sweep_rotational_serial(g, rot, 256); }),
      best_of(reps, [&] { sweep_rotational(g, rot, 256); }));
  return 0;
}
