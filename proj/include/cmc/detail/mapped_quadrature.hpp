#pragma once

// Piecewise quadrature of a generating-curve slope over a domain split into
// pieces, each integrated in a coordinate that removes its endpoint
// singularity:
//
//   SqrtLo    s = a + (b - a) sigma^2          1/sqrt(s - a) at a
//   SqrtHi    s = b - (b - a) (1 - sigma)^2    1/sqrt(b - s) at b
//   SqrtBoth  s = a + (b - a) sin^2(pi sigma / 2)   both ends
//   LogLo     s = a (b / a)^sigma              1/s growth towards s = 0
//   Linear    s = a + (b - a) sigma

#include <cstddef>
#include <functional>
#include <vector>

#include "cmc/profile.hpp"

namespace cmc::detail {

enum class MapKind { Linear, SqrtLo, SqrtHi, SqrtBoth, LogLo };

struct Piece {
  double a;
  double b;
  MapKind kind;
};

/// Where a slope is evaluated. The offsets from the piece ends are computed
/// directly from sigma, so they carry full relative precision next to a
/// singular endpoint.
struct MappedPoint {
  double s;
  double from_a;  // s - a
  double to_b;    // b - s
  const Piece* piece;
};

using Slope = std::function<double(const MappedPoint&)>;

MappedPoint map_point(const Piece& piece, double sigma);
double map_jacobian(const Piece& piece, double sigma);
double unmap(const Piece& piece, double s);

/// Integral of slope over the piece between sigma0 and sigma1.
/// Throws QuadratureFailure when the error estimate is too large.
double integrate_mapped(const Slope& slope, const Piece& piece, double sigma0,
                        double sigma1, double tol);

struct SampleGrid {
  std::vector<double> s;
  // Location of sample i: piece index and sigma within it.
  std::vector<std::size_t> piece_of;
  std::vector<double> sigma;
  /// Index of the first sample of every piece, plus the total count.
  std::vector<std::size_t> piece_start;
};

/// Distributes about n samples across pieces in proportion to length, at
/// least 4 intervals per piece. Piece boundaries are shared samples.
SampleGrid make_grid(const std::vector<Piece>& pieces, std::size_t n);

/// Cumulative integral at every sample, relative to sample 0 (OpenMP over
/// segments, serial prefix sum).
std::vector<double> cumulative(const Slope& slope,
                               const std::vector<Piece>& pieces,
                               const SampleGrid& grid, double tol);

/// Serial reference for cumulative(); bitwise-identical results.
std::vector<double> cumulative_serial(const Slope& slope,
                                      const std::vector<Piece>& pieces,
                                      const SampleGrid& grid, double tol);

/// Integral of slope from the first piece's start to s.
double integral_to(const Slope& slope, const std::vector<Piece>& pieces,
                   double s, double tol);

}  // namespace cmc::detail
