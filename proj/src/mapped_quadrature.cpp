#include "cmc/detail/mapped_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cmc/detail/parallel.hpp"
#include "cmc/error.hpp"

namespace cmc::detail {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr unsigned kMaxDepth = 15;
constexpr double kRequestedRelTol = 1e-12;

}  // namespace

MappedPoint map_point(const Piece& piece, double sigma) {
  const double len = piece.b - piece.a;
  MappedPoint p{0.0, 0.0, 0.0, &piece};
  switch (piece.kind) {
    case MapKind::Linear:
      p.from_a = len * sigma;
      p.to_b = len * (1.0 - sigma);
      break;
    case MapKind::SqrtLo:
      p.from_a = len * sigma * sigma;
      p.to_b = len * (1.0 - sigma) * (1.0 + sigma);
      break;
    case MapKind::SqrtHi:
      p.to_b = len * (1.0 - sigma) * (1.0 - sigma);
      p.from_a = len * sigma * (2.0 - sigma);
      break;
    case MapKind::SqrtBoth: {
      const double sn = std::sin(0.5 * kPi * sigma);
      const double cs = std::cos(0.5 * kPi * sigma);
      p.from_a = len * sn * sn;
      p.to_b = len * cs * cs;
      break;
    }
    case MapKind::LogLo: {
      const double s = piece.a * std::exp(sigma * std::log(piece.b / piece.a));
      p.s = sigma >= 1.0 ? piece.b : (sigma <= 0.0 ? piece.a : s);
      p.from_a = p.s - piece.a;
      p.to_b = piece.b - p.s;
      return p;
    }
  }
  if (sigma <= 0.0) {
    p.s = piece.a;
  } else if (sigma >= 1.0) {
    p.s = piece.b;
  } else {
    p.s = p.from_a <= p.to_b ? piece.a + p.from_a : piece.b - p.to_b;
  }
  return p;
}

double map_jacobian(const Piece& piece, double sigma) {
  const double len = piece.b - piece.a;
  switch (piece.kind) {
    case MapKind::Linear: return len;
    case MapKind::SqrtLo: return 2.0 * len * sigma;
    case MapKind::SqrtHi: return 2.0 * len * (1.0 - sigma);
    case MapKind::SqrtBoth: return 0.5 * kPi * len * std::sin(kPi * sigma);
    case MapKind::LogLo: {
      const double k = std::log(piece.b / piece.a);
      return piece.a * std::exp(sigma * k) * k;
    }
  }
  return 0.0;
}

double unmap(const Piece& piece, double s) {
  const double len = piece.b - piece.a;
  if (s <= piece.a) return 0.0;
  if (s >= piece.b) return 1.0;
  switch (piece.kind) {
    case MapKind::Linear: return (s - piece.a) / len;
    case MapKind::SqrtLo: return std::sqrt((s - piece.a) / len);
    case MapKind::SqrtHi: return 1.0 - std::sqrt((piece.b - s) / len);
    case MapKind::SqrtBoth:
      return 2.0 / kPi * std::asin(std::sqrt((s - piece.a) / len));
    case MapKind::LogLo: return std::log(s / piece.a) / std::log(piece.b / piece.a);
  }
  return 0.0;
}

double integrate_mapped(const Slope& slope, const Piece& piece, double sigma0,
                        double sigma1, double tol) {
  if (sigma1 == sigma0) return 0.0;
  // Boost compares its unscaled error estimate with a scaled tolerance, so
  // the segment is rescaled to [-1, 1] before integration.
  const double mid = 0.5 * (sigma0 + sigma1);
  const double half = 0.5 * (sigma1 - sigma0);
  auto f = [&](double x) {
    const double sigma = x <= -1.0 ? sigma0 : (x >= 1.0 ? sigma1 : mid + half * x);
    return slope(map_point(piece, sigma)) * map_jacobian(piece, sigma) * half;
  };
  double err = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, -1.0, 1.0, kMaxDepth, kRequestedRelTol, &err, &l1);
  const double allowed = std::max(10.0 * tol, 1e-12 * l1);
  if (!std::isfinite(value) || !(err <= allowed)) {
    std::ostringstream os;
    os.precision(17);
    os << "error estimate " << err << " exceeds " << allowed << " on ["
       << map_point(piece, sigma0).s << ", " << map_point(piece, sigma1).s << "]";
    fail(ErrorCode::QuadratureFailure, os.str());
  }
  return value;
}

SampleGrid make_grid(const std::vector<Piece>& pieces, std::size_t n) {
  double total = 0.0;
  for (const auto& p : pieces) total += p.b - p.a;
  SampleGrid grid;
  const double intervals = static_cast<double>(n > 1 ? n - 1 : 1);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& piece = pieces[k];
    const std::size_t m = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::lround(intervals * (piece.b - piece.a) / total)));
    if (k == 0) {
      grid.piece_start.push_back(0);
      grid.s.push_back(piece.a);
      grid.piece_of.push_back(0);
      grid.sigma.push_back(0.0);
    } else {
      grid.piece_start.push_back(grid.s.size() - 1);
    }
    for (std::size_t j = 1; j <= m; ++j) {
      const double sigma = static_cast<double>(j) / static_cast<double>(m);
      grid.s.push_back(map_point(piece, sigma).s);
      grid.piece_of.push_back(k);
      grid.sigma.push_back(sigma);
    }
  }
  grid.piece_start.push_back(grid.s.size());
  return grid;
}

namespace {

double segment(const Slope& slope, const std::vector<Piece>& pieces,
               const SampleGrid& grid, std::size_t i, double tol) {
  const std::size_t k = grid.piece_of[i];
  const double sigma0 = grid.piece_of[i - 1] == k ? grid.sigma[i - 1] : 0.0;
  return integrate_mapped(slope, pieces[k], sigma0, grid.sigma[i], tol);
}

std::vector<double> prefix(const std::vector<double>& seg) {
  std::vector<double> out(seg.size(), 0.0);
  for (std::size_t i = 1; i < seg.size(); ++i) out[i] = out[i - 1] + seg[i];
  return out;
}

}  // namespace

std::vector<double> cumulative(const Slope& slope,
                               const std::vector<Piece>& pieces,
                               const SampleGrid& grid, double tol) {
  std::vector<double> seg(grid.s.size(), 0.0);
  parallel_for(static_cast<std::ptrdiff_t>(grid.s.size()) - 1,
               [&](std::ptrdiff_t j) {
                 const auto i = static_cast<std::size_t>(j) + 1;
                 seg[i] = segment(slope, pieces, grid, i, tol);
               });
  return prefix(seg);
}

std::vector<double> cumulative_serial(const Slope& slope,
                                      const std::vector<Piece>& pieces,
                                      const SampleGrid& grid, double tol) {
  std::vector<double> seg(grid.s.size(), 0.0);
  for (std::size_t i = 1; i < grid.s.size(); ++i) {
    seg[i] = segment(slope, pieces, grid, i, tol);
  }
  return prefix(seg);
}

double integral_to(const Slope& slope, const std::vector<Piece>& pieces,
                   double s, double tol) {
  double total = 0.0;
  for (const auto& piece : pieces) {
    if (s >= piece.b && &piece != &pieces.back()) {
      total += integrate_mapped(slope, piece, 0.0, 1.0, tol);
      continue;
    }
    return total + integrate_mapped(slope, piece, 0.0, unmap(piece, s), tol);
  }
  return total;
}

}  // namespace cmc::detail
