#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmc::detail {

/// Equality up to a few ulps; used to detect the boundary cases of the
/// classification (d = -2H, H = 1/2, d = -sqrt(4H^2 - 1)).
inline bool nearly_equal(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace cmc::detail
