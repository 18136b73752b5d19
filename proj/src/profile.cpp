#include "cmc/profile.hpp"

#include <cstdlib>
#include <string>

namespace cmc {

std::string_view to_string(Family family) {
  return family == Family::Rotational ? "rotational" : "parabolic";
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Slice: return "Slice";
    case Regime::Catenoid: return "Catenoid";
    case Regime::EmbeddedAnnulus: return "EmbeddedAnnulus";
    case Regime::EntireGraph: return "EntireGraph";
    case Regime::ImmersedAnnulus: return "ImmersedAnnulus";
    case Regime::Sphere: return "Sphere";
    case Regime::Nodoid: return "Nodoid";
    case Regime::Unduloid: return "Unduloid";
    case Regime::Cylinder: return "Cylinder";
    case Regime::EmbeddedStrip: return "EmbeddedStrip";
  }
  return "Unknown";
}

double default_tolerance(double fallback) {
  const char* env = std::getenv("CMC_PSL2_TOL");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0)) return fallback;
  return v;
}

}  // namespace cmc
