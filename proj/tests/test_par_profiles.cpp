#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "cmc/curvature.hpp"
#include "cmc/error.hpp"
#include "cmc/par_profiles.hpp"
#include "cmc/surface_builder.hpp"

using namespace cmc;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::DomainError;
}

}  // namespace

TEST_CASE("integrand examples") {
  CHECK(par_integrand({0.0, 1.0, 0.0, 0.0}, 0.5) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(par_integrand({0.0, 1.0, -0.5, 0.0}, 0.5) ==
        doctest::Approx(std::sqrt(2.0) * 2.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(par_integrand({1.0, 1.0, -0.5, 0.0}, 2.0) == 0.0);
  // pitch enters through sqrt(1 + (l y - 2 tau)^2)
  CHECK(par_integrand({0.0, 1.0, 0.0, 2.0}, 0.5) ==
        doctest::Approx(std::sqrt(2.0) * 2.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(code_of([] { par_integrand({0.0, 1.0, 0.0, 0.0}, 1.0); }) == ErrorCode::OutsideDomain);
  CHECK(code_of([] { par_integrand({0.0, 1.0, 0.0, 0.0}, -0.1); }) == ErrorCode::OutsideDomain);
}

TEST_CASE("domains") {
  const ParDomain a = par_domain(1.0, 1.0);
  CHECK(*a.y1 == 1.0);
  CHECK(*a.y2 == 3.0);
  CHECK(*a.y0 == 2.0);
  CHECK(a.lo_vertical);
  CHECK(a.hi_vertical);
  const ParDomain b = par_domain(0.5, 2.0);
  CHECK(b.lo == 0.0);
  CHECK(b.hi == 1.0);
  CHECK(*b.y0 == 0.5);
  const ParDomain c = par_domain(0.25, -0.5);
  CHECK(c.lo == 0.0);
  CHECK(c.hi == 1.0);
  CHECK_FALSE(c.y0);
  CHECK(std::isinf(par_domain(0.25, 0.0).hi));
  CHECK(std::isinf(par_domain(0.0, 0.0).hi));
  CHECK(par_domain(0.0, -4.0).hi == 0.25);
}

TEST_CASE("endpoint conditions") {
  for (auto [H, d] : {std::pair{1.0, 1.0}, {2.0, 8.0}, {0.75, 0.3}, {0.5, 2.0}, {0.25, 0.5},
                      {0.25, -0.5}, {0.0, 3.0}}) {
    const ParDomain dom = par_domain(H, d);
    if (dom.y1) CHECK(d * *dom.y1 - 2 * H == doctest::Approx(-1.0));
    if (dom.y2) CHECK(std::abs(d * *dom.y2 - 2 * H) == doctest::Approx(1.0));
    if (dom.y0) CHECK(d * *dom.y0 - 2 * H == doctest::Approx(0.0).scale(1.0));
  }
}

TEST_CASE("classification") {
  CHECK(classify_parabolic(0.0, 0.0).regime == Regime::Slice);
  CHECK(classify_parabolic(0.0, 1.0).regime == Regime::EmbeddedStrip);
  CHECK(classify_parabolic(0.25, 0.0).regime == Regime::EntireGraph);
  CHECK(classify_parabolic(0.25, -0.5).regime == Regime::EmbeddedAnnulus);
  CHECK(classify_parabolic(0.25, -0.5).embedded);
  CHECK(classify_parabolic(0.25, 0.5).regime == Regime::ImmersedAnnulus);
  CHECK_FALSE(classify_parabolic(0.25, 0.5).embedded);
  CHECK(classify_parabolic(0.5, 2.0).regime == Regime::ImmersedAnnulus);
  const RegimeReport r = classify_parabolic(1.0, 1.0);
  CHECK(r.family == Family::Parabolic);
  CHECK(r.regime == Regime::ImmersedAnnulus);
  CHECK(*r.r1 == 1.0);
  CHECK(*r.r2 == 3.0);
  try {
    classify_parabolic(0.5, -1.0);
    FAIL("expected EmptyFamily");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyFamily);
    CHECK(std::string(e.what()).find("d>0 required for H=1/2") != std::string::npos);
  }
  CHECK(code_of([] { classify_parabolic(1.0, 0.0); }) == ErrorCode::EmptyFamily);
  CHECK(code_of([] { classify_parabolic(-1.0, 0.0); }) == ErrorCode::InvalidH);
}

TEST_CASE("minimal profile matches sqrt2 arcsin") {
  const ParScrewParams p{0.0, 1.0, -0.5, 0.0};
  const ParProfileCurve c = par_profile_numeric(p, 512);
  CHECK(c.hi == 1.0);
  CHECK(c.hi_flags.vertical_tangent);
  CHECK(c.lo_flags.asymptotic);
  const double shift = std::sqrt(2.0) * std::numbers::pi / 2;  // u(1) = 0
  for (const auto& s : c.samples) {
    CHECK(std::abs(s.u - (std::sqrt(2.0) * std::asin(s.s) - shift)) < 1e-8);
  }
}

TEST_CASE("H = 1: monotone on each side of y0") {
  const ParProfileCurve c = par_profile_numeric({1.0, 1.0, -0.5, 0.0}, 512);
  CHECK(c.lo == 1.0);
  CHECK(c.hi == 3.0);
  CHECK(c.reference == 2.0);
  for (std::size_t i = 1; i < c.samples.size(); ++i) {
    const auto& a = c.samples[i - 1];
    const auto& b = c.samples[i];
    if (b.s <= 2.0) CHECK(b.u <= a.u);
    if (a.s >= 2.0) CHECK(b.u >= a.u);
  }
  CHECK(std::isinf(c.samples.front().du));
  CHECK(std::isinf(c.samples.back().du));
}

TEST_CASE("derivative consistency") {
  const ParScrewParams cases[] = {{0.0, 1.0, -0.5, 0.0},  {1.0, 1.0, -0.5, 0.0},
                                  {0.5, 2.0, -0.5, 0.0},  {0.25, -0.5, -0.5, 0.0},
                                  {0.25, 0.5, 0.0, 0.0},  {0.25, 0.0, -0.5, 0.0},
                                  {2.0, 8.0, -0.5, 0.3}};
  for (const auto& p : cases) {
    const ParProfileCurve c = par_profile_numeric(p, 256);
    for (std::size_t i = 1; i + 1 < c.samples.size(); ++i) {
      const auto& s = c.samples[i];
      CHECK(s.du == doctest::Approx(par_integrand(p, s.s)).epsilon(1e-12));
      const double h = 1e-5 * std::min({s.s, s.s - c.lo, c.hi - s.s});
      if (h < 1e-10) continue;
      const double fd = (par_height(p, s.s + h) - par_height(p, s.s - h)) / (2 * h);
      CHECK(std::abs(fd - s.du) < 1e-6 * std::max(1.0, std::abs(s.du)));
    }
  }
}

TEST_CASE("heights are unbounded towards y = 0") {
  for (auto p : {ParScrewParams{0.25, -0.5, -0.5, 0.0}, ParScrewParams{0.5, 2.0, -0.5, 0.0}}) {
    const double a = std::abs(par_height(p, 1e-3));
    const double b = std::abs(par_height(p, 1e-6));
    const double c = std::abs(par_height(p, 1e-9));
    CHECK(b > a + 1.0);
    CHECK(c > b + 1.0);
  }
}

TEST_CASE("closed forms") {
  CHECK(par_closed_form(0.0, 1.0, 0.0, 1.0) == doctest::Approx(std::numbers::pi / 2));
  CHECK(code_of([] { par_closed_form(0.25, 0.5, 0.0, 1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { par_closed_form(0.0, 1.0, 0.0, 1.5); }) == ErrorCode::DomainError);
  struct Case {
    double H, d, lo, hi;
  };
  for (const Case c : {Case{0.0, 1.0, 0.01, 0.99}, Case{0.5, 2.0, 0.01, 0.99},
                       Case{1.0, 1.0, 1.01, 2.99}, Case{2.0, 8.0, 0.3751, 0.6249}}) {
    for (double tau : {0.0, -0.5}) {
      const ParScrewParams p{c.H, c.d, tau, 0.0};
      for (int i = 0; i <= 50; ++i) {
        const double y = c.lo + (c.hi - c.lo) * i / 50.0;
        const double h = 1e-7 * y;
        const double fd = (par_closed_form(c.H, c.d, tau, y + h) - par_closed_form(c.H, c.d, tau, y - h)) / (2 * h);
        CHECK(std::abs(fd - par_integrand(p, y)) < 1e-5 * std::max(1.0, std::abs(fd)));
      }
      const double y_ref = 0.5 * (c.lo + c.hi);
      const double k = par_height(p, y_ref) - par_closed_form(c.H, c.d, tau, y_ref);
      for (int i = 0; i <= 10; ++i) {
        const double y = c.lo + (c.hi - c.lo) * i / 10.0;
        CHECK(par_height(p, y) - par_closed_form(c.H, c.d, tau, y) == doctest::Approx(k).epsilon(1e-8).scale(1.0));
      }
    }
  }
}

TEST_CASE("limit surface") {
  CHECK(par_limit_surface(0.25, 0.0, 1.0) == 0.0);
  CHECK(par_limit_surface(0.25, 0.0, std::numbers::e) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(code_of([] { par_limit_surface(0.5, 0.0, 1.0); }) == ErrorCode::DomainError);
  for (double tau : {0.0, -0.5}) {
    double prev = 1e9;
    for (double d : {1e-2, 1e-3, 1e-4}) {
      const ParScrewParams p{0.25, d, tau, 0.0};
      const double u1 = par_height(p, 1.0);
      double worst = 0;
      for (int i = 0; i <= 30; ++i) {
        const double y = 0.5 + 1.5 * i / 30.0;
        worst = std::max(worst, std::abs((par_height(p, y) - u1) - par_limit_surface(0.25, tau, y)));
      }
      CHECK(worst < prev);
      prev = worst;
    }
    CHECK(prev < 1e-3);
  }
  // d = 0 is the limit surface itself
  const ParScrewParams p0{0.25, 0.0, -0.5, 0.0};
  CHECK(par_height(p0, 3.0) - par_height(p0, 1.0) ==
        doctest::Approx(par_limit_surface(0.25, -0.5, 3.0)).epsilon(1e-10));
}

TEST_CASE("parallel and serial profiles are bitwise equal") {
  for (auto p : {ParScrewParams{1.0, 1.0, -0.5, 0.0}, ParScrewParams{0.25, -0.5, 0.0, 0.4}}) {
    const auto a = par_profile_numeric(p, 1000);
    const auto b = par_profile_numeric_serial(p, 1000);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      CHECK(a.samples[i].s == b.samples[i].s);
      CHECK(a.samples[i].u == b.samples[i].u);
    }
  }
}

TEST_CASE("parabolic screw graphs pass both oracles") {
  const ParScrewParams cases[] = {{0.25, -0.5, -0.5, 0.7}, {1.0, 1.0, -0.5, -0.4},
                                  {0.5, 2.0, 0.3, 0.5}, {0.0, 1.0, -0.5, 1.2}};
  for (const auto& p : cases) {
    const ParDomain dom = par_domain(p.H, p.d);
    const double lo = std::max(dom.lo, 0.05) + 0.02;
    const double hi = dom.hi - 0.02;
    const GraphFunction u = parabolic_graph(p);
    const AmbientSpace s{Model::HalfPlane, p.tau};
    for (int i = 0; i < 12; ++i) {
      const double y = lo + (hi - lo) * (i + 0.5) / 12;
      const double x = -0.5 + 0.1 * i;
      CHECK(mean_curvature_div(s, u, x, y, {1e-5, true, 1e-4}) == doctest::Approx(p.H).epsilon(1e-3).scale(1.0));
      CHECK(mean_curvature_pde(s, u, x, y, {1e-5, true, 1e-4}) == doctest::Approx(p.H).epsilon(1e-3).scale(1.0));
    }
  }
}
