#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "et/errors.hpp"
#include "et/lambert.hpp"

using et::lambert_w0;

namespace {

// Independent oracle: bisection on w e^w - z, valid for z in [-1/e, 0].
double bisect_w0(double z) {
  double lo = -1.0, hi = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::exp(mid) - z <= 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> domain_grid(int points) {
  // log-spaced offsets above the branch point, reaching up to 1e6
  const double branch = -std::exp(-1.0);
  const double t_lo = 1e-12;
  const double t_hi = 1e6 - branch;
  std::vector<double> z(points);
  for (int i = 0; i < points; ++i)
    z[i] = branch + t_lo * std::exp(std::log(t_hi / t_lo) * i / (points - 1));
  return z;
}

}  // namespace

TEST_CASE("pinned values") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambert_w0(-std::exp(-1.0)) == -1.0);
  // z = -1/4 solves w e^w = z at w = -0.3574029561813889...
  CHECK(lambert_w0(-0.25) == doctest::Approx(-0.357402956181389).epsilon(1e-13));
  CHECK(std::fabs(lambert_w0(-0.25) - bisect_w0(-0.25)) <= 1e-12);
}

TEST_CASE("agrees with the bisection oracle on the negative axis") {
  for (double z = -0.36; z <= -0.01; z += 0.01)
    CHECK(std::fabs(lambert_w0(z) - bisect_w0(z)) <= 1e-12);
}

TEST_CASE("inversion residual over the domain") {
  const auto zs = domain_grid(10000);
  double worst = 0.0;
  for (double z : zs) {
    const double w = lambert_w0(z);
    const double residual = std::fabs(w * std::exp(w) - z) / std::fmax(1.0, std::fabs(z));
    worst = std::fmax(worst, residual);
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("monotone and within the branch range") {
  const auto zs = domain_grid(10000);
  double previous = -1.0 - 1e-30;
  for (double z : zs) {
    const double w = lambert_w0(z);
    CHECK(w >= -1.0);
    CHECK(w > previous);
    previous = w;
  }
}

TEST_CASE("domain edge") {
  const double branch = -std::exp(-1.0);
  CHECK(lambert_w0(branch) == -1.0);
  CHECK(lambert_w0(branch - 1e-16) == -1.0);  // clamped onto the branch point
  CHECK_THROWS_AS(lambert_w0(branch - 1e-13), et::LambertDomainError);
  try {
    lambert_w0(-0.4);
    FAIL("expected LambertDomainError");
  } catch (const et::LambertDomainError& e) {
    CHECK(e.z == -0.4);
  }
}
