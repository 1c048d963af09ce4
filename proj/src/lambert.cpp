#include "et/lambert.hpp"

#include <cmath>
#include <cstdio>

#include "et/errors.hpp"

// Halley iteration on f(w) = w e^w - z, seeded piecewise: a square-root
// series about the branch point for z near -1/e, log1p(z) for moderate z,
// and log(z) - log(log(z)) asymptotics for large z. The branch-point series
// alone is already at full precision when the expansion parameter is small.

namespace et {
namespace {

constexpr int kMaxIterations = 50;

double branch_series(double p) {
  // w = -1 + p - p^2/3 + 11/72 p^3 - 43/540 p^4, p = sqrt(2(e z + 1))
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * (43.0 / 540.0))));
}

double initial_guess(double z, double p) {
  if (z < -0.30) return branch_series(p);
  if (z <= 2.0) return std::log1p(z);
  const double l1 = std::log(z);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

LambertDomainError::LambertDomainError(double z)
    : Error([z] {
        char buf[80];
        std::snprintf(buf, sizeof buf, "lambert_w0: argument %.17g is below the branch point -1/e", z);
        return std::string(buf);
      }()),
      z(z) {}

double lambert_w0(double z) {
  const double branch = -std::exp(-1.0);
  if (z < branch) {
    if (z >= branch - 1e-15) return -1.0;
    throw LambertDomainError(z);
  }
  if (z == 0.0) return 0.0;

  const double p = std::sqrt(2.0 * (std::exp(1.0) * z + 1.0));
  if (p <= 1e-3) return branch_series(p);  // series error ~ p^5, below double precision

  double w = initial_guess(z, p);
  for (int i = 0; i < kMaxIterations; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::fabs(step) <= 1e-16 * std::fmax(1.0, std::fabs(w))) break;
  }
  return w < -1.0 ? -1.0 : w;
}

}  // namespace et
