#include "et/models.hpp"

#include <cmath>
#include <stdexcept>

#include "et/errors.hpp"
#include "et/format.hpp"
#include "et/lambert.hpp"

namespace et {

CalogeroParams::CalogeroParams(double m_, double omega_, double g_) : m(m_), omega(omega_), g(g_) {
  if (!(m > 0.0)) throw std::invalid_argument("Calogero mass must be positive");
  if (!(omega > 0.0)) throw std::invalid_argument("Calogero omega must be positive");
  if (!(g >= 0.0)) throw std::invalid_argument("Calogero coupling g must be non-negative");
}

KineticLaw CalogeroParams::kinetic() const { return KineticLaw::nonrelativistic_mass(m); }

PairPotential CalogeroParams::potential() const { return CalogeroPotential{m, omega, g}; }

GaussianParams::GaussianParams(double m_, double v_g_, double a_) : m(m_), v_g(v_g_), a(a_) {
  if (!(m > 0.0)) throw std::invalid_argument("Gaussian mass must be positive");
  if (!(v_g > 0.0)) throw std::invalid_argument("Gaussian depth v_g must be positive");
  if (!(a > 0.0)) throw std::invalid_argument("Gaussian range a must be positive");
}

GaussianParams GaussianParams::from_v0(double inverse_mass, double v0, double a) {
  if (!(inverse_mass > 0.0)) throw std::invalid_argument("inverse mass must be positive");
  if (!(v0 > 0.0)) throw std::invalid_argument("well strength v0 must be positive");
  if (!(a > 0.0)) throw std::invalid_argument("Gaussian range a must be positive");
  const double v_g = v0 / (std::sqrt(M_PI) * a);
  return GaussianParams(1.0 / inverse_mass, v_g, a);
}

KineticLaw GaussianParams::kinetic() const { return KineticLaw::nonrelativistic_mass(m); }

PairPotential GaussianParams::potential() const { return GaussianPotential{v_g, a}; }

namespace {

void require_n(int n_particles) {
  if (n_particles < 2)
    throw std::invalid_argument("a pairwise system needs at least 2 particles");
}

}  // namespace

double calogero_exact(const CalogeroParams& params, int n_particles) {
  require_n(n_particles);
  const double n = n_particles;
  const double gp = params.g_prime();
  return params.omega * std::sqrt(0.5 * n) * 0.5 * (n - 1.0) *
         (n + 1.0 + n * 0.5 * (std::sqrt(1.0 + 4.0 * gp) - 1.0));
}

double calogero_et(const CalogeroParams& params, int n_particles) {
  require_n(n_particles);
  const double n = n_particles;
  const double gp = params.g_prime();
  return params.omega * std::sqrt(0.5 * n) * 0.5 * (n - 1.0) *
         std::sqrt((n + 1.0) * (n + 1.0) + 2.0 * n * gp);
}

double calogero_delta(const CalogeroParams& params, int n_particles) {
  const double exact = calogero_exact(params, n_particles);
  return (exact - calogero_et(params, n_particles)) / exact;
}

double calogero_delta_limit(double g_prime) {
  if (!(g_prime >= 0.0)) throw std::invalid_argument("g' must be non-negative");
  const double s = std::sqrt(1.0 + 4.0 * g_prime);
  return (s - 1.0) / (s + 1.0);
}

GaussianEtDetail gaussian_et_detail(const GaussianParams& params, int n_particles,
                                    QuantumNumber q) {
  require_n(n_particles);
  if (!(q.value > 0.0)) throw std::invalid_argument("quantum number Q must be positive");
  const double n = n_particles;
  const double c = pair_count(n_particles);
  const double ground = 0.5 * (n - 1.0);

  GaussianEtDetail detail;
  if (std::fabs(q.value - ground) <= 1e-12 * ground) {
    detail.y = -1.0 / (2.0 * params.a * std::sqrt(2.0 * params.m * params.v_g * n));
  } else {
    detail.y = -q.value * std::sqrt(n) / (2.0 * c * params.a * std::sqrt(2.0 * params.m * params.v_g));
  }

  const double branch = -std::exp(-1.0);
  if (detail.y < branch - 1e-15) return detail;  // complex energies: not relevant

  const double w = lambert_w0(detail.y);
  detail.w0 = w;
  detail.energy = -c * params.v_g * detail.y * detail.y * (1.0 + 2.0 * w) / (w * w);
  detail.relevant = *detail.energy < 0.0;
  return detail;
}

double gaussian_et(const GaussianParams& params, int n_particles, QuantumNumber q) {
  const GaussianEtDetail detail = gaussian_et_detail(params, n_particles, q);
  if (!detail.relevant) {
    if (!detail.energy)
      throw IrrelevantEnergyError("irrelevant energy: Lambert argument Y = " +
                                  format_number(detail.y) +
                                  " is below the branch point -1/e (complex energies)");
    throw IrrelevantEnergyError("irrelevant energy: upper bound " + format_number(*detail.energy) +
                                    " is non-negative for a purely attractive potential",
                                detail.energy);
  }
  return *detail.energy;
}

double gaussian_delta(double e_reference, double e_et) {
  if (!(e_reference < 0.0))
    throw std::invalid_argument("reference energy must be negative for a bound state");
  return (e_reference - e_et) / e_reference;
}

}  // namespace et
