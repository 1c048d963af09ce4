#pragma once

// Closed-form energies and relative errors for the two benchmark systems:
// the fermionic Calogero model (exactly solvable, envelope result is a lower
// bound) and bosons in an attractive Gaussian well (envelope result is an
// upper bound through the Lambert W0 branch).

#include <optional>

#include "et/core.hpp"
#include "et/solver.hpp"

namespace et {

// Harmonic-plus-inverse-square pair interaction with nonrelativistic
// kinematics of the same mass m; g' = m g is the dimensionless coupling.
struct CalogeroParams {
  CalogeroParams(double m, double omega, double g);

  double m;
  double omega;
  double g;

  double g_prime() const { return m * g; }
  KineticLaw kinetic() const;
  PairPotential potential() const;
};

// Attractive Gaussian well of depth v_g and range a with nonrelativistic
// kinematics of mass m.
struct GaussianParams {
  GaussianParams(double m, double v_g, double a);

  // Well specified by its integrated strength v0 (so v_g = v0/(sqrt(pi) a))
  // and by 1/m directly, matching the benchmark's atomic-unit/Kelvin
  // convention.
  static GaussianParams from_v0(double inverse_mass, double v0, double a);

  double m;
  double v_g;
  double a;

  KineticLaw kinetic() const;
  PairPotential potential() const;
};

// Exact fermionic ground-state energy
//   omega sqrt(N/2) (N-1)/2 (N+1 + N (sqrt(1+4g')-1)/2).
double calogero_exact(const CalogeroParams& params, int n_particles);

// Envelope lower bound
//   omega sqrt(N/2) (N-1)/2 sqrt((N+1)^2 + 2 N g').
double calogero_et(const CalogeroParams& params, int n_particles);

// Relative error (E_exact - E_et)/E_exact; zero at g' = 0.
double calogero_delta(const CalogeroParams& params, int n_particles);

// Large-N saturation value (sqrt(1+4g')-1)/(sqrt(1+4g')+1).
double calogero_delta_limit(double g_prime);

struct GaussianEtDetail {
  double y = 0.0;                   // Lambert argument
  std::optional<double> w0;        // empty when y is below the branch point
  std::optional<double> energy;    // empty when no real solution exists
  bool relevant = false;           // real and strictly negative
};

// Closed-form upper bound through W0:
//   E = -(N(N-1)/2) v_g Y^2 (1 + 2 W0(Y)) / W0(Y)^2,
// with Y = -1/(2 a sqrt(2 m v_g N)) for the bosonic ground-state quantum
// number (general Q uses Y = -Q sqrt(N)/(2 C a sqrt(2 m v_g))). Real but
// non-negative energies and arguments past the branch point are flagged as
// not relevant.
GaussianEtDetail gaussian_et_detail(const GaussianParams& params, int n_particles,
                                    QuantumNumber q);

// As above, throwing IrrelevantEnergyError instead of flagging.
double gaussian_et(const GaussianParams& params, int n_particles, QuantumNumber q);

// Relative error (e_reference - e_et)/e_reference for a negative reference
// energy (e.g. an externally computed mesh value).
double gaussian_delta(double e_reference, double e_et);

}  // namespace et
