#pragma once

// Generic envelope engine: solves the coupled scale equations
//
//   E = N T(p0) + C V(x0 / sqrt(C)),   x0 p0 = Q,
//   N p0 T'(p0) = sqrt(C) x0 V'(x0 / sqrt(C)),   C = N(N-1)/2,
//
// for arbitrary kinetic laws T(p) and pair potentials V(x), and classifies
// whether the result is a guaranteed upper bound, lower bound, or exact.

#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "et/core.hpp"
#include "et/expr.hpp"
#include "et/parallel.hpp"

namespace et {

// T(p): built-in nonrelativistic p^2/(2m), kept as an inverse mass so the
// Kelvin/atomic-unit convention 1/m can be fed in directly, or a parsed
// expression in the variable p.
class KineticLaw {
 public:
  static KineticLaw nonrelativistic_mass(double mass);
  static KineticLaw nonrelativistic_inverse_mass(double inverse_mass);
  static KineticLaw custom(expr::Parsed parsed, expr::ParamMap params = {});

  // Value and exact first derivative at p > 0.
  std::pair<double, double> value_and_derivative(double p) const;
  double value(double p) const;

  bool is_nonrelativistic() const;
  double inverse_mass() const;  // only meaningful for the built-in form

 private:
  struct NonRelativistic {
    double inverse_mass;
  };
  struct Custom {
    expr::Parsed parsed;
    expr::ParamMap params;
  };
  explicit KineticLaw(std::variant<NonRelativistic, Custom> body) : body_(std::move(body)) {}

  std::variant<NonRelativistic, Custom> body_;
};

// V(x) = m w^2 x^2 / 4 + g / x^2
struct CalogeroPotential {
  double m = 1.0;
  double omega = 1.0;
  double g = 0.0;
};

// V(x) = -v_g exp(-x^2 / a^2)
struct GaussianPotential {
  double v_g = 1.0;
  double a = 1.0;
};

struct PowerLawTerm {
  double coefficient = 0.0;
  double exponent = 0.0;
};

// V(x) = sum_k coefficient_k * x^exponent_k
struct PowerLawSumPotential {
  std::vector<PowerLawTerm> terms;
};

// V(x) from a parsed expression in the variable x.
struct CustomPotential {
  expr::Parsed parsed;
  expr::ParamMap params;
};

class PairPotential {
 public:
  PairPotential(CalogeroPotential p);        // NOLINT: implicit by design
  PairPotential(GaussianPotential p);        // NOLINT
  PairPotential(PowerLawSumPotential p);     // NOLINT
  PairPotential(CustomPotential p);          // NOLINT

  std::pair<double, double> value_and_derivative(double x) const;
  double value(double x) const;

  const CalogeroPotential* as_calogero() const;
  const GaussianPotential* as_gaussian() const;

 private:
  std::variant<CalogeroPotential, GaussianPotential, PowerLawSumPotential, CustomPotential> body_;
};

// Length scale used for default scan and probe windows: the range a for the
// Gaussian well, 1/sqrt(m omega) for the Calogero interaction, 1 otherwise.
double potential_length_scale(const PairPotential& potential);

// As above, but with the fallback Q / sqrt(2 m |V(1)|) when the kinetic law
// is nonrelativistic and the potential offers no scale of its own.
double characteristic_length(const KineticLaw& kinetic, const PairPotential& potential,
                             int n_particles, QuantumNumber q);

struct SolverConfig {
  double x0_scan_min = 0.0;  // 0 = auto: 1e-6 * characteristic length
  double x0_scan_max = 0.0;  // 0 = auto: 1e+6 * characteristic length
  int scan_points = 2048;
  double root_tol = 1e-12;  // relative width at which a bracket counts as solved
  int max_bisection_steps = 200;
};

// Log-spaced sampling window for the envelope classification. Curvature is
// probed in the squared coordinate s = x^2 (and s = p^2 for the kinetic
// part), where the harmonic envelope is a straight line.
struct ProbeSpec {
  double x_min = 0.0;  // 0 = auto: 1e-3 * potential length scale
  double x_max = 0.0;  // 0 = auto: 1e+3 * potential length scale
  double p_min = 0.0;  // 0 = auto: reciprocal of the x window
  double p_max = 0.0;
  int points_per_decade = 64;
  double affine_tol = 1e-10;  // second differences below tol * local scale count as affine
};

// Tangent-line test in s = x^2: V(sqrt(s)) concave means the tangent
// parabola in x lies above V (upper bound); convex means below (lower
// bound); affine means the envelope family contains V itself (exact).
// Kinetic and potential parts must agree, otherwise NoGuarantee.
BoundCharacter classify_bound(const KineticLaw& kinetic, const PairPotential& potential,
                              const ProbeSpec& probe = {});

// Left minus right side of the stationarity condition at x0 > 0, with
// p0 = Q/x0 substituted. Exposed for diagnostics and tests.
double residual(const KineticLaw& kinetic, const PairPotential& potential, int n_particles,
                QuantumNumber q, double x0);

// Energy of the trial configuration at scale x0 (not necessarily stationary).
double energy_at(const KineticLaw& kinetic, const PairPotential& potential, int n_particles,
                 QuantumNumber q, double x0);

std::vector<double> make_log_grid(double lo, double hi, int points);

// Residuals over a fixed grid of x0 values; the data-parallel kernel behind
// solve_et. Points whose evaluation leaves the expression domain are
// recorded as NaN; if every point fails, the first error is rethrown.
std::vector<double> scan_residuals(const KineticLaw& kinetic, const PairPotential& potential,
                                   int n_particles, QuantumNumber q,
                                   std::span<const double> x0_grid,
                                   ExecPolicy policy = ExecPolicy::Parallel);

// Scans for sign changes of the residual on a log grid, bisects every
// bracket, and keeps the root of minimal energy for upper bounds and maximal
// energy for lower bounds. Throws NoRootError when the residual keeps one
// sign, or IrrelevantEnergyError when an everywhere-attractive potential
// yields no negative energy.
EtSolution solve_et(const KineticLaw& kinetic, const PairPotential& potential, int n_particles,
                    QuantumNumber q, const SolverConfig& config = {},
                    ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace et
