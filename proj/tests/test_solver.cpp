#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "et/core.hpp"
#include "et/errors.hpp"
#include "et/expr.hpp"
#include "et/models.hpp"
#include "et/oracle.hpp"
#include "et/solver.hpp"

using et::BoundCharacter;
using et::KineticLaw;
using et::PairPotential;
using et::QuantumNumber;

namespace {

PairPotential harmonic(double k) {
  return et::PowerLawSumPotential{{{k, 2.0}}};
}

}  // namespace

TEST_CASE("residual vanishes at analytic roots and changes sign across them") {
  const KineticLaw kin = KineticLaw::nonrelativistic_mass(1.0);

  // harmonic, N=2, Q=1/2: x0^2 = Q sqrt(N/(2 k m)) = 1/2
  {
    const PairPotential pot = harmonic(1.0);
    const double x0 = std::sqrt(0.5);
    CHECK(std::fabs(et::residual(kin, pot, 2, {0.5}, x0)) <= 1e-12);
    CHECK(et::residual(kin, pot, 2, {0.5}, x0 / 3.0) > 0.0);
    CHECK(et::residual(kin, pot, 2, {0.5}, x0 * 3.0) < 0.0);
  }

  // Calogero m=omega=g=1, N=3, Q=4: the stationarity condition reduces to
  // x0^4 = 2 (N Q^2 + 2 g' C^2) = 132
  {
    const PairPotential pot = et::CalogeroPotential{1.0, 1.0, 1.0};
    const double x0 = std::pow(132.0, 0.25);
    CHECK(std::fabs(et::residual(kin, pot, 3, {4.0}, x0)) <= 1e-9);
  }

  CHECK_THROWS_AS(et::residual(kin, harmonic(1.0), 2, {0.5}, -1.0), std::invalid_argument);
}

TEST_CASE("harmonic case is solved exactly") {
  const KineticLaw kin = KineticLaw::nonrelativistic_mass(1.0);
  const et::EtSolution s = et::solve_et(kin, harmonic(1.0), 2, {0.5});
  CHECK(s.energy == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.bound == BoundCharacter::Exact);
  CHECK(s.n_roots_found == 1);
  CHECK(s.p0 == QuantumNumber{0.5}.value / s.x0);  // Eq.-style constraint holds by construction
  CHECK(s.x0 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));

  // same problem through parsed expressions
  const KineticLaw custom_kin = KineticLaw::custom(et::expr::parse("p^2/(2*m)", "p"), {{"m", 1.0}});
  const PairPotential custom_pot = et::CustomPotential{et::expr::parse("x*x", "x"), {}};
  const et::EtSolution c = et::solve_et(custom_kin, custom_pot, 2, {0.5});
  CHECK(c.energy == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c.bound == BoundCharacter::Exact);
}

TEST_CASE("harmonic exactness property: E = Q sqrt(2kN/m)") {
  std::mt19937 rng(7011u);
  std::uniform_real_distribution<double> coef(0.1, 10.0);
  std::uniform_int_distribution<int> pick_n(2, 12);
  std::uniform_real_distribution<double> pick_q(0.5, 30.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double k = coef(rng);
    const double m = coef(rng);
    const int n = pick_n(rng);
    const double q = pick_q(rng);
    const KineticLaw kin = KineticLaw::nonrelativistic_mass(m);
    const et::EtSolution s = et::solve_et(kin, harmonic(k), n, {q});
    const double expected = q * std::sqrt(2.0 * k * n / m);
    CHECK(std::fabs(s.energy - expected) <= 1e-10 * expected);
    CHECK(s.bound == BoundCharacter::Exact);
  }
}

TEST_CASE("generic solver reproduces the Calogero closed form") {
  std::mt19937 rng(90210u);
  std::uniform_real_distribution<double> par(0.2, 5.0);
  std::uniform_real_distribution<double> coupling(0.0, 10.0);
  std::uniform_int_distribution<int> pick_n(2, 50);
  for (int rep = 0; rep < 200; ++rep) {
    const double m = par(rng);
    const double omega = par(rng);
    const double gp = coupling(rng);
    const int n = pick_n(rng);
    const et::CalogeroParams params(m, omega, gp / m);
    const QuantumNumber q = et::q_ground(n, et::Statistics::Fermion);
    const et::EtSolution s = et::solve_et(params.kinetic(), params.potential(), n, q);
    const double closed = et::calogero_et(params, n);
    CHECK(std::fabs(s.energy - closed) <= 1e-9 * std::fabs(closed));
    CHECK(s.bound == (gp == 0.0 ? BoundCharacter::Exact : BoundCharacter::LowerBound));
  }
}

TEST_CASE("generic solver reproduces the Gaussian closed form on the relevant domain") {
  std::mt19937 rng(31415u);
  std::uniform_real_distribution<double> pick_a(0.3, 3.0);
  std::uniform_real_distribution<double> pick_m(0.2, 5.0);
  std::uniform_real_distribution<double> pick_y(-0.30, -0.02);
  std::uniform_int_distribution<int> pick_n(2, 50);
  for (int rep = 0; rep < 200; ++rep) {
    const double a = pick_a(rng);
    const double m = pick_m(rng);
    const int n = pick_n(rng);
    const double y = pick_y(rng);
    // choose the depth so the Lambert argument lands at y
    const double v_g = 1.0 / (8.0 * m * n * a * a * y * y);
    const et::GaussianParams params(m, v_g, a);
    const QuantumNumber q = et::q_ground(n, et::Statistics::Boson);
    const double closed = et::gaussian_et(params, n, q);
    const et::EtSolution s = et::solve_et(params.kinetic(), params.potential(), n, q);
    CHECK(std::fabs(s.energy - closed) <= 1e-9 * std::fabs(closed));
    CHECK(s.bound == BoundCharacter::UpperBound);
    // the minimal-energy tangency point is the W0 branch: two stationary
    // points exist and the reported energy is the negative one
    CHECK(s.n_roots_found == 2);
    CHECK(s.energy < 0.0);
  }
}

TEST_CASE("bound classification") {
  const KineticLaw nonrel = KineticLaw::nonrelativistic_mass(1.0);

  CHECK(et::classify_bound(nonrel, et::GaussianPotential{1.0, 1.0}) == BoundCharacter::UpperBound);
  CHECK(et::classify_bound(nonrel, et::CalogeroPotential{1.0, 1.0, 1.0}) ==
        BoundCharacter::LowerBound);
  CHECK(et::classify_bound(nonrel, harmonic(2.5)) == BoundCharacter::Exact);
  CHECK(et::classify_bound(nonrel, et::CalogeroPotential{1.0, 1.0, 0.0}) == BoundCharacter::Exact);

  const PairPotential parsed_harmonic = et::CustomPotential{et::expr::parse("k*x^2", "x"),
                                                            {{"k", 3.0}}};
  CHECK(et::classify_bound(nonrel, parsed_harmonic) == BoundCharacter::Exact);

  // curvature of V(sqrt(s)) changes sign: no guarantee either way
  const PairPotential mixed = et::CustomPotential{et::expr::parse("-exp(-x^2) + 0.01*x^4", "x"),
                                                  {}};
  CHECK(et::classify_bound(nonrel, mixed) == BoundCharacter::NoGuarantee);

  // relativistic-style kinetic law: T(sqrt(s)) is concave
  const KineticLaw rel = KineticLaw::custom(et::expr::parse("sqrt(p^2 + 1)", "p"), {});
  CHECK(et::classify_bound(rel, et::GaussianPotential{1.0, 1.0}) == BoundCharacter::UpperBound);
  CHECK(et::classify_bound(rel, et::CalogeroPotential{1.0, 1.0, 1.0}) ==
        BoundCharacter::NoGuarantee);
}

TEST_CASE("irrelevant and no-root failures are distinguished") {
  const KineticLaw kin = KineticLaw::nonrelativistic_mass(1.0);

  // attractive Gaussian with too few particles: no real stationary point
  const et::GaussianParams params = et::GaussianParams::from_v0(43.281307, 10.0, 0.2);
  CHECK_THROWS_AS(et::solve_et(params.kinetic(), params.potential(), 20,
                               et::q_ground(20, et::Statistics::Boson)),
                  et::IrrelevantEnergyError);

  // repulsive decaying tail: no stationary point, but a positive potential
  // is not a bound-state problem, so the window is the suspect
  const PairPotential repulsive = et::CustomPotential{et::expr::parse("1/x", "x"), {}};
  CHECK_THROWS_AS(et::solve_et(kin, repulsive, 2, {0.5}), et::NoRootError);

  // in-domain Lambert argument but non-negative energy: irrelevant, with the
  // energy attached
  const et::GaussianParams positive_case = et::GaussianParams::from_v0(43.281307, 10.0, 0.5);
  try {
    et::solve_et(positive_case.kinetic(), positive_case.potential(), 20,
                 et::q_ground(20, et::Statistics::Boson));
    FAIL("expected IrrelevantEnergyError");
  } catch (const et::IrrelevantEnergyError& e) {
    REQUIRE(e.energy.has_value());
    CHECK(*e.energy >= 0.0);
  }
}

TEST_CASE("solution residual is small relative to both sides") {
  const et::CalogeroParams params(1.0, 1.0, 1.0);
  const et::EtSolution s =
      et::solve_et(params.kinetic(), params.potential(), 3, et::q_ground(3, et::Statistics::Fermion));
  const double lhs = 3.0 * s.p0 * s.p0;  // N p0 T'(p0) with m = 1
  CHECK(s.residual <= 1e-9 * std::fabs(lhs));
  CHECK(s.x0 == doctest::Approx(std::pow(132.0, 0.25)).epsilon(1e-11));
}

TEST_CASE("bound ordering against the two-body oracle") {
  const et::GridSpec fine_grid{0.0, 4001, et::Boundary::FullLine};

  // Gaussian upper bound at N=2
  {
    const et::GaussianParams params(1.0, 1.0, 1.0);
    const QuantumNumber q = et::q_ground(2, et::Statistics::Boson);
    const et::EtSolution s = et::solve_et(params.kinetic(), params.potential(), 2, q);
    CHECK(s.bound == BoundCharacter::UpperBound);
    const et::RefineResult oracle = et::refine(params.potential(), params.m, fine_grid);
    CHECK(s.energy - oracle.energy > oracle.error_estimate);
  }

  // Calogero lower bounds at N=2 across couplings
  for (const double gp : {0.2, 1.0, 5.0}) {
    const et::CalogeroParams params(1.0, 1.0, gp);
    const QuantumNumber q = et::q_ground(2, et::Statistics::Fermion);
    const et::EtSolution s = et::solve_et(params.kinetic(), params.potential(), 2, q);
    CHECK(s.bound == BoundCharacter::LowerBound);
    const et::GridSpec half{0.0, 4001, et::Boundary::HalfLineDirichlet};
    const et::RefineResult oracle = et::refine(params.potential(), params.m, half);
    CHECK(oracle.energy - s.energy > oracle.error_estimate);
    // the analytic energy sits between bound and oracle
    const double exact = et::calogero_exact(params, 2);
    CHECK(s.energy < exact);
    CHECK(std::fabs(oracle.energy - exact) <= 1e-5 * exact);
  }
}

TEST_CASE("solver configuration is validated") {
  const KineticLaw kin = KineticLaw::nonrelativistic_mass(1.0);
  et::SolverConfig config;
  config.scan_points = 32;
  CHECK_THROWS_AS(et::solve_et(kin, harmonic(1.0), 2, {0.5}, config), std::invalid_argument);
  config = {};
  config.x0_scan_min = 2.0;
  config.x0_scan_max = 1.0;
  CHECK_THROWS_AS(et::solve_et(kin, harmonic(1.0), 2, {0.5}, config), std::invalid_argument);
  CHECK_THROWS_AS(et::solve_et(kin, harmonic(1.0), 1, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(et::solve_et(kin, harmonic(1.0), 2, {-1.0}), std::invalid_argument);
}
