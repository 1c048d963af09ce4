#pragma once

// Independent brute-force check at N = 2: the relative-motion problem
//   -(1/(2 mu)) psi'' + V(x) psi = E psi,  mu = m/2,
// discretized with the three-point Laplacian in a Dirichlet box and solved
// for the lowest eigenvalue by Sturm-sequence bisection.

#include "et/parallel.hpp"
#include "et/solver.hpp"

namespace et {

enum class Boundary {
  FullLine,           // domain [-L, L]
  HalfLineDirichlet,  // domain (0, L], psi(0) = 0; required for x^-2 repulsion
                      // and equivalent to two-fermion antisymmetry
};

struct GridSpec {
  double half_width = 0.0;  // 0 = auto: 15 * potential length scale
  int points = 4001;        // interior nodes; odd and >= 201
  Boundary boundary = Boundary::FullLine;
};

// Smallest eigenvalue of the discretized relative Hamiltonian. The grid
// never touches x = 0 on the half line, so singular potentials are safe.
double two_body_ground(const PairPotential& potential, double m, const GridSpec& grid,
                       ExecPolicy policy = ExecPolicy::Parallel);

struct RefineResult {
  double energy = 0.0;          // Richardson extrapolation of the two runs
  double error_estimate = 0.0;  // |fine - coarse|
  double coarse = 0.0;
  double fine = 0.0;
};

// Runs two_body_ground at grid.points and 2*grid.points - 1 and extrapolates
// assuming the h^2 error law of the three-point Laplacian.
RefineResult refine(const PairPotential& potential, double m, const GridSpec& grid,
                    ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace et
