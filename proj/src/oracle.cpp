#include "et/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace et {

namespace {

void validate(const GridSpec& grid, double m) {
  if (!(m > 0.0)) throw std::invalid_argument("mass must be positive");
  if (grid.points < 201) throw std::invalid_argument("grid needs at least 201 interior points");
  if (grid.points % 2 == 0)
    throw std::invalid_argument("grid point count must be odd (keeps a node at the origin)");
  if (!(grid.half_width > 0.0)) throw std::invalid_argument("grid half_width must be positive");
}

GridSpec resolve(const PairPotential& potential, GridSpec grid) {
  if (grid.half_width <= 0.0) grid.half_width = 15.0 * potential_length_scale(potential);
  return grid;
}

// Eigenvalues below lambda, counted as negative pivots of the LDL^T
// factorization of (A - lambda I); certified by Sturm's theorem for
// symmetric tridiagonal A.
int eigenvalues_below(const std::vector<double>& diag, double off_sq, double lambda) {
  int count = 0;
  double pivot = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    pivot = (diag[i] - lambda) - (i > 0 ? off_sq / pivot : 0.0);
    if (pivot < 0.0) ++count;
    else if (pivot == 0.0) pivot = -1e-300;  // exact hit: keep the recursion finite
  }
  return count;
}

}  // namespace

double two_body_ground(const PairPotential& potential, double m, const GridSpec& grid_in,
                       ExecPolicy policy) {
  const GridSpec grid = resolve(potential, grid_in);
  validate(grid, m);

  const int n = grid.points;
  const double mu = 0.5 * m;  // reduced mass of the relative motion
  const bool full = grid.boundary == Boundary::FullLine;
  const double h = full ? 2.0 * grid.half_width / (n + 1) : grid.half_width / (n + 1);
  const double x_first = full ? -grid.half_width + h : h;

  const double kin = 1.0 / (mu * h * h);  // diagonal of -(1/(2mu)) d2/dx2
  std::vector<double> diag(n);
  parallel_for(static_cast<std::size_t>(n), policy, [&](std::size_t i) {
    diag[i] = kin + potential.value(x_first + static_cast<double>(i) * h);
  });

  const double off = -0.5 * kin;
  const double off_sq = off * off;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double d : diag) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  lo += 2.0 * off;  // Gershgorin: off-diagonal row sum is at most 2|off|
  hi -= 2.0 * off;
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("potential is not finite on the grid");

  // Bisection on the eigenvalue count isolates the smallest eigenvalue.
  for (int it = 0;
       it < 240 && (hi - lo) > 4.0 * std::numeric_limits<double>::epsilon() *
                                    std::max({1.0, std::fabs(lo), std::fabs(hi)});
       ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eigenvalues_below(diag, off_sq, mid) >= 1) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

RefineResult refine(const PairPotential& potential, double m, const GridSpec& grid_in,
                    ExecPolicy policy) {
  const GridSpec coarse_grid = resolve(potential, grid_in);
  GridSpec fine_grid = coarse_grid;
  fine_grid.points = 2 * coarse_grid.points - 1;

  RefineResult result;
  result.coarse = two_body_ground(potential, m, coarse_grid, policy);
  result.fine = two_body_ground(potential, m, fine_grid, policy);

  const double denom_coarse = coarse_grid.points + 1;
  const double denom_fine = fine_grid.points + 1;
  const double ratio = denom_fine / denom_coarse;  // h_coarse / h_fine
  result.energy = result.fine + (result.fine - result.coarse) / (ratio * ratio - 1.0);
  result.error_estimate = std::fabs(result.fine - result.coarse);
  return result;
}

}  // namespace et
