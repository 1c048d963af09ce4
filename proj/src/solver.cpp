#include "et/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "et/errors.hpp"

namespace et {

// ---------------------------------------------------------------------------
// Kinetic laws

KineticLaw KineticLaw::nonrelativistic_mass(double mass) {
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
  return KineticLaw(NonRelativistic{1.0 / mass});
}

KineticLaw KineticLaw::nonrelativistic_inverse_mass(double inverse_mass) {
  if (!(inverse_mass > 0.0)) throw std::invalid_argument("inverse mass must be positive");
  return KineticLaw(NonRelativistic{inverse_mass});
}

KineticLaw KineticLaw::custom(expr::Parsed parsed, expr::ParamMap params) {
  return KineticLaw(Custom{std::move(parsed), std::move(params)});
}

std::pair<double, double> KineticLaw::value_and_derivative(double p) const {
  if (const auto* nr = std::get_if<NonRelativistic>(&body_))
    return {0.5 * nr->inverse_mass * p * p, nr->inverse_mass * p};
  const auto& c = std::get<Custom>(body_);
  return expr::eval_with_derivative(c.parsed, p, c.params);
}

double KineticLaw::value(double p) const { return value_and_derivative(p).first; }

bool KineticLaw::is_nonrelativistic() const {
  return std::holds_alternative<NonRelativistic>(body_);
}

double KineticLaw::inverse_mass() const {
  const auto* nr = std::get_if<NonRelativistic>(&body_);
  if (!nr) throw std::logic_error("inverse_mass() on a custom kinetic law");
  return nr->inverse_mass;
}

// ---------------------------------------------------------------------------
// Pair potentials

PairPotential::PairPotential(CalogeroPotential p) : body_(p) {
  if (!(p.m > 0.0) || !(p.omega > 0.0) || !(p.g >= 0.0))
    throw std::invalid_argument("Calogero potential needs m > 0, omega > 0, g >= 0");
}

PairPotential::PairPotential(GaussianPotential p) : body_(p) {
  if (!(p.v_g > 0.0) || !(p.a > 0.0))
    throw std::invalid_argument("Gaussian potential needs v_g > 0 and a > 0");
}

PairPotential::PairPotential(PowerLawSumPotential p) : body_(std::move(p)) {
  if (std::get<PowerLawSumPotential>(body_).terms.empty())
    throw std::invalid_argument("power-law potential needs at least one term");
}

PairPotential::PairPotential(CustomPotential p) : body_(std::move(p)) {}

std::pair<double, double> PairPotential::value_and_derivative(double x) const {
  if (const auto* c = std::get_if<CalogeroPotential>(&body_)) {
    const double mw2 = c->m * c->omega * c->omega;
    const double x2 = x * x;
    return {0.25 * mw2 * x2 + c->g / x2, 0.5 * mw2 * x - 2.0 * c->g / (x2 * x)};
  }
  if (const auto* g = std::get_if<GaussianPotential>(&body_)) {
    const double u = x / g->a;
    const double e = std::exp(-u * u);
    return {-g->v_g * e, 2.0 * g->v_g * x / (g->a * g->a) * e};
  }
  if (const auto* s = std::get_if<PowerLawSumPotential>(&body_)) {
    double v = 0.0, dv = 0.0;
    for (const auto& term : s->terms) {
      v += term.coefficient * std::pow(x, term.exponent);
      if (term.exponent != 0.0)
        dv += term.coefficient * term.exponent * std::pow(x, term.exponent - 1.0);
    }
    return {v, dv};
  }
  const auto& c = std::get<CustomPotential>(body_);
  return expr::eval_with_derivative(c.parsed, x, c.params);
}

double PairPotential::value(double x) const { return value_and_derivative(x).first; }

const CalogeroPotential* PairPotential::as_calogero() const {
  return std::get_if<CalogeroPotential>(&body_);
}

const GaussianPotential* PairPotential::as_gaussian() const {
  return std::get_if<GaussianPotential>(&body_);
}

double potential_length_scale(const PairPotential& potential) {
  if (const auto* g = potential.as_gaussian()) return g->a;
  if (const auto* c = potential.as_calogero()) return 1.0 / std::sqrt(c->m * c->omega);
  return 1.0;
}

double characteristic_length(const KineticLaw& kinetic, const PairPotential& potential,
                             int n_particles, QuantumNumber q) {
  (void)n_particles;
  if (potential.as_gaussian() || potential.as_calogero())
    return potential_length_scale(potential);
  if (kinetic.is_nonrelativistic()) {
    // Q / sqrt(2 m |V(1)|); any scale error just widens the scan window.
    try {
      const double v1 = std::fabs(potential.value(1.0));
      if (std::isfinite(v1) && v1 > 0.0) {
        const double scale = q.value * std::sqrt(0.5 * kinetic.inverse_mass() / v1);
        if (std::isfinite(scale) && scale > 0.0) return scale;
      }
    } catch (const EvalDomainError&) {
    }
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// Stationarity condition

double residual(const KineticLaw& kinetic, const PairPotential& potential, int n_particles,
                QuantumNumber q, double x0) {
  if (!(x0 > 0.0)) throw std::invalid_argument("x0 must be positive");
  const double c = pair_count(n_particles);
  const double sqrt_c = std::sqrt(c);
  const double p0 = q.value / x0;
  const double t_deriv = kinetic.value_and_derivative(p0).second;
  const double v_deriv = potential.value_and_derivative(x0 / sqrt_c).second;
  return n_particles * p0 * t_deriv - sqrt_c * x0 * v_deriv;
}

double energy_at(const KineticLaw& kinetic, const PairPotential& potential, int n_particles,
                 QuantumNumber q, double x0) {
  const double c = pair_count(n_particles);
  const double p0 = q.value / x0;
  return n_particles * kinetic.value(p0) + c * potential.value(x0 / std::sqrt(c));
}

std::vector<double> make_log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log grid needs 0 < lo < hi");
  if (points < 2) throw std::invalid_argument("log grid needs at least 2 points");
  std::vector<double> grid(points);
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid[i] = lo * std::exp(i * step);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> scan_residuals(const KineticLaw& kinetic, const PairPotential& potential,
                                   int n_particles, QuantumNumber q,
                                   std::span<const double> x0_grid, ExecPolicy policy) {
  std::vector<double> out(x0_grid.size());
  std::vector<unsigned char> failed(x0_grid.size(), 0);
  parallel_for(x0_grid.size(), policy, [&](std::size_t i) {
    try {
      out[i] = residual(kinetic, potential, n_particles, q, x0_grid[i]);
    } catch (const EvalDomainError&) {
      out[i] = std::numeric_limits<double>::quiet_NaN();
      failed[i] = 1;
    }
  });
  bool any_valid = false;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!failed[i]) {
      any_valid = true;
      break;
    }
  if (!any_valid && !out.empty()) {
    // Re-raise the first failure with its original message.
    residual(kinetic, potential, n_particles, q, x0_grid[0]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Envelope classification

namespace {

enum class Curvature { Affine, Convex, Concave, Mixed };

struct CurvatureReport {
  Curvature curvature = Curvature::Affine;
  bool all_nonpositive = true;
};

// Chord test on consecutive log-grid triples of f(s): the straight line
// through the outer points lies above the middle one for a convex function.
template <typename F>
CurvatureReport probe_curvature(F&& f, double s_lo, double s_hi, int points_per_decade,
                                double affine_tol) {
  const double decades = std::log10(s_hi / s_lo);
  const int points = std::max(3, static_cast<int>(std::ceil(decades * points_per_decade)) + 1);
  const std::vector<double> s = make_log_grid(s_lo, s_hi, points);
  std::vector<double> v(s.size());
  CurvatureReport report;
  for (std::size_t i = 0; i < s.size(); ++i) {
    v[i] = f(s[i]);
    if (v[i] > 0.0) report.all_nonpositive = false;
  }
  bool has_convex = false, has_concave = false;
  for (std::size_t i = 0; i + 2 < s.size(); ++i) {
    const double span = s[i + 2] - s[i];
    const double w0 = (s[i + 2] - s[i + 1]) / span;
    const double w2 = (s[i + 1] - s[i]) / span;
    const double chord_excess = w0 * v[i] + w2 * v[i + 2] - v[i + 1];
    const double scale = std::max({std::fabs(v[i]), std::fabs(v[i + 1]), std::fabs(v[i + 2])});
    if (scale == 0.0 || std::fabs(chord_excess) <= affine_tol * scale) continue;  // affine triple
    (chord_excess > 0.0 ? has_convex : has_concave) = true;
  }
  if (has_convex && has_concave) report.curvature = Curvature::Mixed;
  else if (has_convex) report.curvature = Curvature::Convex;
  else if (has_concave) report.curvature = Curvature::Concave;
  return report;
}

BoundCharacter combine_curvatures(Curvature kinetic_part, Curvature potential_part) {
  if (kinetic_part == Curvature::Mixed || potential_part == Curvature::Mixed)
    return BoundCharacter::NoGuarantee;
  if (kinetic_part == Curvature::Affine && potential_part == Curvature::Affine)
    return BoundCharacter::Exact;
  const bool upper = kinetic_part != Curvature::Convex && potential_part != Curvature::Convex;
  const bool lower = kinetic_part != Curvature::Concave && potential_part != Curvature::Concave;
  if (upper && !lower) return BoundCharacter::UpperBound;
  if (lower && !upper) return BoundCharacter::LowerBound;
  return BoundCharacter::NoGuarantee;
}

struct ResolvedProbe {
  double x_lo, x_hi, p_lo, p_hi;
  int points_per_decade;
  double affine_tol;
};

ResolvedProbe resolve_probe(const ProbeSpec& probe, const PairPotential& potential) {
  ResolvedProbe r;
  const double scale = potential_length_scale(potential);
  r.x_lo = probe.x_min > 0.0 ? probe.x_min : 1e-3 * scale;
  r.x_hi = probe.x_max > 0.0 ? probe.x_max : 1e+3 * scale;
  r.p_lo = probe.p_min > 0.0 ? probe.p_min : 1e-3 / scale;
  r.p_hi = probe.p_max > 0.0 ? probe.p_max : 1e+3 / scale;
  if (!(r.x_lo > 0.0) || !(r.x_hi > r.x_lo) || !(r.p_lo > 0.0) || !(r.p_hi > r.p_lo))
    throw std::invalid_argument("probe window must satisfy 0 < min < max");
  r.points_per_decade = std::max(4, probe.points_per_decade);
  r.affine_tol = probe.affine_tol;
  return r;
}

struct Classification {
  BoundCharacter bound;
  bool potential_nonpositive;
};

Classification classify_with_report(const KineticLaw& kinetic, const PairPotential& potential,
                                    const ProbeSpec& probe) {
  const ResolvedProbe r = resolve_probe(probe, potential);
  const CurvatureReport v_report =
      probe_curvature([&](double s) { return potential.value(std::sqrt(s)); }, r.x_lo * r.x_lo,
                      r.x_hi * r.x_hi, r.points_per_decade, r.affine_tol);
  // p^2/(2m) is a straight line in s = p^2; no need to sample it.
  CurvatureReport t_report;
  if (!kinetic.is_nonrelativistic())
    t_report = probe_curvature([&](double s) { return kinetic.value(std::sqrt(s)); },
                               r.p_lo * r.p_lo, r.p_hi * r.p_hi, r.points_per_decade, r.affine_tol);
  return {combine_curvatures(t_report.curvature, v_report.curvature), v_report.all_nonpositive};
}

}  // namespace

BoundCharacter classify_bound(const KineticLaw& kinetic, const PairPotential& potential,
                              const ProbeSpec& probe) {
  return classify_with_report(kinetic, potential, probe).bound;
}

// ---------------------------------------------------------------------------
// Root search

namespace {

struct RootInfo {
  double x0;
  double energy;
  double residual_abs;
};

// Geometric bisection: the grid is logarithmic, so brackets shrink in
// log space until their relative width reaches root_tol.
RootInfo bisect_bracket(const KineticLaw& kin, const PairPotential& pot, int n, QuantumNumber q,
                        double a, double b, double fa, const SolverConfig& config) {
  for (int i = 0; i < config.max_bisection_steps && (b - a) > config.root_tol * a; ++i) {
    const double mid = std::sqrt(a * b);
    const double fm = residual(kin, pot, n, q, mid);
    if (fm == 0.0) return {mid, energy_at(kin, pot, n, q, mid), 0.0};
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  const double x = std::sqrt(a * b);
  return {x, energy_at(kin, pot, n, q, x), std::fabs(residual(kin, pot, n, q, x))};
}

}  // namespace

EtSolution solve_et(const KineticLaw& kinetic, const PairPotential& potential, int n_particles,
                    QuantumNumber q, const SolverConfig& config, ExecPolicy policy) {
  if (n_particles < 2) throw std::invalid_argument("a pairwise system needs at least 2 particles");
  if (!(q.value > 0.0)) throw std::invalid_argument("quantum number Q must be positive");
  if (config.scan_points < 64) throw std::invalid_argument("scan_points must be at least 64");

  const double length = characteristic_length(kinetic, potential, n_particles, q);
  const double lo = config.x0_scan_min > 0.0 ? config.x0_scan_min : 1e-6 * length;
  const double hi = config.x0_scan_max > 0.0 ? config.x0_scan_max : 1e+6 * length;
  if (!(lo > 0.0) || !(lo < hi))
    throw std::invalid_argument("scan window must satisfy 0 < x0_scan_min < x0_scan_max");

  const ProbeSpec probe{};  // defaults derive from the potential's own scale
  const Classification cls = classify_with_report(kinetic, potential, probe);

  const std::vector<double> grid = make_log_grid(lo, hi, config.scan_points);
  const std::vector<double> res = scan_residuals(kinetic, potential, n_particles, q, grid, policy);

  std::vector<RootInfo> roots;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double fa = res[i];
    const double fb = res[i + 1];
    if (std::isnan(fa) || std::isnan(fb)) continue;
    if (fa == 0.0) {
      roots.push_back({grid[i], energy_at(kinetic, potential, n_particles, q, grid[i]), 0.0});
      continue;
    }
    if (i + 2 == grid.size() && fb == 0.0) {
      roots.push_back({grid[i + 1], energy_at(kinetic, potential, n_particles, q, grid[i + 1]), 0.0});
      continue;
    }
    if ((fa > 0.0) != (fb > 0.0) && fb != 0.0)
      roots.push_back(
          bisect_bracket(kinetic, potential, n_particles, q, grid[i], grid[i + 1], fa, config));
  }

  if (roots.empty()) {
    if (cls.potential_nonpositive)
      throw IrrelevantEnergyError(
          "no real solution: the stationarity condition has no root for this "
          "everywhere-attractive potential (too few particles to bind)");
    throw NoRootError("residual keeps one sign on the scan grid [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]; enlarge the scan window");
  }

  // Extremal selection: the envelope is optimized over tangency points, so
  // an upper bound takes the lowest energy and a lower bound the highest.
  // Ties go to the smaller scale for determinism.
  const bool take_max = cls.bound == BoundCharacter::LowerBound;
  const RootInfo* chosen = &roots.front();
  for (const RootInfo& r : roots) {
    const bool better = take_max ? (r.energy > chosen->energy)
                                 : (r.energy < chosen->energy);
    if (better || (r.energy == chosen->energy && r.x0 < chosen->x0)) chosen = &r;
  }

  if (cls.potential_nonpositive && chosen->energy >= 0.0)
    throw IrrelevantEnergyError(
        "irrelevant energy: non-negative result for an everywhere-attractive potential",
        chosen->energy);

  EtSolution solution;
  solution.x0 = chosen->x0;
  solution.p0 = q.value / chosen->x0;
  solution.energy = chosen->energy;
  solution.bound = cls.bound;
  solution.residual = chosen->residual_abs;
  solution.n_roots_found = static_cast<int>(roots.size());
  return solution;
}

}  // namespace et
