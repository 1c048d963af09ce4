// Command-line front end: single envelope solves, parameter sweeps for the
// two benchmark families, the two-body grid oracle, and comparison against
// externally computed reference energies.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "et/core.hpp"
#include "et/errors.hpp"
#include "et/expr.hpp"
#include "et/format.hpp"
#include "et/models.hpp"
#include "et/oracle.hpp"
#include "et/parallel.hpp"
#include "et/solver.hpp"
#include "et/sweep.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

// --------------------------------------------------------------------------
// small argument helpers

et::expr::ParamMap parse_params(const std::vector<std::string>& raw) {
  et::expr::ParamMap params;
  for (const std::string& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--param expects name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double parsed = 0.0;
    try {
      parsed = std::stod(value, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != value.size())
      throw std::invalid_argument("--param " + name + ": cannot parse value '" + value + "'");
    params[name] = parsed;
  }
  return params;
}

double param_or(const et::expr::ParamMap& params, const std::string& name, double fallback) {
  const auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

// Accepts "3", "2..10", and comma-joined mixtures of both.
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    const auto dots = token.find("..");
    try {
      if (dots == std::string::npos) {
        values.push_back(std::stoi(token));
      } else {
        const int lo = std::stoi(token.substr(0, dots));
        const int hi = std::stoi(token.substr(dots + 2));
        if (hi < lo) throw std::invalid_argument("descending range");
        for (int v = lo; v <= hi; ++v) values.push_back(v);
      }
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("cannot parse integer list entry '" + token + "'");
    }
  }
  if (values.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return values;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != token.size())
      throw std::invalid_argument("cannot parse list entry '" + token + "'");
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return values;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw et::Error("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw et::Error("cannot write output file '" + path + "'");
}

// --------------------------------------------------------------------------
// shared option blocks

struct RunOptions {
  int threads = 0;
  bool serial = false;

  et::ExecPolicy policy() const {
    return serial ? et::ExecPolicy::Serial : et::ExecPolicy::Parallel;
  }
  void apply() const { et::set_thread_count(threads); }
};

void add_run_options(CLI::App* cmd, RunOptions& opts) {
  cmd->add_option("--threads", opts.threads, "cap the OpenMP thread count (0 = runtime default)");
  cmd->add_flag("--serial", opts.serial, "use the serial reference path instead of OpenMP");
}

struct OutputOptions {
  std::string format = "csv";
  std::string path;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out,-o", opts.path, "output file (default: stdout)");
}

// --------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string model = "custom";
  std::string kinetic_text;
  std::string potential_text;
  std::vector<std::string> raw_params;
  double mass = 0.0;
  double inv_mass = 0.0;
  double vg = 0.0;
  double v0 = 0.0;
  double a = 0.0;
  int n = 0;
  std::string stats;
  std::string occ_text;
  double q_explicit = 0.0;
  bool q_given = false;
  bool builtin_none = false;
  et::SolverConfig config;
  bool json = false;
  RunOptions run;
};

std::string q_label(double q, int n) {
  const double boson = 0.5 * (static_cast<double>(n) - 1.0);
  const double fermion = 0.5 * (static_cast<double>(n) * n - 1.0);
  if (q == boson) return "ground for bosons";
  if (q == fermion) return "ground for fermions";
  return "excited: no bound guarantee asserted";
}

et::QuantumNumber resolve_q(const SolveArgs& args) {
  const int sources = (!args.stats.empty()) + (!args.occ_text.empty()) + args.q_given;
  if (sources != 1)
    throw std::invalid_argument("give exactly one of --stats, --occ, or --Q");
  if (args.q_given) return et::QuantumNumber{args.q_explicit};
  if (!args.occ_text.empty()) {
    const std::vector<int> occ = parse_int_list(args.occ_text);
    return et::q_from_occupations(occ, args.n);
  }
  if (args.stats == "boson") return et::q_ground(args.n, et::Statistics::Boson);
  if (args.stats == "fermion") return et::q_ground(args.n, et::Statistics::Fermion);
  throw std::invalid_argument("--stats must be boson or fermion");
}

double resolve_mass(const SolveArgs& args, const et::expr::ParamMap& params) {
  if (args.mass > 0.0 && args.inv_mass > 0.0)
    throw std::invalid_argument("give only one of --mass and --inv-mass");
  if (args.mass > 0.0) return args.mass;
  if (args.inv_mass > 0.0) return 1.0 / args.inv_mass;
  return param_or(params, "m", 1.0);
}

struct Problem {
  et::KineticLaw kinetic;
  et::PairPotential potential;
};

Problem build_problem(const SolveArgs& args) {
  const et::expr::ParamMap params = parse_params(args.raw_params);
  if (args.model == "calogero") {
    const et::CalogeroParams p(param_or(params, "m", 1.0), param_or(params, "omega", 1.0),
                               param_or(params, "g", 0.0));
    return {p.kinetic(), p.potential()};
  }
  if (args.model == "gaussian") {
    const double m = resolve_mass(args, params);
    double vg = args.vg > 0.0 ? args.vg : param_or(params, "vg", 0.0);
    if (args.v0 > 0.0) {
      if (vg > 0.0) throw std::invalid_argument("give only one of --Vg and --V0");
      const double a = args.a > 0.0 ? args.a : param_or(params, "a", 0.0);
      const et::GaussianParams p = et::GaussianParams::from_v0(1.0 / m, args.v0, a);
      return {p.kinetic(), p.potential()};
    }
    const double a = args.a > 0.0 ? args.a : param_or(params, "a", 0.0);
    const et::GaussianParams p(m, vg, a);
    return {p.kinetic(), p.potential()};
  }
  if (args.model != "custom")
    throw std::invalid_argument("--model must be calogero, gaussian, or custom");

  if (args.potential_text.empty())
    throw std::invalid_argument("custom model needs --potential EXPR");
  et::PairPotential potential =
      et::CustomPotential{et::expr::parse(args.potential_text, "x"), params};
  if (!args.kinetic_text.empty())
    return {et::KineticLaw::custom(et::expr::parse(args.kinetic_text, "p"), params),
            std::move(potential)};
  return {et::KineticLaw::nonrelativistic_mass(resolve_mass(args, params)),
          std::move(potential)};
}

void run_solve(const SolveArgs& args) {
  args.run.apply();
  const Problem problem = build_problem(args);
  const et::QuantumNumber q = resolve_q(args);
  const et::EtSolution s = et::solve_et(problem.kinetic, problem.potential, args.n, q,
                                        args.config, args.run.policy());
  const std::string label = q_label(q.value, args.n);
  if (args.json) {
    ordered_json j;
    j["model"] = args.model;
    j["n"] = args.n;
    j["q"] = et::format_roundtrip(q.value);
    j["q_label"] = label;
    j["x0"] = et::format_roundtrip(s.x0);
    j["p0"] = et::format_roundtrip(s.p0);
    j["energy"] = et::format_roundtrip(s.energy);
    j["bound"] = et::to_string(s.bound);
    j["residual"] = et::format_roundtrip(s.residual);
    j["n_roots_found"] = s.n_roots_found;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "N = " << args.n << "\n"
            << "Q = " << et::format_number(q.value) << " (" << label << ")\n"
            << "x0 = " << et::format_number(s.x0) << "\n"
            << "p0 = " << et::format_number(s.p0) << "\n"
            << "E = " << et::format_number(s.energy) << "\n"
            << "bound = " << et::to_string(s.bound) << "\n"
            << "residual = " << et::format_number(s.residual) << "\n"
            << "roots_found = " << s.n_roots_found << "\n";
}

// --------------------------------------------------------------------------
// sweeps

struct CalogeroSweepArgs {
  std::string n_text;
  std::string g_text = "0.2,1,5";
  double m = 1.0;
  double omega = 1.0;
  OutputOptions output;
  RunOptions run;
};

void run_calogero_sweep(const CalogeroSweepArgs& args) {
  args.run.apply();
  et::CalogeroSweepRequest request;
  request.n_values = parse_int_list(args.n_text);
  request.g_primes = parse_double_list(args.g_text);
  request.m = args.m;
  request.omega = args.omega;
  const auto rows = et::calogero_sweep(request, args.run.policy());
  write_output(args.output.path, args.output.format == "json" ? et::render_calogero_json(rows)
                                                              : et::render_calogero_csv(rows));
}

struct GaussSweepArgs {
  std::string n_text;
  std::string a_text;
  double v0 = 10.0;
  double inv_mass = 0.0;
  double mass = 0.0;
  OutputOptions output;
  RunOptions run;
};

void run_gauss_sweep(const GaussSweepArgs& args) {
  args.run.apply();
  et::GaussSweepRequest request;
  request.n_values = parse_int_list(args.n_text);
  request.a_values = parse_double_list(args.a_text);
  request.v0 = args.v0;
  if (args.inv_mass > 0.0 && args.mass > 0.0)
    throw std::invalid_argument("give only one of --mass and --inv-mass");
  request.inverse_mass = args.inv_mass > 0.0 ? args.inv_mass
                        : args.mass > 0.0    ? 1.0 / args.mass
                                             : 43.281307;
  const auto rows = et::gauss_sweep(request, args.run.policy());
  write_output(args.output.path, args.output.format == "json" ? et::render_gauss_json(rows)
                                                              : et::render_gauss_csv(rows));
}

struct CompareArgs {
  std::string sweep_path;
  std::string ref_path;
  OutputOptions output;
};

void run_compare(const CompareArgs& args) {
  std::ifstream sweep_in(args.sweep_path);
  if (!sweep_in) throw et::Error("cannot open sweep file '" + args.sweep_path + "'");
  const auto sweep = et::parse_gauss_csv(sweep_in, args.sweep_path);
  const et::ReferenceTable refs = et::load_reference_file(args.ref_path);
  const auto rows = et::compare_rows(sweep, refs);
  write_output(args.output.path, args.output.format == "json" ? et::render_compare_json(rows)
                                                              : et::render_compare_csv(rows));
}

// --------------------------------------------------------------------------
// oracle

struct OracleArgs {
  std::string model;
  std::string potential_text;
  std::vector<std::string> raw_params;
  double mass = 0.0;
  double inv_mass = 0.0;
  int points = 4001;
  double half_width = 0.0;
  std::string boundary;
  bool check_et = false;
  bool json = false;
  RunOptions run;
};

void run_oracle(const OracleArgs& args) {
  args.run.apply();
  const et::expr::ParamMap params = parse_params(args.raw_params);

  double mass = 1.0;
  std::optional<et::PairPotential> potential;
  std::string default_boundary = "full";
  if (args.model == "calogero") {
    const et::CalogeroParams p(param_or(params, "m", 1.0), param_or(params, "omega", 1.0),
                               param_or(params, "g", 0.0));
    potential = p.potential();
    mass = p.m;
    default_boundary = "half";
  } else if (args.model == "gaussian") {
    const et::GaussianParams p(param_or(params, "m", 1.0), param_or(params, "vg", 1.0),
                               param_or(params, "a", 1.0));
    potential = p.potential();
    mass = p.m;
  } else if (args.model.empty()) {
    if (args.potential_text.empty())
      throw std::invalid_argument("give --model or --potential EXPR");
    potential = et::PairPotential(
        et::CustomPotential{et::expr::parse(args.potential_text, "x"), params});
    mass = param_or(params, "m", 1.0);
  } else {
    throw std::invalid_argument("--model must be calogero or gaussian");
  }
  if (args.mass > 0.0 && args.inv_mass > 0.0)
    throw std::invalid_argument("give only one of --mass and --inv-mass");
  if (args.mass > 0.0) mass = args.mass;
  if (args.inv_mass > 0.0) mass = 1.0 / args.inv_mass;

  et::GridSpec grid;
  grid.points = args.points;
  grid.half_width = args.half_width;
  const std::string boundary = args.boundary.empty() ? default_boundary : args.boundary;
  if (boundary == "half") grid.boundary = et::Boundary::HalfLineDirichlet;
  else if (boundary == "full") grid.boundary = et::Boundary::FullLine;
  else throw std::invalid_argument("--boundary must be full or half");

  const et::RefineResult r = et::refine(*potential, mass, grid, args.run.policy());

  std::optional<et::EtSolution> et_solution;
  std::string verdict;
  if (args.check_et) {
    // psi(0) = 0 on the half line is two-fermion antisymmetry; the full-line
    // ground state is the bosonic one.
    const et::Statistics stats = grid.boundary == et::Boundary::HalfLineDirichlet
                                     ? et::Statistics::Fermion
                                     : et::Statistics::Boson;
    const et::KineticLaw kinetic = et::KineticLaw::nonrelativistic_mass(mass);
    et_solution = et::solve_et(kinetic, *potential, 2, et::q_ground(2, stats), {},
                               args.run.policy());
    const double gap_up = et_solution->energy - r.energy;   // > 0 if bound above oracle
    const double gap_down = r.energy - et_solution->energy;  // > 0 if bound below oracle
    switch (et_solution->bound) {
      case et::BoundCharacter::UpperBound:
        verdict = gap_up > r.error_estimate      ? "upper bound holds"
                  : gap_up < -r.error_estimate   ? "upper bound VIOLATED"
                                                 : "inconclusive at this resolution";
        break;
      case et::BoundCharacter::LowerBound:
        verdict = gap_down > r.error_estimate    ? "lower bound holds"
                  : gap_down < -r.error_estimate ? "lower bound VIOLATED"
                                                 : "inconclusive at this resolution";
        break;
      case et::BoundCharacter::Exact:
        verdict = std::fabs(gap_up) <= std::max(r.error_estimate, 1e-9 * std::fabs(r.energy)) +
                                           1e-12
                      ? "consistent with the exact result"
                      : "DISAGREES with the exact result";
        break;
      case et::BoundCharacter::NoGuarantee:
        verdict = "no bound guaranteed";
        break;
    }
  }

  if (args.json) {
    ordered_json j;
    j["boundary"] = boundary;
    j["points"] = grid.points;
    j["energy_coarse"] = et::format_roundtrip(r.coarse);
    j["energy_fine"] = et::format_roundtrip(r.fine);
    j["energy"] = et::format_roundtrip(r.energy);
    j["error_estimate"] = et::format_roundtrip(r.error_estimate);
    if (et_solution) {
      j["et_energy"] = et::format_roundtrip(et_solution->energy);
      j["et_bound"] = et::to_string(et_solution->bound);
      j["verdict"] = verdict;
    }
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "boundary = " << boundary << ", points = " << grid.points << " and "
            << 2 * grid.points - 1 << "\n"
            << "E(coarse) = " << et::format_number(r.coarse) << "\n"
            << "E(fine) = " << et::format_number(r.fine) << "\n"
            << "E(refined) = " << et::format_number(r.energy) << "\n"
            << "error_estimate = " << et::format_number(r.error_estimate) << "\n";
  if (et_solution) {
    std::cout << "ET (N=2): E = " << et::format_number(et_solution->energy)
              << ", bound = " << et::to_string(et_solution->bound) << "\n"
              << "verdict: " << verdict << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Envelope-theory energy bounds for N identical particles on a line"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "solve the envelope equations for one system");
  solve->add_option("--model", solve_args.model, "calogero, gaussian, or custom")
      ->capture_default_str();
  solve->add_option("--kinetic", solve_args.kinetic_text, "kinetic law T(p) as an expression in p");
  solve->add_option("--potential", solve_args.potential_text,
                    "pair potential V(x) as an expression in x");
  solve->add_option("--param", solve_args.raw_params, "bind a named parameter, name=value");
  solve->add_option("--mass", solve_args.mass, "mass of the built-in nonrelativistic kinetic law");
  solve->add_option("--inv-mass", solve_args.inv_mass, "inverse mass 1/m");
  solve->add_option("--Vg", solve_args.vg, "Gaussian well depth");
  solve->add_option("--V0", solve_args.v0, "Gaussian integrated strength (V_g = V0/(sqrt(pi) a))");
  solve->add_option("--a", solve_args.a, "Gaussian range");
  solve->add_option("-N,--n-particles", solve_args.n, "number of particles")->required();
  solve->add_option("--stats", solve_args.stats, "boson or fermion (ground-state Q)");
  solve->add_option("--occ", solve_args.occ_text, "occupation list n_1,...,n_{N-1}");
  solve->add_option("--Q", solve_args.q_explicit, "explicit quantum number Q")
      ->each([&](const std::string&) { solve_args.q_given = true; });
  solve->add_flag("--builtin-none", solve_args.builtin_none,
                  "no built-in model: T and V come from expressions");
  solve->add_option("--scan-min", solve_args.config.x0_scan_min, "x0 scan window lower edge");
  solve->add_option("--scan-max", solve_args.config.x0_scan_max, "x0 scan window upper edge");
  solve->add_option("--scan-points", solve_args.config.scan_points, "scan grid size")
      ->capture_default_str();
  solve->add_option("--root-tol", solve_args.config.root_tol, "relative bracket tolerance")
      ->capture_default_str();
  solve->add_flag("--json", solve_args.json, "machine-readable output");
  add_run_options(solve, solve_args.run);
  solve->callback([&] { run_solve(solve_args); });

  CalogeroSweepArgs cal_args;
  CLI::App* cal = app.add_subcommand("calogero-sweep",
                                     "tabulate exact energy, bound, and relative error over N");
  cal->add_option("-N,--n-particles", cal_args.n_text, "N values, e.g. 2..100 or 3,5,20")
      ->required();
  cal->add_option("--g-prime", cal_args.g_text, "dimensionless couplings g' = m g")
      ->capture_default_str();
  cal->add_option("--m", cal_args.m, "mass")->capture_default_str();
  cal->add_option("--omega", cal_args.omega, "oscillator frequency")->capture_default_str();
  add_output_options(cal, cal_args.output);
  add_run_options(cal, cal_args.run);
  cal->callback([&] { run_calogero_sweep(cal_args); });

  GaussSweepArgs gauss_args;
  CLI::App* gauss = app.add_subcommand("gauss-sweep",
                                       "tabulate the Gaussian-well upper bound over (N, a)");
  gauss->add_option("-N,--n-particles", gauss_args.n_text, "N values, e.g. 3,5,20,100")
      ->required();
  gauss->add_option("--a", gauss_args.a_text, "ranges a, e.g. 0.2,0.5,1.0")->required();
  gauss->add_option("--V0", gauss_args.v0, "integrated well strength")->capture_default_str();
  gauss->add_option("--inv-mass", gauss_args.inv_mass, "inverse mass 1/m (default 43.281307)");
  gauss->add_option("--mass", gauss_args.mass, "mass m");
  add_output_options(gauss, gauss_args.output);
  add_run_options(gauss, gauss_args.run);
  gauss->callback([&] { run_gauss_sweep(gauss_args); });

  CompareArgs cmp_args;
  CLI::App* cmp = app.add_subcommand("compare",
                                     "join a gauss-sweep CSV with reference energies");
  cmp->add_option("--sweep", cmp_args.sweep_path, "gauss-sweep CSV file")->required();
  cmp->add_option("--ref", cmp_args.ref_path, "reference table (model,N,a,e_ref_K)")->required();
  add_output_options(cmp, cmp_args.output);
  cmp->callback([&] { run_compare(cmp_args); });

  OracleArgs oracle_args;
  CLI::App* oracle = app.add_subcommand("oracle",
                                        "two-body grid diagonalization with Richardson refinement");
  oracle->add_option("--model", oracle_args.model, "calogero or gaussian");
  oracle->add_option("--potential", oracle_args.potential_text, "V(x) as an expression in x");
  oracle->add_option("--param", oracle_args.raw_params, "bind a named parameter, name=value");
  oracle->add_option("--mass", oracle_args.mass, "particle mass m");
  oracle->add_option("--inv-mass", oracle_args.inv_mass, "inverse mass 1/m");
  oracle->add_option("--points", oracle_args.points, "interior grid points (odd, >= 201)")
      ->capture_default_str();
  oracle->add_option("--half-width", oracle_args.half_width, "box half width (0 = auto)");
  oracle->add_option("--boundary", oracle_args.boundary, "full or half (default per model)");
  oracle->add_flag("--check-et", oracle_args.check_et, "compare against the N=2 envelope bound");
  oracle->add_flag("--json", oracle_args.json, "machine-readable output");
  add_run_options(oracle, oracle_args.run);
  oracle->callback([&] { run_oracle(oracle_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const et::NoRootError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const et::IrrelevantEnergyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const et::ReferenceFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const et::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
