#pragma once

// Parameter-sweep engines behind the CLI: closed-form benchmark rows,
// deterministic CSV/JSON rendering, and ingestion of externally computed
// reference energies for relative-error tables.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "et/core.hpp"
#include "et/models.hpp"
#include "et/parallel.hpp"

namespace et {

struct CalogeroSweepRequest {
  std::vector<int> n_values;
  std::vector<double> g_primes{0.2, 1.0, 5.0};
  double m = 1.0;
  double omega = 1.0;
};

struct CalogeroSweepRow {
  int n = 0;
  double g_prime = 0.0;
  double e_exact = 0.0;
  double e_et = 0.0;
  double delta_c = 0.0;
  double delta_limit = 0.0;
};

// Rows ordered by (N, g'); evaluation may run in parallel, the order is
// fixed by construction.
std::vector<CalogeroSweepRow> calogero_sweep(const CalogeroSweepRequest& request,
                                             ExecPolicy policy = ExecPolicy::Parallel);

struct GaussSweepRequest {
  std::vector<int> n_values;
  std::vector<double> a_values;
  double v0 = 10.0;
  double inverse_mass = 43.281307;
};

struct GaussSweepRow {
  int n = 0;
  double a = 0.0;
  double v_g = 0.0;
  double y = 0.0;
  std::optional<double> w0;    // empty past the Lambert branch point
  std::optional<double> e_et;  // empty when no real energy exists
  bool ok = false;             // relevant bound: real and strictly negative
};

std::vector<GaussSweepRow> gauss_sweep(const GaussSweepRequest& request,
                                       ExecPolicy policy = ExecPolicy::Parallel);

std::string render_calogero_csv(const std::vector<CalogeroSweepRow>& rows);
std::string render_calogero_json(const std::vector<CalogeroSweepRow>& rows);
std::string render_gauss_csv(const std::vector<GaussSweepRow>& rows);
std::string render_gauss_json(const std::vector<GaussSweepRow>& rows);

// Reads back a gauss_sweep CSV (as written by render_gauss_csv) for the
// compare pipeline.
std::vector<GaussSweepRow> parse_gauss_csv(std::istream& in, const std::string& source_name);

struct ReferenceEntry {
  std::string model;
  int n = 0;
  double a = 0.0;
  double e_ref = 0.0;  // Kelvin, strictly negative
};

// Externally computed reference energies, keyed by (model, N, a).
struct ReferenceTable {
  std::vector<ReferenceEntry> entries;

  std::optional<double> lookup(const std::string& model, int n, double a) const;
};

// CSV with the exact header `model,N,a,e_ref_K`; lines starting with '#' and
// blank lines are skipped. Rejects duplicate keys, non-finite or
// non-negative energies, and a mismatched header (wrong units), reporting
// 1-based line numbers.
ReferenceTable load_reference_table(std::istream& in);
ReferenceTable load_reference_file(const std::string& path);

struct CompareRow {
  GaussSweepRow base;
  std::optional<double> e_ref;
  std::optional<double> delta_g;  // (e_ref - e_et)/e_ref when both present
};

std::vector<CompareRow> compare_rows(const std::vector<GaussSweepRow>& sweep,
                                     const ReferenceTable& references);

std::string render_compare_csv(const std::vector<CompareRow>& rows);
std::string render_compare_json(const std::vector<CompareRow>& rows);

}  // namespace et
