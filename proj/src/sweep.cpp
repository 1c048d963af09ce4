#include "et/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "et/errors.hpp"
#include "et/format.hpp"

namespace et {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<int> sorted_unique(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::vector<double> sorted_unique(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::string cell(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

ordered_json json_value(const std::optional<double>& v) {
  if (!v) return nullptr;
  return format_roundtrip(*v);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

double parse_double_field(const std::string& text, const char* what, std::size_t line_no) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ReferenceFileError(std::string("cannot parse ") + what + " '" + text + "'", line_no);
  }
  if (used != text.size())
    throw ReferenceFileError(std::string("cannot parse ") + what + " '" + text + "'", line_no);
  return value;
}

int parse_int_field(const std::string& text, const char* what, std::size_t line_no) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw ReferenceFileError(std::string("cannot parse ") + what + " '" + text + "'", line_no);
  }
  if (used != text.size())
    throw ReferenceFileError(std::string("cannot parse ") + what + " '" + text + "'", line_no);
  return value;
}

}  // namespace

std::vector<CalogeroSweepRow> calogero_sweep(const CalogeroSweepRequest& request,
                                             ExecPolicy policy) {
  if (request.n_values.empty()) throw std::invalid_argument("sweep needs at least one N");
  if (request.g_primes.empty()) throw std::invalid_argument("sweep needs at least one g'");
  const std::vector<int> ns = sorted_unique(request.n_values);
  const std::vector<double> gps = sorted_unique(request.g_primes);
  for (int n : ns)
    if (n < 2) throw std::invalid_argument("sweep needs N >= 2");
  for (double gp : gps)
    if (!(gp >= 0.0)) throw std::invalid_argument("sweep needs g' >= 0");

  std::vector<CalogeroSweepRow> rows(ns.size() * gps.size());
  parallel_for(rows.size(), policy, [&](std::size_t i) {
    const int n = ns[i / gps.size()];
    const double gp = gps[i % gps.size()];
    const CalogeroParams params(request.m, request.omega, gp / request.m);
    CalogeroSweepRow& row = rows[i];
    row.n = n;
    row.g_prime = gp;
    row.e_exact = calogero_exact(params, n);
    row.e_et = calogero_et(params, n);
    row.delta_c = (row.e_exact - row.e_et) / row.e_exact;
    row.delta_limit = calogero_delta_limit(gp);
  });
  return rows;
}

std::vector<GaussSweepRow> gauss_sweep(const GaussSweepRequest& request, ExecPolicy policy) {
  if (request.n_values.empty()) throw std::invalid_argument("sweep needs at least one N");
  if (request.a_values.empty()) throw std::invalid_argument("sweep needs at least one a");
  const std::vector<int> ns = sorted_unique(request.n_values);
  const std::vector<double> as = sorted_unique(request.a_values);
  for (int n : ns)
    if (n < 2) throw std::invalid_argument("sweep needs N >= 2");
  for (double a : as)
    if (!(a > 0.0)) throw std::invalid_argument("sweep needs a > 0");

  std::vector<GaussSweepRow> rows(ns.size() * as.size());
  parallel_for(rows.size(), policy, [&](std::size_t i) {
    const int n = ns[i / as.size()];
    const double a = as[i % as.size()];
    const GaussianParams params = GaussianParams::from_v0(request.inverse_mass, request.v0, a);
    const GaussianEtDetail detail = gaussian_et_detail(params, n, q_ground(n, Statistics::Boson));
    GaussSweepRow& row = rows[i];
    row.n = n;
    row.a = a;
    row.v_g = params.v_g;
    row.y = detail.y;
    row.w0 = detail.w0;
    row.e_et = detail.energy;
    row.ok = detail.relevant;
  });
  return rows;
}

std::string render_calogero_csv(const std::vector<CalogeroSweepRow>& rows) {
  std::string out = "N,g_prime,E_exact,E_et,delta_c,delta_limit\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n);
    out += ',';
    out += format_number(r.g_prime);
    out += ',';
    out += format_number(r.e_exact);
    out += ',';
    out += format_number(r.e_et);
    out += ',';
    out += format_number(r.delta_c);
    out += ',';
    out += format_number(r.delta_limit);
    out += '\n';
  }
  return out;
}

std::string render_calogero_json(const std::vector<CalogeroSweepRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["N"] = r.n;
    j["g_prime"] = format_roundtrip(r.g_prime);
    j["E_exact"] = format_roundtrip(r.e_exact);
    j["E_et"] = format_roundtrip(r.e_et);
    j["delta_c"] = format_roundtrip(r.delta_c);
    j["delta_limit"] = format_roundtrip(r.delta_limit);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string render_gauss_csv(const std::vector<GaussSweepRow>& rows) {
  std::string out = "N,a,V_g,Y,W0_Y,E_et_K,status\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n);
    out += ',';
    out += format_number(r.a);
    out += ',';
    out += format_number(r.v_g);
    out += ',';
    out += format_number(r.y);
    out += ',';
    out += cell(r.w0);
    out += ',';
    out += cell(r.e_et);
    out += ',';
    out += r.ok ? "ok" : "irrelevant";
    out += '\n';
  }
  return out;
}

std::string render_gauss_json(const std::vector<GaussSweepRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["N"] = r.n;
    j["a"] = format_roundtrip(r.a);
    j["V_g"] = format_roundtrip(r.v_g);
    j["Y"] = format_roundtrip(r.y);
    j["W0_Y"] = json_value(r.w0);
    j["E_et_K"] = json_value(r.e_et);
    j["status"] = r.ok ? "ok" : "irrelevant";
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<GaussSweepRow> parse_gauss_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line))
    throw Error(source_name + ": empty sweep file");
  ++line_no;
  if (strip_cr(line) != "N,a,V_g,Y,W0_Y,E_et_K,status")
    throw Error(source_name + ": not a gauss-sweep file (unexpected header '" + line + "')");

  std::vector<GaussSweepRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 7)
      throw Error(source_name + ": expected 7 columns at line " + std::to_string(line_no));
    GaussSweepRow row;
    try {
      row.n = std::stoi(f[0]);
      row.a = std::stod(f[1]);
      row.v_g = std::stod(f[2]);
      row.y = std::stod(f[3]);
      if (!f[4].empty()) row.w0 = std::stod(f[4]);
      if (!f[5].empty()) row.e_et = std::stod(f[5]);
    } catch (const std::exception&) {
      throw Error(source_name + ": malformed numeric field at line " + std::to_string(line_no));
    }
    row.ok = f[6] == "ok";
    rows.push_back(row);
  }
  return rows;
}

std::optional<double> ReferenceTable::lookup(const std::string& model, int n, double a) const {
  for (const auto& entry : entries) {
    if (entry.model == model && entry.n == n &&
        std::fabs(entry.a - a) <= 1e-12 * std::max(1.0, std::fabs(a)))
      return entry.e_ref;
  }
  return std::nullopt;
}

ReferenceTable load_reference_table(std::istream& in) {
  ReferenceTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::set<std::string> keys;

  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "model,N,a,e_ref_K")
        throw ReferenceFileError("unexpected header '" + line +
                                     "' (expected 'model,N,a,e_ref_K'; energy unit mismatch?)",
                                 line_no);
      header_seen = true;
      continue;
    }
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 4)
      throw ReferenceFileError("expected 4 columns, got " + std::to_string(f.size()), line_no);
    ReferenceEntry entry;
    entry.model = f[0];
    if (entry.model.empty()) throw ReferenceFileError("empty model tag", line_no);
    entry.n = parse_int_field(f[1], "N", line_no);
    if (entry.n < 2) throw ReferenceFileError("N must be at least 2", line_no);
    entry.a = parse_double_field(f[2], "a", line_no);
    if (!(entry.a > 0.0)) throw ReferenceFileError("a must be positive", line_no);
    entry.e_ref = parse_double_field(f[3], "e_ref_K", line_no);
    if (!std::isfinite(entry.e_ref))
      throw ReferenceFileError("reference energy must be finite", line_no);
    if (!(entry.e_ref < 0.0))
      throw ReferenceFileError("reference energy must be negative for a bound state", line_no);

    const std::string key = entry.model + "," + std::to_string(entry.n) + "," +
                             format_number(entry.a);
    if (!keys.insert(key).second)
      throw ReferenceFileError("duplicate key (" + key + ")", line_no);
    table.entries.push_back(std::move(entry));
  }
  if (!header_seen) throw ReferenceFileError("missing header 'model,N,a,e_ref_K'", line_no);
  return table;
}

ReferenceTable load_reference_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ReferenceFileError("cannot open reference file '" + path + "'", 0);
  return load_reference_table(in);
}

std::vector<CompareRow> compare_rows(const std::vector<GaussSweepRow>& sweep,
                                     const ReferenceTable& references) {
  std::vector<CompareRow> rows;
  rows.reserve(sweep.size());
  for (const auto& base : sweep) {
    CompareRow row;
    row.base = base;
    row.e_ref = references.lookup("gaussian", base.n, base.a);
    if (row.e_ref && base.e_et) row.delta_g = gaussian_delta(*row.e_ref, *base.e_et);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_compare_csv(const std::vector<CompareRow>& rows) {
  std::string out = "N,a,V_g,Y,W0_Y,E_et_K,status,e_ref,delta_g\n";
  for (const auto& r : rows) {
    out += std::to_string(r.base.n);
    out += ',';
    out += format_number(r.base.a);
    out += ',';
    out += format_number(r.base.v_g);
    out += ',';
    out += format_number(r.base.y);
    out += ',';
    out += cell(r.base.w0);
    out += ',';
    out += cell(r.base.e_et);
    out += ',';
    out += r.base.ok ? "ok" : "irrelevant";
    out += ',';
    out += cell(r.e_ref);
    out += ',';
    out += cell(r.delta_g);
    out += '\n';
  }
  return out;
}

std::string render_compare_json(const std::vector<CompareRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["N"] = r.base.n;
    j["a"] = format_roundtrip(r.base.a);
    j["V_g"] = format_roundtrip(r.base.v_g);
    j["Y"] = format_roundtrip(r.base.y);
    j["W0_Y"] = json_value(r.base.w0);
    j["E_et_K"] = json_value(r.base.e_et);
    j["status"] = r.base.ok ? "ok" : "irrelevant";
    j["e_ref"] = json_value(r.e_ref);
    j["delta_g"] = json_value(r.delta_g);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace et
