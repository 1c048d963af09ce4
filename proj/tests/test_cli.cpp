#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "cli_runner.hpp"

using testutil::run_cli;

namespace {

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("solve: harmonic system through parsed expressions") {
  const auto r = run_cli(
      "solve --kinetic \"p^2/(2*m)\" --param m=1 --potential \"x*x\" --builtin-none -N 2 "
      "--stats boson");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "E = 1\n"));
  CHECK(contains(r.out, "bound = Exact"));
  CHECK(contains(r.out, "Q = 0.5 (ground for bosons)"));
}

TEST_CASE("solve: calogero lower bound") {
  const auto r = run_cli("solve --model calogero --param m=1 --param omega=1 --param g=1 -N 3 "
                         "--stats fermion");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "E = 5.74456264654"));
  CHECK(contains(r.out, "bound = LowerBound"));
}

TEST_CASE("solve: gaussian with too few particles exits with the irrelevant-energy code") {
  const auto r = run_cli("solve --model gaussian --inv-mass 43.281307 --V0 10 --a 0.2 -N 20 "
                         "--stats boson");
  CHECK(r.exit_code == 4);
  CHECK(contains(r.err, "error:"));
}

TEST_CASE("solve: repulsive tail exits with the no-root code") {
  const auto r = run_cli("solve --potential \"1/x\" --mass 1 -N 2 --stats boson");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.err, "scan window"));
}

TEST_CASE("solve: argument errors") {
  CHECK(run_cli("solve --model calogero --stats boson").exit_code == 2);  // missing -N
  CHECK(run_cli("solve -N 2 --stats boson --no-such-flag").exit_code == 2);
  CHECK(run_cli("solve --potential \"x*x\" -N 2").exit_code == 2);  // no Q source
  CHECK(run_cli("solve --potential \"x*x\" -N 2 --stats boson --Q 1").exit_code == 2);
  CHECK(run_cli("solve --potential \"x*(\" -N 2 --stats boson").exit_code == 2);
  CHECK(run_cli("nonexistent-subcommand").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("solve --help").exit_code == 0);
}

TEST_CASE("solve: explicit occupations and excited-state label") {
  const auto r = run_cli("solve --model calogero --param g=1 -N 3 --occ 2,1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "Q = 4 (ground for fermions)"));
  const auto excited = run_cli("solve --model calogero --param g=1 -N 3 --occ 1,0");
  CHECK(excited.exit_code == 0);
  CHECK(contains(excited.out, "Q = 2 (excited: no bound guarantee asserted)"));
}

TEST_CASE("solve: json output carries the same numbers") {
  const auto text = run_cli("solve --model calogero --param g=1 -N 3 --stats fermion");
  const auto json_run = run_cli("solve --model calogero --param g=1 -N 3 --stats fermion --json");
  CHECK(json_run.exit_code == 0);
  const auto j = nlohmann::json::parse(json_run.out);
  CHECK(j["bound"] == "LowerBound");
  CHECK(j["n_roots_found"] == 1);
  // the printed E line and the JSON energy agree as parsed doubles
  const auto pos = text.out.find("E = ");
  REQUIRE(pos != std::string::npos);
  const double printed = std::stod(text.out.substr(pos + 4));
  CHECK(j["energy"].get<double>() == printed);
}

TEST_CASE("sweeps are deterministic byte for byte") {
  const std::string cal_args = "calogero-sweep -N 2..60 --g-prime 0.2,1,5 --threads 4";
  const auto cal_first = run_cli(cal_args);
  const auto cal_second = run_cli(cal_args);
  CHECK(cal_first.exit_code == 0);
  CHECK(cal_first.out == cal_second.out);
  CHECK(!cal_first.out.empty());

  const std::string gauss_args = "gauss-sweep -N 3,5,20,100 --a 0.2,0.5,1.0 --threads 4";
  const auto gauss_first = run_cli(gauss_args);
  const auto gauss_second = run_cli(gauss_args);
  CHECK(gauss_first.exit_code == 0);
  CHECK(gauss_first.out == gauss_second.out);

  // serial reference path produces the identical bytes
  const auto serial = run_cli("gauss-sweep -N 3,5,20,100 --a 0.2,0.5,1.0 --serial");
  CHECK(serial.out == gauss_first.out);
}

TEST_CASE("calogero sweep output shape") {
  const auto r = run_cli("calogero-sweep -N 2..100 --g-prime 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, r.out.find('\n')) == "N,g_prime,E_exact,E_et,delta_c,delta_limit");
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 100);  // header + 99 rows
  CHECK(contains(r.out, "\n3,1,7.16978135977,5.74456264654,0.198781335401,0.38196601125\n"));
}

TEST_CASE("gauss sweep output shape and json parity") {
  const auto csv = run_cli("gauss-sweep -N 3,5,20,100 --a 0.2,0.5,1.0 --V0 10 --inv-mass 43.281307");
  CHECK(csv.exit_code == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 13);
  CHECK(contains(csv.out, "\n20,0.2,28.2094791774,-0.489623960506,,,irrelevant\n"));
  CHECK(contains(csv.out, ",ok\n"));

  const auto json_run =
      run_cli("gauss-sweep -N 3,5,20,100 --a 0.2,0.5,1.0 --V0 10 --inv-mass 43.281307 "
              "--format json");
  CHECK(json_run.exit_code == 0);
  const auto rows = nlohmann::json::parse(json_run.out);
  REQUIRE(rows.size() == 12);
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  std::size_t i = 0;
  while (std::getline(lines, line)) {
    std::stringstream fields(line);
    std::string cell;
    std::getline(fields, cell, ',');
    CHECK(rows[i]["N"].get<int>() == std::stoi(cell));
    std::getline(fields, cell, ',');
    CHECK(rows[i]["a"].get<double>() == std::stod(cell));
    std::getline(fields, cell, ',');
    CHECK(rows[i]["V_g"].get<double>() == std::stod(cell));
    std::getline(fields, cell, ',');
    CHECK(rows[i]["Y"].get<double>() == std::stod(cell));
    ++i;
  }
  CHECK(i == 12);
}

TEST_CASE("compare against the shipped sample references") {
  const auto sweep_path = testutil::temp_file(".csv");
  const auto r = run_cli("gauss-sweep -N 20,100 --a 0.2,0.5,1.0 -o " + sweep_path.string());
  REQUIRE(r.exit_code == 0);

  const std::string ref = std::string(ET_DATA_DIR) + "/sample_reference_elm.csv";
  const auto cmp = run_cli("compare --sweep " + sweep_path.string() + " --ref " + ref);
  CHECK(cmp.exit_code == 0);
  CHECK(cmp.out.substr(0, cmp.out.find('\n')) == "N,a,V_g,Y,W0_Y,E_et_K,status,e_ref,delta_g");

  // Published relative errors are recovered within rounding of the sample file
  struct Expected {
    const char* prefix;
    double delta;
  };
  const Expected expected[] = {
      {"\n20,0.5,", 1.06}, {"\n20,1,", 0.41}, {"\n100,0.2,", 0.41},
      {"\n100,0.5,", 0.13}, {"\n100,1,", 0.054},
  };
  for (const auto& e : expected) {
    const auto pos = cmp.out.find(e.prefix);
    REQUIRE(pos != std::string::npos);
    const std::string line = cmp.out.substr(pos + 1, cmp.out.find('\n', pos + 1) - pos - 1);
    const auto last_comma = line.rfind(',');
    const double delta = std::stod(line.substr(last_comma + 1));
    CHECK(std::fabs(delta - e.delta) <= 0.01);
  }
  // the row with no reference keeps empty trailing cells
  CHECK(contains(cmp.out, ",irrelevant,,\n"));
  std::filesystem::remove(sweep_path);
}

TEST_CASE("compare: malformed reference file reports the line and exits 5") {
  const auto sweep_path = testutil::temp_file(".csv");
  REQUIRE(run_cli("gauss-sweep -N 20 --a 1.0 -o " + sweep_path.string()).exit_code == 0);

  const auto ref_path = testutil::temp_file(".csv");
  {
    std::ofstream ref(ref_path);
    ref << "model,N,a,e_ref_K\ngaussian,20,1.0,not-a-number\n";
  }
  const auto r = run_cli("compare --sweep " + sweep_path.string() + " --ref " + ref_path.string());
  CHECK(r.exit_code == 5);
  CHECK(contains(r.err, "line 2"));

  const auto missing = run_cli("compare --sweep " + sweep_path.string() + " --ref /no/such/file");
  CHECK(missing.exit_code == 5);
  std::filesystem::remove(sweep_path);
  std::filesystem::remove(ref_path);
}

TEST_CASE("oracle subcommand") {
  const auto harmonic = run_cli("oracle --potential \"x*x\" --mass 1 --points 2001 --check-et");
  CHECK(harmonic.exit_code == 0);
  CHECK(contains(harmonic.out, "E(refined) = 1\n"));
  CHECK(contains(harmonic.out, "consistent with the exact result"));

  const auto gaussian = run_cli(
      "oracle --model gaussian --param m=1 --param vg=1 --param a=1 --points 2001 --check-et");
  CHECK(gaussian.exit_code == 0);
  CHECK(contains(gaussian.out, "upper bound holds"));
  CHECK(contains(gaussian.out, "boundary = full"));

  const auto calogero = run_cli(
      "oracle --model calogero --param m=1 --param omega=1 --param g=1 --points 2001 --check-et "
      "--json");
  CHECK(calogero.exit_code == 0);
  const auto j = nlohmann::json::parse(calogero.out);
  CHECK(j["boundary"] == "half");
  CHECK(std::fabs(j["energy"].get<double>() - 2.118033988749895) < 1e-5);
  CHECK(j["verdict"] == "lower bound holds");

  CHECK(run_cli("oracle --points 2001").exit_code == 2);  // neither model nor expression
}
