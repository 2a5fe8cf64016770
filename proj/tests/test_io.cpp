#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "nepcim/problem_io.hpp"
#include "nepcim/report.hpp"

using nepcim::Complex;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("problem files round-trip without losing a bit") {
  nepcim::PolynomialNEP original = nepcim::random_qep(7, 123);
  auto path = temp_file("nepcim_roundtrip.json");
  nepcim::save_problem(original, path.string());
  nepcim::PolynomialNEP loaded = nepcim::load_problem(path.string());

  CHECK(loaded.dim() == original.dim());
  CHECK(loaded.degree() == original.degree());
  Complex z(0.7, 0.3);
  CHECK(loaded.evaluate(z) == original.evaluate(z));
  std::filesystem::remove(path);
}

TEST_CASE("loader accepts a hand-written minimal problem") {
  auto path = temp_file("nepcim_minimal.json");
  write_text(path, R"({
    "kind": "polynomial",
    "dim": 1,
    "degree": 1,
    "coefficients": [[[[-2.0, 0.0]]], [[[1.0, 0.0]]]]
  })");
  nepcim::PolynomialNEP p = nepcim::load_problem(path.string());
  CHECK(p.dim() == 1);
  CHECK(p.evaluate(Complex(2, 0))(0, 0) == Complex(0, 0));
  std::filesystem::remove(path);
}

TEST_CASE("loader rejects dimension mismatches") {
  auto path = temp_file("nepcim_baddim.json");
  write_text(path, R"({
    "kind": "polynomial",
    "dim": 2,
    "degree": 1,
    "coefficients": [[[[1,0],[0,0]]], [[[1,0],[0,0]],[[0,0],[1,0]]]]
  })");
  CHECK_THROWS_AS(nepcim::load_problem(path.string()),
                  nepcim::DimensionMismatch);
  std::filesystem::remove(path);
}

TEST_CASE("loader names unknown keys") {
  auto path = temp_file("nepcim_unknown.json");
  write_text(path, R"({
    "kind": "polynomial",
    "dim": 1,
    "degree": 0,
    "coefficients": [[[[1,0]]]],
    "flavour": "mint"
  })");
  try {
    nepcim::load_problem(path.string());
    FAIL("expected ParseError");
  } catch (const nepcim::ParseError& e) {
    CHECK(std::string(e.what()).find("flavour") != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("loader rejects non-finite entries") {
  auto path = temp_file("nepcim_nan.json");
  write_text(path, R"({
    "kind": "polynomial",
    "dim": 1,
    "degree": 1,
    "coefficients": [[[[1, 0]]], [[["nan", 0]]]]
  })");
  CHECK_THROWS_AS(nepcim::load_problem(path.string()), nepcim::ParseError);
  write_text(path, R"({
    "kind": "polynomial",
    "dim": 1,
    "degree": 1,
    "coefficients": [[[[1e400, 0]]], [[[1, 0]]]]
  })");
  CHECK_THROWS_AS(nepcim::load_problem(path.string()), nepcim::ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("loader rejects malformed JSON and wrong kinds") {
  auto path = temp_file("nepcim_garbage.json");
  write_text(path, "{ not json");
  CHECK_THROWS_AS(nepcim::load_problem(path.string()), nepcim::ParseError);
  write_text(path, R"({"kind": "rational", "dim": 1, "degree": 0,
                       "coefficients": [[[[1,0]]]]})");
  CHECK_THROWS_AS(nepcim::load_problem(path.string()), nepcim::ParseError);
  CHECK_THROWS_AS(nepcim::load_problem("/nonexistent/nepcim.json"),
                  nepcim::ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("reports serialize and parse idempotently") {
  nepcim::RunReport r;
  r.method = "b";
  r.region = nepcim::Rectangle{-3, 3, -3, 3};
  r.grid_x = 9;
  r.grid_y = 9;
  r.solve_count = 1936;
  r.wall_time_s = 0.0123456789;
  r.warnings = {"quote \" backslash \\ newline \n done"};
  nepcim::EigenResult e;
  e.value = Complex(0.335294429779, -1e-16);
  e.residual = 3.2e-15;
  e.method = nepcim::Method::BEYN;
  r.eigenvalues.push_back(e);

  std::string one = nepcim::report_to_json(r);
  nepcim::RunReport parsed = nepcim::report_from_json(one);
  std::string two = nepcim::report_to_json(parsed);
  CHECK(one == two);
  CHECK(parsed.method == "b");
  CHECK(parsed.solve_count == 1936);
  REQUIRE(parsed.warnings.size() == 1);
  CHECK(parsed.warnings[0] == r.warnings[0]);
  REQUIRE(parsed.eigenvalues.size() == 1);
  CHECK(parsed.eigenvalues[0].value == e.value);
  CHECK(parsed.eigenvalues[0].residual == e.residual);
  CHECK(parsed.config.n_quad_beyn == r.config.n_quad_beyn);
  CHECK(parsed.config.shift == r.config.shift);
}

TEST_CASE("report parser flags missing fields") {
  CHECK_THROWS_AS(nepcim::report_from_json("{}"), nepcim::ParseError);
  CHECK_THROWS_AS(nepcim::report_from_json("not json"), nepcim::ParseError);
}

TEST_CASE("csv emitters use the documented headers") {
  nepcim::EigenResult e;
  e.value = Complex(1.5, -0.25);
  e.residual = 1e-12;
  e.method = nepcim::Method::SIM;
  std::string csv = nepcim::eigenvalues_to_csv({e});
  CHECK(csv.rfind("re,im,residual,method\n", 0) == 0);
  CHECK(csv.find("1.5,-0.25,") != std::string::npos);
  CHECK(csv.find(",SIM\n") != std::string::npos);

  nepcim::ScanRow row;
  row.disk_index = 4;
  row.disk = nepcim::Disk{Complex(-2, 0.5), 0.4714};
  row.indicator = 0.93;
  row.flagged = true;
  std::string scan = nepcim::scan_to_csv({row});
  CHECK(scan.rfind("disk_index,center_re,center_im,radius,indicator,flagged\n",
                   0) == 0);
  CHECK(scan.find("4,-2,0.5,") != std::string::npos);
  CHECK(scan.find(",true\n") != std::string::npos);
}

TEST_CASE("format_double survives a parse round-trip") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
    std::string s = nepcim::format_double(x);
    CHECK(std::stod(s) == x);
  }
}
