#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nepcim/problems.hpp"
#include "nepcim/report.hpp"
#include "support/oracles.hpp"

namespace {

namespace fs = std::filesystem;

std::string binary() {
  const char* bin = std::getenv("NEPCIM_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "NEPCIM_BIN must point at the CLI binary");
  return bin;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  fs::path out = fs::temp_directory_path() / "nepcim_cli_stdout.txt";
  fs::path err = fs::temp_directory_path() / "nepcim_cli_stderr.txt";
  std::string cmd = binary() + " " + args + " > " + out.string() + " 2> " +
                    err.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  fs::remove(out);
  fs::remove(err);
  return r;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text) {
    if (c == '\n') ++lines;
  }
  return lines;
}

}  // namespace

TEST_CASE("solve with the moment method reports the full spectrum as JSON") {
  auto r = run_cli("solve --method b --workers 2");
  REQUIRE(r.exit_code == 0);
  nepcim::RunReport report = nepcim::report_from_json(r.out);
  CHECK(report.method == "b");
  REQUIRE(report.eigenvalues.size() == 8);
  CHECK(report.solve_count > 0);

  auto oracle_roots = nepcim::companion_oracle(nepcim::appendix_qep());
  auto inside =
      oracle::filter_inside(oracle_roots, nepcim::Rectangle{-3, 3, -3, 3});
  CHECK(oracle::match_sets(oracle::values_of(report.eigenvalues), inside) <
        1e-8);
}

TEST_CASE("solve with the subdivision method emits one CSV row per value") {
  auto r = run_cli("solve --method a --output csv --workers 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("re,im,residual,method\n", 0) == 0);
  CHECK(count_lines(r.out) == 9);  // header + 8 values
  CHECK(r.out.find(",SIM\n") != std::string::npos);
  CHECK(r.out.find(",BEYN\n") == std::string::npos);
}

TEST_CASE("scan writes one indicator row per disk") {
  auto r = run_cli("scan --workers 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("disk_index,center_re,center_im,radius,indicator,flagged\n",
                    0) == 0);
  CHECK(count_lines(r.out) == 82);  // header + 81 disks
  int flagged = 0;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    if (line.size() >= 5 && line.compare(line.size() - 5, 5, ",true") == 0) {
      ++flagged;
    }
  }
  CHECK(flagged >= 8);
}

TEST_CASE("verify accepts oracle eigenvalues and rejects the origin") {
  auto roots = nepcim::companion_oracle(nepcim::appendix_qep());
  nepcim::Complex lambda = roots.front();
  std::string arg = nepcim::format_double(lambda.real()) + "," +
                    nepcim::format_double(lambda.imag());
  auto r = run_cli("verify --lambda " + arg + " --lambda 0,0");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("lambda_re,lambda_im,residual,accepted\n", 0) == 0);
  CHECK(count_lines(r.out) == 3);
  std::istringstream lines(r.out);
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(first.find(",true") != std::string::npos);
  CHECK(second.find(",false") != std::string::npos);
}

TEST_CASE("verify requires at least one candidate") {
  auto r = run_cli("verify");
  CHECK(r.exit_code == 2);
}

TEST_CASE("malformed candidate strings are a usage error") {
  auto r = run_cli("verify --lambda pickles");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("re,im") != std::string::npos);
}

TEST_CASE("a malformed problem file exits 2 and writes nothing") {
  fs::path bad = fs::temp_directory_path() / "nepcim_bad_problem.json";
  std::ofstream(bad) << "{ \"kind\": 12 ";
  fs::path out = fs::temp_directory_path() / "nepcim_should_not_exist.json";
  fs::remove(out);
  auto r = run_cli("solve --file " + bad.string() + " --out " + out.string());
  CHECK(r.exit_code == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK_FALSE(r.err.empty());
  fs::remove(bad);
}

TEST_CASE("unknown flags and bad enum values are usage errors") {
  CHECK(run_cli("solve --frobnicate").exit_code == 2);
  CHECK(run_cli("solve --method z").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("invalid configuration values are usage errors") {
  CHECK(run_cli("solve --nquad-sim 15").exit_code == 2);
  CHECK(run_cli("solve --tol-eps 0").exit_code == 2);
  CHECK(run_cli("scan --grid 0").exit_code == 2);
}

TEST_CASE("small moment rules need an explicit truncation threshold") {
  CHECK(run_cli("solve --method b --nquad-beyn 16").exit_code == 2);
  CHECK(run_cli("solve --method b --nquad-beyn 16 --allow-small-nquad")
            .exit_code == 0);
  CHECK(run_cli("solve --method b --nquad-beyn 16 --tol-svd 1e-4").exit_code ==
        0);
}

TEST_CASE("worker count leaves the eigenvalue report bitwise unchanged") {
  auto one = run_cli("solve --method b --workers 1");
  auto eight = run_cli("solve --method b --workers 8");
  REQUIRE(one.exit_code == 0);
  REQUIRE(eight.exit_code == 0);
  nepcim::RunReport a = nepcim::report_from_json(one.out);
  nepcim::RunReport b = nepcim::report_from_json(eight.out);
  CHECK(nepcim::eigenvalues_to_csv(a.eigenvalues) ==
        nepcim::eigenvalues_to_csv(b.eigenvalues));
  CHECK(a.solve_count == b.solve_count);
}

TEST_CASE("solve honors --out") {
  fs::path out = fs::temp_directory_path() / "nepcim_solve_report.json";
  fs::remove(out);
  auto r = run_cli("solve --method b --out " + out.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  nepcim::RunReport report = nepcim::report_from_json(slurp(out));
  CHECK(report.eigenvalues.size() == 8);
  fs::remove(out);
}
