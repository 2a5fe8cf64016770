#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nepcim/beyn.hpp"
#include "nepcim/contour.hpp"
#include "nepcim/geometry.hpp"
#include "nepcim/parallel.hpp"
#include "nepcim/problem_io.hpp"
#include "nepcim/report.hpp"
#include "nepcim/sim.hpp"

namespace {

using nepcim::Complex;

int default_workers() {
  if (const char* env = std::getenv("NEPCIM_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct Options {
  std::string file;
  double x_min = -3.0, x_max = 3.0, y_min = -3.0, y_max = 3.0;
  int grid = 9;
  int grid_x = 0, grid_y = 0;
  std::string axis_shift = "auto";
  bool allow_small_nquad = false;
  double shift_re = 0.001, shift_im = 0.0;
  nepcim::SolverConfig config;

  void finalize() { config.shift = Complex(shift_re, shift_im); }
};

CLI::Option* add_common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--file", o.file,
                  "Problem file (JSON); defaults to the bundled 4x4 QEP");
  cmd->add_option("--nquad-sim", o.config.n_quad_sim,
                  "Quadrature points for the indicator (even)");
  cmd->add_option("--nquad-beyn", o.config.n_quad_beyn,
                  "Quadrature points for moment extraction");
  cmd->add_option("--tol-ind", o.config.tol_ind, "Indicator threshold");
  cmd->add_option("--tol-eps", o.config.tol_eps, "Subdivision target radius");
  CLI::Option* svd = cmd->add_option("--tol-svd", o.config.tol_svd,
                                     "Singular value truncation threshold");
  cmd->add_option("--probes", o.config.probe_count,
                  "Probe columns for moment extraction");
  cmd->add_option("--merge-tol", o.config.merge_tol,
                  "Candidate merge/dedup distance");
  cmd->add_option("--verify-tol", o.config.verify_tol,
                  "Acceptance threshold on |smallest eig of T(lambda)|");
  cmd->add_option("--shift-re", o.shift_re, "Verification shift, real part");
  cmd->add_option("--shift-im", o.shift_im,
                  "Verification shift, imaginary part");
  cmd->add_option("--extra-levels", o.config.extra_levels,
                  "Subdivision levels past the tol_eps depth");
  cmd->add_option("--workers", o.config.workers,
                  "Worker threads (default: NEPCIM_WORKERS or hardware)");
  cmd->add_option("--seed", o.config.rng_seed, "Random stream seed");
  cmd->add_flag("--inner-parallel", o.config.inner_parallel,
                "Also parallelize over quadrature nodes");
  cmd->add_flag("--allow-small-nquad", o.allow_small_nquad,
                "Permit --nquad-beyn < 32 with the default --tol-svd");
  return svd;
}

void add_region_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--xmin", o.x_min, "Region lower real bound");
  cmd->add_option("--xmax", o.x_max, "Region upper real bound");
  cmd->add_option("--ymin", o.y_min, "Region lower imaginary bound");
  cmd->add_option("--ymax", o.y_max, "Region upper imaginary bound");
  cmd->add_option("--grid", o.grid, "Cells per axis");
  cmd->add_option("--grid-x", o.grid_x, "Cells along the real axis");
  cmd->add_option("--grid-y", o.grid_y, "Cells along the imaginary axis");
  cmd->add_option("--axis-shift", o.axis_shift,
                  "Nudge the covering off the axes: auto, on, off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
}

std::unique_ptr<nepcim::PolynomialNEP> load_or_builtin(const Options& o) {
  if (o.file.empty()) {
    return std::make_unique<nepcim::PolynomialNEP>(nepcim::appendix_qep());
  }
  return std::make_unique<nepcim::PolynomialNEP>(nepcim::load_problem(o.file));
}

bool grid_line_hits_axis(double lo, double hi, int cells) {
  double h = (hi - lo) / cells;
  double tol = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  for (int i = 0; i <= cells; ++i) {
    if (std::abs(lo + i * h) < tol) return true;
  }
  return false;
}

std::vector<nepcim::Disk> build_covering(const Options& o, int gx, int gy) {
  nepcim::Rectangle region{o.x_min, o.x_max, o.y_min, o.y_max};
  Complex offset(0, 0);
  bool shift = false;
  if (o.axis_shift == "on") {
    shift = true;
  } else if (o.axis_shift == "auto") {
    shift = grid_line_hits_axis(o.x_min, o.x_max, gx) ||
            grid_line_hits_axis(o.y_min, o.y_max, gy);
  }
  if (shift) {
    double delta = 1e-4 * (1.0 + std::sqrt(2.0));
    offset = Complex(delta, delta);
    std::cerr << "note: grid line coincides with an axis; covering shifted by "
              << nepcim::format_double(delta) << " in both coordinates\n";
  }
  return nepcim::cover_rectangle(region, gx, gy, offset);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw nepcim::Error("cannot open output file " + path);
  out << text;
  if (!out) throw nepcim::Error("write failed for " + path);
}

int run_scan(const Options& o, const std::string& out_path) {
  auto problem = load_or_builtin(o);
  int gx = o.grid_x > 0 ? o.grid_x : o.grid;
  int gy = o.grid_y > 0 ? o.grid_y : o.grid;
  std::vector<nepcim::Disk> covering = build_covering(o, gx, gy);

  nepcim::PortableRng rng(o.config.rng_seed);
  Eigen::VectorXcd f = rng.unit_vector(problem->dim());

  auto outcomes = nepcim::parallel_map(
      covering,
      [&](const nepcim::Disk& d) {
        return nepcim::indicator(*problem, d, f, o.config.n_quad_sim);
      },
      o.config.workers);

  std::vector<nepcim::ScanRow> rows;
  rows.reserve(covering.size());
  for (std::size_t i = 0; i < covering.size(); ++i) {
    nepcim::ScanRow row;
    row.disk_index = static_cast<int>(i);
    row.disk = covering[i];
    if (outcomes[i].ok()) {
      row.indicator = *outcomes[i].value;
      row.flagged = row.indicator > o.config.tol_ind;
    } else {
      std::cerr << "warning: indicator failed on disk " << i << ": "
                << outcomes[i].error << "\n";
    }
    rows.push_back(row);
  }
  write_output(out_path, nepcim::scan_to_csv(rows));
  return 0;
}

int run_solve(const Options& o, const std::string& method,
              const std::string& format, const std::string& out_path) {
  auto problem = load_or_builtin(o);
  int gx = o.grid_x > 0 ? o.grid_x : o.grid;
  int gy = o.grid_y > 0 ? o.grid_y : o.grid;
  std::vector<nepcim::Disk> covering = build_covering(o, gx, gy);

  auto start = std::chrono::steady_clock::now();
  nepcim::SolverOutput result;
  try {
    if (method == "a") {
      result = nepcim::run_pmcima(*problem, covering, o.config);
    } else {
      result = nepcim::run_pmcimb(*problem, covering, o.config);
    }
  } catch (const nepcim::Error& e) {
    std::cerr << "error: solver failed to produce any result: " << e.what()
              << "\n";
    return 3;
  }
  std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;

  for (const std::string& w : result.warnings) {
    std::cerr << "warning: " << w << "\n";
  }

  if (format == "csv") {
    write_output(out_path, nepcim::eigenvalues_to_csv(result.eigenvalues));
    return 0;
  }
  nepcim::RunReport report;
  report.method = method;
  report.config = o.config;
  report.region = nepcim::Rectangle{o.x_min, o.x_max, o.y_min, o.y_max};
  report.grid_x = gx;
  report.grid_y = gy;
  report.eigenvalues = result.eigenvalues;
  report.solve_count = result.solve_count;
  report.warnings = result.warnings;
  report.wall_time_s = elapsed.count();
  write_output(out_path, nepcim::report_to_json(report));
  return 0;
}

int run_verify(const Options& o, const std::vector<std::string>& lambdas) {
  auto problem = load_or_builtin(o);
  std::vector<Complex> values;
  for (const std::string& s : lambdas) {
    double re = 0, im = 0;
    char trailing = 0;
    if (std::sscanf(s.c_str(), "%lf,%lf%c", &re, &im, &trailing) != 2) {
      std::cerr << "error: --lambda expects 're,im', got '" << s << "'\n";
      return 2;
    }
    values.emplace_back(re, im);
  }

  auto verdicts = nepcim::parallel_map(
      values,
      [&](const Complex& z) {
        return nepcim::verify_eigenvalue(*problem, z, o.config);
      },
      o.config.workers);

  std::cout << "lambda_re,lambda_im,residual,accepted\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    nepcim::Verification v;
    if (verdicts[i].ok()) {
      v = *verdicts[i].value;
    } else {
      v.failure = verdicts[i].error;
    }
    if (!v.failure.empty()) {
      std::cerr << "warning: verification failed numerically at "
                << nepcim::format_double(values[i].real()) << ","
                << nepcim::format_double(values[i].imag()) << ": " << v.failure
                << "\n";
    }
    std::cout << nepcim::format_double(values[i].real()) << ","
              << nepcim::format_double(values[i].imag()) << ","
              << nepcim::format_double(v.residual) << ","
              << (v.accepted ? "true" : "false") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel contour-integral nonlinear eigenvalue solver"};
  app.require_subcommand(1);

  Options scan_opts, solve_opts, verify_opts;
  scan_opts.config.workers = default_workers();
  solve_opts.config.workers = default_workers();
  verify_opts.config.workers = default_workers();

  std::string scan_out, solve_out, solve_method = "b", solve_format = "json";
  std::vector<std::string> lambdas;

  CLI::App* scan =
      app.add_subcommand("scan", "Write the per-disk indicator table as CSV");
  CLI::Option* scan_svd = add_common_flags(scan, scan_opts);
  add_region_flags(scan, scan_opts);
  scan->add_option("--out", scan_out, "Output path (default: stdout)");

  CLI::App* solve = app.add_subcommand(
      "solve",
      "Locate eigenvalues with the subdivision (a) or moment (b) method");
  CLI::Option* solve_svd = add_common_flags(solve, solve_opts);
  add_region_flags(solve, solve_opts);
  solve->add_option("--method", solve_method, "a or b")
      ->check(CLI::IsMember({"a", "b"}));
  solve->add_option("--output", solve_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  solve->add_option("--out", solve_out, "Output path (default: stdout)");

  CLI::App* verify = app.add_subcommand(
      "verify", "Check candidate eigenvalues against the problem");
  CLI::Option* verify_svd = add_common_flags(verify, verify_opts);
  verify->add_option("--lambda", lambdas, "Candidate as 're,im' (repeatable)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Options* opts = nullptr;
  bool svd_set = false;
  if (scan->parsed()) {
    opts = &scan_opts;
    svd_set = scan_svd->count() > 0;
  } else if (solve->parsed()) {
    opts = &solve_opts;
    svd_set = solve_svd->count() > 0;
  } else {
    opts = &verify_opts;
    svd_set = verify_svd->count() > 0;
  }
  opts->finalize();

  try {
    opts->config.validate();
    if (opts->config.n_quad_beyn < 32 && !svd_set && !opts->allow_small_nquad) {
      std::cerr << "error: --nquad-beyn < 32 needs an explicit --tol-svd "
                   "(the default threshold assumes N >= 32) or "
                   "--allow-small-nquad\n";
      return 2;
    }
    if (scan->parsed()) return run_scan(scan_opts, scan_out);
    if (solve->parsed()) {
      return run_solve(solve_opts, solve_method, solve_format, solve_out);
    }
    return run_verify(verify_opts, lambdas);
  } catch (const nepcim::NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nepcim::Error& e) {
    // Everything else reaching this level is a usage problem: bad config,
    // unreadable or malformed input, impossible region.
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
