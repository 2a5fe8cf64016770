#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nepcim {

using Complex = std::complex<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularSystem : Error {
  int pivot_index;
  SingularSystem(const std::string& msg, int pivot)
      : Error(msg), pivot_index(pivot) {}
};

struct NumericalFailure : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct OracleUnavailable : Error {
  using Error::Error;
};

struct Rectangle {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

struct Disk {
  Complex center;
  double radius = 0.0;

  // Half-side of the axis-aligned square this disk circumscribes.
  double square_half_side() const { return radius / std::sqrt(2.0); }
};

enum class Method { SIM, BEYN };

inline const char* method_name(Method m) {
  return m == Method::SIM ? "SIM" : "BEYN";
}

struct SolverConfig {
  int n_quad_sim = 16;
  int n_quad_beyn = 64;
  double tol_ind = 0.1;
  double tol_eps = 1e-6;
  double tol_svd = 1e-6;
  int probe_count = 20;
  double merge_tol = 1e-6;
  double verify_tol = 1e-6;
  Complex shift{0.001, 0.0};
  int extra_levels = 2;
  int workers = 1;
  std::uint64_t rng_seed = 1;
  bool inner_parallel = false;

  // Throws Error when a field violates its constraints.
  void validate() const {
    if (n_quad_sim < 4 || n_quad_sim % 2 != 0) {
      throw Error("config: n_quad_sim must be an even integer >= 4");
    }
    if (n_quad_beyn < 4) throw Error("config: n_quad_beyn must be >= 4");
    if (!(tol_ind > 0) || !(tol_eps > 0) || !(tol_svd > 0) ||
        !(merge_tol > 0) || !(verify_tol > 0)) {
      throw Error("config: tolerances must be strictly positive");
    }
    if (probe_count < 1) throw Error("config: probe_count must be >= 1");
    if (extra_levels < 0) throw Error("config: extra_levels must be >= 0");
    if (workers < 1) throw Error("config: workers must be >= 1");
  }
};

struct CandidatePoint {
  Complex value;
  Disk source_disk;
  int level = 0;
};

struct EigenResult {
  Complex value;
  std::optional<Eigen::VectorXcd> vector;
  double residual = 0.0;
  Method method = Method::SIM;
};

struct SolverOutput {
  std::vector<EigenResult> eigenvalues;
  std::uint64_t solve_count = 0;
  std::vector<std::string> warnings;
};

}  // namespace nepcim
