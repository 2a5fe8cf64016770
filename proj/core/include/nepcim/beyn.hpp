#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nepcim/problems.hpp"
#include "nepcim/types.hpp"

namespace nepcim {

struct MomentPair {
  Eigen::MatrixXcd c0;  // sum_j w_j T(z_j)^{-1} V
  Eigen::MatrixXcd c1;  // sum_j w_j z_j T(z_j)^{-1} V
  Disk disk;
  int n_quad = 0;
};

// Discretized contour moments over the disk boundary. One factorization per
// node, each counted in the global solve counter; inner_workers > 1 solves
// the nodes concurrently (the reduction stays in node order).
MomentPair beyn_moments(const NEPProblem& problem, const Disk& d,
                        const Eigen::MatrixXcd& v, int n,
                        int inner_workers = 1);

struct BeynExtraction {
  int rank = 0;                      // p = #(sigma > tol_svd)
  Eigen::VectorXd singular_values;   // all l, nonincreasing
  Eigen::VectorXcd eigenvalues;      // p entries
  Eigen::MatrixXcd eigenvectors;     // n x p, unit columns V0 s_j
  // p == l: the probe space may be too small for the enclosed spectrum;
  // extraction still proceeds but callers should widen l or shrink the disk.
  bool rank_saturated = false;
};

// SVD-truncates c0 at tol_svd and solves the reduced eigenproblem
// D = V0^H c1 W0 Sigma0^{-1}.
BeynExtraction beyn_extract(const MomentPair& m, double tol_svd);

struct Verification {
  bool accepted = false;
  double residual = 0.0;  // |smallest eigenvalue of T(lambda)|
  std::string failure;    // set when the check itself failed numerically
};

Verification verify_eigenvalue(const NEPProblem& problem, Complex lambda,
                               const SolverConfig& config);

// Indicator screen at n_quad_sim points, Beyn extraction at n_quad_beyn on
// the survivors, strict inscribed-square attribution with a near-edge
// recovery pass, then verification; results deduplicated within merge_tol.
SolverOutput run_pmcimb(const NEPProblem& problem,
                        const std::vector<Disk>& covering,
                        const SolverConfig& config);

}  // namespace nepcim
