#pragma once

#include <vector>

#include "nepcim/problems.hpp"
#include "nepcim/types.hpp"

namespace nepcim {

// Greedy single-pass clustering in input order: each unconsumed point absorbs
// every later point strictly within tol and emits the plain arithmetic mean
// of the absorbed set.
std::vector<Complex> merge_candidates(const std::vector<CandidatePoint>& points,
                                      double tol);

struct RecoveredVector {
  Eigen::VectorXcd vector;  // unit eigenvector of T(lambda)
  double residual = 0.0;    // ||T(lambda) v||_2
};

RecoveredVector recover_eigenvector(const NEPProblem& problem, Complex lambda,
                                    const SolverConfig& config);

// Level-wise indicator subdivision: keep disks whose indicator exceeds
// tol_ind, split survivors in four, repeat for
// L = ceil(log2(r0/tol_eps)) + extra_levels levels, then merge the surviving
// centers and recover eigenvectors.
SolverOutput run_pmcima(const NEPProblem& problem,
                        const std::vector<Disk>& covering,
                        const SolverConfig& config);

}  // namespace nepcim
