#pragma once

#include <Eigen/Dense>

#include "nepcim/types.hpp"

namespace nepcim {

struct SolveResult {
  Eigen::MatrixXcd x;
  // Set when a pivot fell below n*eps*norm(A): the solve went through but the
  // result may be dominated by rounding.
  bool condition_warning = false;
};

// Partial-pivoting LU solve of A X = B. Throws SingularSystem (with the pivot
// index) on an exactly zero pivot.
SolveResult lu_solve(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

struct SvdResult {
  Eigen::MatrixXcd u;      // n x l, column-orthonormal
  Eigen::VectorXd sigma;   // l, nonincreasing
  Eigen::MatrixXcd w;      // l x l, column-orthonormal
};

// Thin SVD A = U diag(sigma) W^H for A with rows >= cols.
SvdResult thin_svd(const Eigen::MatrixXcd& a);

struct EigResult {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // columns are unit eigenvectors
};

// Dense eigendecomposition of a small general complex matrix.
EigResult dense_eig(const Eigen::MatrixXcd& a);

struct Eigenpair {
  Complex value;
  Eigen::VectorXcd vector;  // unit norm
};

// Eigenvalue of A nearest the shift, found by fixed-shift inverse iteration.
// On a singular factorization the shift is multiplied by (1+i), up to three
// times, before giving up with NumericalFailure.
Eigenpair smallest_eigenpair(const Eigen::MatrixXcd& a, Complex shift);

}  // namespace nepcim
