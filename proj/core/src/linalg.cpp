#include "nepcim/linalg.hpp"

#include <cmath>
#include <limits>

namespace nepcim {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Checks the U-factor diagonal of a computed LU factorization. An exactly
// zero pivot cannot be solved with; a tiny one can, but the caller should
// know about it.
void inspect_pivots(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu,
                    double norm_a, bool* warning) {
  Eigen::VectorXcd diag = lu.matrixLU().diagonal();
  double threshold = diag.size() * kEps * norm_a;
  for (int i = 0; i < diag.size(); ++i) {
    double p = std::abs(diag[i]);
    if (p == 0.0) {
      throw SingularSystem("lu_solve: exactly singular pivot", i);
    }
    if (p < threshold) *warning = true;
  }
}

}  // namespace

SolveResult lu_solve(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != a.cols()) throw Error("lu_solve: matrix not square");
  if (b.rows() != a.rows()) throw Error("lu_solve: shape mismatch");

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  SolveResult result;
  double norm_a = a.cwiseAbs().rowwise().sum().maxCoeff();
  inspect_pivots(lu, norm_a, &result.condition_warning);
  result.x = lu.solve(b);
  if (!result.x.allFinite()) {
    throw NumericalFailure("lu_solve: non-finite solution");
  }
  return result;
}

SvdResult thin_svd(const Eigen::MatrixXcd& a) {
  if (a.rows() < a.cols()) {
    throw Error("thin_svd: expected rows >= cols");
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalFailure("thin_svd: did not converge");
  }
  return SvdResult{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

EigResult dense_eig(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw Error("dense_eig: matrix not square");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, true);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("dense_eig: did not converge");
  }
  return EigResult{es.eigenvalues(), es.eigenvectors()};
}

Eigenpair smallest_eigenpair(const Eigen::MatrixXcd& a, Complex shift) {
  if (a.rows() != a.cols()) {
    throw Error("smallest_eigenpair: matrix not square");
  }
  const int n = static_cast<int>(a.rows());
  const double norm_a = a.norm();

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
  Complex s = shift;
  bool factored = false;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    Eigen::MatrixXcd shifted = a - s * Eigen::MatrixXcd::Identity(n, n);
    lu.compute(shifted);
    if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() > 0.0) {
      factored = true;
      break;
    }
    s *= Complex(1.0, 1.0);
  }
  if (!factored) {
    throw NumericalFailure(
        "smallest_eigenpair: singular factorization after shift retries");
  }

  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(n));
  Complex lambda = s;
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXcd w = lu.solve(v);
    double norm_w = w.norm();
    if (!(norm_w > 0.0) || !w.allFinite()) {
      throw NumericalFailure("smallest_eigenpair: iteration broke down");
    }
    Complex nu = v.dot(w);  // v^H w
    Complex estimate = (nu != Complex(0, 0)) ? s + 1.0 / nu : lambda;
    v = w / norm_w;
    if (std::abs(estimate - lambda) < 1e-12 * (1.0 + std::abs(estimate))) {
      lambda = estimate;
      break;
    }
    lambda = estimate;
  }

  // Rayleigh quotient on the converged vector gives the returned value.
  Complex rayleigh = v.dot(a * v);
  double residual = (a * v - rayleigh * v).norm();
  if (residual > 1e-8 * std::max(norm_a, 1e-300)) {
    throw NumericalFailure("smallest_eigenpair: no convergence");
  }
  return Eigenpair{rayleigh, v};
}

}  // namespace nepcim
