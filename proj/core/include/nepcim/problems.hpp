#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nepcim/types.hpp"

namespace nepcim {

// A nonlinear eigenvalue problem T(lambda) x = 0 given by its matrix
// function. evaluate must be a pure function of z.
class NEPProblem {
 public:
  virtual ~NEPProblem() = default;
  virtual int dim() const = 0;
  virtual Eigen::MatrixXcd evaluate(Complex z) const = 0;
};

// T(z) = T_0 + z T_1 + ... + z^d T_d with dense square coefficients.
class PolynomialNEP : public NEPProblem {
 public:
  explicit PolynomialNEP(std::vector<Eigen::MatrixXcd> coefficients);

  int dim() const override;
  Eigen::MatrixXcd evaluate(Complex z) const override;

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  const std::vector<Eigen::MatrixXcd>& coefficients() const {
    return coefficients_;
  }

 private:
  std::vector<Eigen::MatrixXcd> coefficients_;
};

// T(z) = diag(z - mu_i). Eigenvalues are exactly the planted roots, with
// multiplicity equal to their repeat count.
class DiagonalNEP : public NEPProblem {
 public:
  explicit DiagonalNEP(std::vector<Complex> roots);

  int dim() const override;
  Eigen::MatrixXcd evaluate(Complex z) const override;

  const std::vector<Complex>& roots() const { return roots_; }

 private:
  std::vector<Complex> roots_;
};

// The 4x4 degree-2 reference problem used throughout the tests.
PolynomialNEP appendix_qep();

// Degree-2 problem with three n x n coefficients, entries i.i.d. uniform on
// [0,1) drawn row-major (T_0 first) from PortableRng(seed).
PolynomialNEP random_qep(int n, std::uint64_t seed);

// All finite eigenvalues via companion linearization of the monicized
// polynomial plus a dense eigendecomposition. Test oracle only; the solvers
// never call it. Throws OracleUnavailable when the leading coefficient is
// singular.
std::vector<Complex> companion_oracle(const PolynomialNEP& p);

// Deterministic, documented random stream shared by everything that needs
// randomness: mt19937_64 with the 53-bit mantissa mapping to [0,1).
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Real part drawn before imaginary part.
  Complex uniform_complex() {
    double re = uniform01();
    double im = uniform01();
    return Complex(re, im);
  }

  // Entries drawn in index order, then normalized to unit 2-norm.
  Eigen::VectorXcd unit_vector(int n);

  // Columns drawn and unit-normalized one at a time, left to right.
  Eigen::MatrixXcd probe_matrix(int n, int columns);

 private:
  std::mt19937_64 engine_;
};

}  // namespace nepcim
