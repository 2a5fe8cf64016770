#include "nepcim/problems.hpp"

#include <cmath>

#include "nepcim/linalg.hpp"

namespace nepcim {

PolynomialNEP::PolynomialNEP(std::vector<Eigen::MatrixXcd> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) {
    throw DimensionMismatch("polynomial: no coefficient matrices");
  }
  Eigen::Index n = coefficients_.front().rows();
  for (const auto& c : coefficients_) {
    if (c.rows() != n || c.cols() != n) {
      throw DimensionMismatch("polynomial: coefficients must be square and equally sized");
    }
  }
  if (coefficients_.back().norm() == 0.0) {
    throw Error("polynomial: leading coefficient is identically zero");
  }
}

int PolynomialNEP::dim() const {
  return static_cast<int>(coefficients_.front().rows());
}

Eigen::MatrixXcd PolynomialNEP::evaluate(Complex z) const {
  Eigen::MatrixXcd t = coefficients_.back();
  for (int i = degree() - 1; i >= 0; --i) {
    t = z * t + coefficients_[static_cast<std::size_t>(i)];
  }
  return t;
}

DiagonalNEP::DiagonalNEP(std::vector<Complex> roots)
    : roots_(std::move(roots)) {
  if (roots_.empty()) throw Error("diagonal: needs at least one entry");
}

int DiagonalNEP::dim() const { return static_cast<int>(roots_.size()); }

Eigen::MatrixXcd DiagonalNEP::evaluate(Complex z) const {
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    t(i, i) = z - roots_[static_cast<std::size_t>(i)];
  }
  return t;
}

PolynomialNEP appendix_qep() {
  Eigen::MatrixXcd t0(4, 4), t1(4, 4), t2(4, 4);
  t0 << -7, 2, 4, 0,
        2, -4, 2, 0,
        4, 2, -9, 3,
        0, 0, 3, -3;
  t1 << 0.4, 0, -0.3, 0,
        0, 0, 0, 0,
        -0.3, 0, 0.5, -0.2,
        0, 0, -0.2, 0.2;
  t2 = Eigen::Vector4cd(3, 1, 3, 1).asDiagonal();
  return PolynomialNEP({t0, t1, t2});
}

PolynomialNEP random_qep(int n, std::uint64_t seed) {
  if (n < 1) throw Error("random_qep: n must be >= 1");
  PortableRng rng(seed);
  std::vector<Eigen::MatrixXcd> coeffs;
  for (int k = 0; k < 3; ++k) {
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        m(i, j) = rng.uniform01();
      }
    }
    coeffs.push_back(std::move(m));
  }
  return PolynomialNEP(std::move(coeffs));
}

std::vector<Complex> companion_oracle(const PolynomialNEP& p) {
  const int n = p.dim();
  const int d = p.degree();
  if (d < 1) throw OracleUnavailable("oracle: constant polynomial has no spectrum");

  // Monicize: A_i = T_d^{-1} T_i.
  std::vector<Eigen::MatrixXcd> monic;
  try {
    for (int i = 0; i < d; ++i) {
      monic.push_back(
          lu_solve(p.coefficients().back(), p.coefficients()[static_cast<std::size_t>(i)]).x);
    }
  } catch (const SingularSystem&) {
    throw OracleUnavailable("oracle: leading coefficient is singular");
  }

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n * d, n * d);
  for (int blk = 0; blk + 1 < d; ++blk) {
    companion.block(blk * n, (blk + 1) * n, n, n) =
        Eigen::MatrixXcd::Identity(n, n);
  }
  for (int i = 0; i < d; ++i) {
    companion.block((d - 1) * n, i * n, n, n) = -monic[static_cast<std::size_t>(i)];
  }

  EigResult eig = dense_eig(companion);
  return {eig.values.data(), eig.values.data() + eig.values.size()};
}

Eigen::VectorXcd PortableRng::unit_vector(int n) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform_complex();
  double norm = v.norm();
  if (norm == 0.0) throw NumericalFailure("rng: zero draw");
  return v / norm;
}

Eigen::MatrixXcd PortableRng::probe_matrix(int n, int columns) {
  Eigen::MatrixXcd m(n, columns);
  for (int c = 0; c < columns; ++c) {
    m.col(c) = unit_vector(n);
  }
  return m;
}

}  // namespace nepcim
