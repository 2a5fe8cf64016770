#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "nepcim/problems.hpp"
#include "nepcim/types.hpp"

namespace nepcim {

// Trapezoid rule on the circle: nodes z_j = c + r e^{i theta_j} with
// theta_j = 2 pi (j-1)/N + phase, weights r e^{i theta_j}/N. The weights
// absorb the 1/(2 pi i) of the projection integral.
struct QuadratureNodes {
  Disk disk;
  int count = 0;
  std::vector<Complex> nodes;
  std::vector<Complex> weights;
};

QuadratureNodes make_quadrature(const Disk& d, int n, double phase = 0.0);

struct ProjectionSample {
  Eigen::VectorXcd full;  // N-point sum
  Eigen::VectorXcd half;  // even-indexed nodes with doubled weights
  int solve_warnings = 0;
};

// Approximates the spectral projection of f: full = sum_j w_j x_j with
// T(z_j) x_j = f, half over the even-indexed half rule. A singular node
// triggers one retry with the rule rotated by pi/N.
ProjectionSample projection_apply(const NEPProblem& problem, const Disk& d,
                                  const Eigen::VectorXcd& f, int n);

// Ratio indicator ||full (/) half||_2 / sqrt(dim). Components with a zero
// half-sum are excluded; all-zero half returns 0.
double indicator(const NEPProblem& problem, const Disk& d,
                 const Eigen::VectorXcd& f, int n);

// Global count of linear solves issued through contour-driven operations.
std::uint64_t solve_counter();
void reset_solve_counter();

namespace detail {
void count_solves(std::uint64_t n);
}

}  // namespace nepcim
