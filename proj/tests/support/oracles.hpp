#pragma once

// Closed-form reference values and matching helpers shared by the tests.
// The quadrature oracles are derived independently of the library code: the
// N-point trapezoid rule with weights r e^{i theta_j}/N applied to 1/(z - a)
// sums a finite geometric series, giving 1/(1 - u^N) with u = (a - c)/r.
// Rotating the rule by phase phi multiplies u by e^{-i phi}; the half rule
// (even-indexed nodes, doubled weights) is the N/2-point rule rotated by
// 2 pi / N, giving 1/(1 + u^{N/2}).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "nepcim/types.hpp"

namespace oracle {

using nepcim::Complex;

inline Complex pole_ratio(Complex a, Complex center, double radius) {
  return (a - center) / radius;
}

// N-point full rule applied to 1/(z - a), for a not on the contour.
inline Complex quad_full(Complex u, int n, double phase = 0.0) {
  Complex ur = u * std::polar(1.0, -phase);
  return 1.0 / (1.0 - std::pow(ur, n));
}

// Half rule of the same node set (even 1-based indices, doubled weights).
inline Complex quad_half(Complex u, int n, double phase = 0.0) {
  Complex ur = u * std::polar(1.0, -phase);
  return 1.0 / (1.0 + std::pow(ur, n / 2));
}

// Indicator of a diagonal problem: each diagonal component contributes the
// probe-independent ratio full/half = 1/(1 - u^{N/2}).
inline double diagonal_indicator(const std::vector<Complex>& roots,
                                 Complex center, double radius, int n) {
  double sum_sq = 0.0;
  for (Complex mu : roots) {
    Complex u = pole_ratio(mu, center, radius);
    Complex ratio = 1.0 / (1.0 - std::pow(u, n / 2));
    sum_sq += std::norm(ratio);
  }
  return std::sqrt(sum_sq / static_cast<double>(roots.size()));
}

// Greedy nearest matching between two multisets of the same size; returns
// the largest matched distance, or +inf on a size mismatch.
inline double match_sets(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Complex x : a) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      double d = std::abs(x - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    worst = std::max(worst, best_d);
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

inline bool in_rectangle(Complex z, const nepcim::Rectangle& r) {
  return z.real() > r.x_min && z.real() < r.x_max && z.imag() > r.y_min &&
         z.imag() < r.y_max;
}

inline std::vector<Complex> filter_inside(const std::vector<Complex>& values,
                                          const nepcim::Rectangle& r) {
  std::vector<Complex> out;
  for (Complex z : values) {
    if (in_rectangle(z, r)) out.push_back(z);
  }
  return out;
}

inline std::vector<Complex> values_of(
    const std::vector<nepcim::EigenResult>& results) {
  std::vector<Complex> out;
  out.reserve(results.size());
  for (const auto& r : results) out.push_back(r.value);
  return out;
}

}  // namespace oracle
