#include "nepcim/contour.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

#include "nepcim/linalg.hpp"

namespace nepcim {

namespace {
std::atomic<std::uint64_t> g_solve_count{0};
}

std::uint64_t solve_counter() {
  return g_solve_count.load(std::memory_order_relaxed);
}

void reset_solve_counter() {
  g_solve_count.store(0, std::memory_order_relaxed);
}

namespace detail {
void count_solves(std::uint64_t n) {
  g_solve_count.fetch_add(n, std::memory_order_relaxed);
}
}  // namespace detail

QuadratureNodes make_quadrature(const Disk& d, int n, double phase) {
  if (n < 1) throw Error("make_quadrature: need at least one node");
  QuadratureNodes q;
  q.disk = d;
  q.count = n;
  q.nodes.reserve(n);
  q.weights.reserve(n);
  for (int j = 0; j < n; ++j) {
    double theta = 2.0 * std::numbers::pi * j / n + phase;
    Complex dir = std::polar(1.0, theta);
    q.nodes.push_back(d.center + d.radius * dir);
    q.weights.push_back(d.radius * dir / static_cast<double>(n));
  }
  return q;
}

namespace {

ProjectionSample accumulate_projection(const NEPProblem& problem,
                                       const QuadratureNodes& q,
                                       const Eigen::VectorXcd& f) {
  const int n = problem.dim();
  ProjectionSample sample;
  sample.full = Eigen::VectorXcd::Zero(n);
  sample.half = Eigen::VectorXcd::Zero(n);
  for (int j = 0; j < q.count; ++j) {
    SolveResult solved = lu_solve(problem.evaluate(q.nodes[j]), f);
    detail::count_solves(1);
    if (solved.condition_warning) ++sample.solve_warnings;
    sample.full += q.weights[j] * solved.x;
    // Even-indexed nodes of the 1-based rule carry the half-point sum.
    if ((j + 1) % 2 == 0) {
      sample.half += 2.0 * q.weights[j] * solved.x;
    }
  }
  return sample;
}

}  // namespace

ProjectionSample projection_apply(const NEPProblem& problem, const Disk& d,
                                  const Eigen::VectorXcd& f, int n) {
  if (n < 4 || n % 2 != 0) {
    throw Error("projection_apply: quadrature count must be even and >= 4");
  }
  if (f.size() != problem.dim()) {
    throw Error("projection_apply: probe size mismatch");
  }
  if (f.norm() == 0.0) throw Error("projection_apply: zero probe");

  try {
    return accumulate_projection(problem, make_quadrature(d, n), f);
  } catch (const SingularSystem&) {
    // A node landed on an eigenvalue; rotating the whole rule moves every
    // node off it while keeping the rule's accuracy.
    double retry_phase = std::numbers::pi / n;
    return accumulate_projection(problem, make_quadrature(d, n, retry_phase),
                                 f);
  }
}

double indicator(const NEPProblem& problem, const Disk& d,
                 const Eigen::VectorXcd& f, int n) {
  ProjectionSample s = projection_apply(problem, d, f, n);
  double sum_sq = 0.0;
  bool any = false;
  for (int k = 0; k < s.full.size(); ++k) {
    double denom = std::abs(s.half[k]);
    if (denom == 0.0) continue;
    double ratio = std::abs(s.full[k]) / denom;
    sum_sq += ratio * ratio;
    any = true;
  }
  if (!any) return 0.0;
  return std::sqrt(sum_sq) / std::sqrt(static_cast<double>(problem.dim()));
}

}  // namespace nepcim
