#include "nepcim/beyn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

#include "nepcim/contour.hpp"
#include "nepcim/geometry.hpp"
#include "nepcim/linalg.hpp"
#include "nepcim/parallel.hpp"

namespace nepcim {

namespace {

std::string disk_label(const Disk& d) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "disk (%.6g, %.6g) r=%.6g",
                d.center.real(), d.center.imag(), d.radius);
  return buf;
}

std::string point_label(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.12g, %.12g)", z.real(), z.imag());
  return buf;
}

MomentPair accumulate_moments(const NEPProblem& problem,
                              const QuadratureNodes& q,
                              const Eigen::MatrixXcd& v, int inner_workers) {
  MomentPair m;
  m.disk = q.disk;
  m.n_quad = q.count;
  m.c0 = Eigen::MatrixXcd::Zero(v.rows(), v.cols());
  m.c1 = Eigen::MatrixXcd::Zero(v.rows(), v.cols());

  std::vector<Eigen::MatrixXcd> solutions(q.count);
  if (inner_workers > 1) {
    std::vector<int> index(q.count);
    std::iota(index.begin(), index.end(), 0);
    auto outcomes = parallel_map(
        index,
        [&](const int& j) {
          SolveResult s = lu_solve(problem.evaluate(q.nodes[j]), v);
          detail::count_solves(1);
          return s.x;
        },
        inner_workers);
    for (int j = 0; j < q.count; ++j) {
      if (!outcomes[j].ok()) throw NumericalFailure(outcomes[j].error);
      solutions[j] = std::move(*outcomes[j].value);
    }
  } else {
    for (int j = 0; j < q.count; ++j) {
      solutions[j] = lu_solve(problem.evaluate(q.nodes[j]), v).x;
      detail::count_solves(1);
    }
  }

  // Reduction in node order keeps the result independent of inner_workers.
  for (int j = 0; j < q.count; ++j) {
    m.c0 += q.weights[j] * solutions[j];
    m.c1 += q.weights[j] * q.nodes[j] * solutions[j];
  }
  return m;
}

}  // namespace

MomentPair beyn_moments(const NEPProblem& problem, const Disk& d,
                        const Eigen::MatrixXcd& v, int n, int inner_workers) {
  if (n < 4) throw Error("beyn_moments: need at least 4 nodes");
  if (v.rows() != problem.dim()) {
    throw Error("beyn_moments: probe row count mismatch");
  }
  if (v.cols() > v.rows()) {
    throw Error("beyn_moments: more probe columns than rows");
  }
  try {
    return accumulate_moments(problem, make_quadrature(d, n), v,
                              inner_workers);
  } catch (const SingularSystem&) {
    double retry_phase = std::numbers::pi / n;
    return accumulate_moments(problem, make_quadrature(d, n, retry_phase), v,
                              inner_workers);
  }
}

BeynExtraction beyn_extract(const MomentPair& m, double tol_svd) {
  if (!(tol_svd > 0)) throw Error("beyn_extract: tol_svd must be positive");
  if (!m.c0.allFinite() || !m.c1.allFinite()) {
    throw NumericalFailure("beyn_extract: non-finite moments");
  }

  SvdResult svd = thin_svd(m.c0);
  const int l = static_cast<int>(svd.sigma.size());
  int p = 0;
  while (p < l && svd.sigma[p] > tol_svd) ++p;

  BeynExtraction ex;
  ex.singular_values = svd.sigma;
  ex.rank = p;
  ex.rank_saturated = (p == l);
  if (p == 0) return ex;

  Eigen::MatrixXcd u0 = svd.u.leftCols(p);
  Eigen::MatrixXcd w0 = svd.w.leftCols(p);
  Eigen::VectorXcd s0_inv =
      svd.sigma.head(p).cwiseInverse().cast<Complex>();
  Eigen::MatrixXcd d1 = u0.adjoint() * m.c1 * w0 * s0_inv.asDiagonal();

  EigResult eig = dense_eig(d1);
  ex.eigenvalues = eig.values;
  ex.eigenvectors.resize(m.c0.rows(), p);
  for (int j = 0; j < p; ++j) {
    Eigen::VectorXcd v = u0 * eig.vectors.col(j);
    double norm = v.norm();
    if (norm == 0.0) throw NumericalFailure("beyn_extract: zero eigenvector");
    ex.eigenvectors.col(j) = v / norm;
  }
  return ex;
}

Verification verify_eigenvalue(const NEPProblem& problem, Complex lambda,
                               const SolverConfig& config) {
  Verification v;
  try {
    Eigenpair pair = smallest_eigenpair(problem.evaluate(lambda), config.shift);
    v.residual = std::abs(pair.value);
    v.accepted = v.residual < config.verify_tol;
  } catch (const Error& e) {
    v.accepted = false;
    v.residual = std::numeric_limits<double>::infinity();
    v.failure = e.what();
  }
  return v;
}

namespace {

struct DiskExtraction {
  BeynExtraction extraction;
  std::string error;
};

struct RawValue {
  Complex value;
  Eigen::VectorXcd vector;
  std::size_t disk_index;
  bool in_square;
  bool near_edge;
};

}  // namespace

SolverOutput run_pmcimb(const NEPProblem& problem,
                        const std::vector<Disk>& covering,
                        const SolverConfig& config) {
  config.validate();
  if (covering.empty()) throw Error("run_pmcimb: empty covering");

  const std::uint64_t solves_before = solve_counter();
  SolverOutput out;

  PortableRng rng(config.rng_seed);
  const Eigen::VectorXcd f = rng.unit_vector(problem.dim());
  const Eigen::MatrixXcd probes =
      rng.probe_matrix(problem.dim(), std::min(config.probe_count, problem.dim()));

  // Step 1: indicator screen over the whole covering.
  auto screen = parallel_map(
      covering,
      [&](const Disk& d) { return indicator(problem, d, f, config.n_quad_sim); },
      config.workers);

  std::vector<std::size_t> survivors;
  for (std::size_t i = 0; i < covering.size(); ++i) {
    if (!screen[i].ok()) {
      out.warnings.push_back("indicator failed, treating as empty: " +
                             disk_label(covering[i]) + ": " + screen[i].error);
      continue;
    }
    if (*screen[i].value > config.tol_ind) survivors.push_back(i);
  }

  // Step 2: moments and extraction per surviving disk.
  auto extractions = parallel_map(
      survivors,
      [&](const std::size_t& idx) {
        MomentPair m = beyn_moments(problem, covering[idx], probes,
                                    config.n_quad_beyn,
                                    config.inner_parallel ? config.workers : 1);
        return beyn_extract(m, config.tol_svd);
      },
      config.workers);

  std::vector<RawValue> raw;
  for (std::size_t s = 0; s < survivors.size(); ++s) {
    const Disk& d = covering[survivors[s]];
    if (!extractions[s].ok()) {
      out.warnings.push_back("extraction failed, skipping " + disk_label(d) +
                             ": " + extractions[s].error);
      continue;
    }
    const BeynExtraction& ex = *extractions[s].value;
    if (ex.rank_saturated) {
      out.warnings.push_back(
          "rank saturated (p = probe count) on " + disk_label(d) +
          "; increase probe_count or shrink the regions");
    }
    if (ex.rank == 0) {
      out.warnings.push_back(
          "indicator flagged " + disk_label(d) +
          " but no singular value cleared tol_svd; use smaller subregions "
          "or a larger probe_count");
      continue;
    }

    std::vector<int> order(static_cast<std::size_t>(ex.rank));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      Complex za = ex.eigenvalues[a], zb = ex.eigenvalues[b];
      if (za.real() != zb.real()) return za.real() < zb.real();
      return za.imag() < zb.imag();
    });

    double half = d.square_half_side();
    for (int j : order) {
      Complex z = ex.eigenvalues[j];
      double dx = std::abs(z.real() - d.center.real()) - half;
      double dy = std::abs(z.imag() - d.center.imag()) - half;
      RawValue rv;
      rv.value = z;
      rv.vector = ex.eigenvectors.col(j);
      rv.disk_index = survivors[s];
      rv.in_square = dx < 0 && dy < 0;
      rv.near_edge = !rv.in_square && std::max(dx, dy) < config.merge_tol;
      raw.push_back(std::move(rv));
    }
  }

  // Step 3: verification of the square-attributed values.
  std::vector<std::size_t> attributed;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].in_square) attributed.push_back(i);
  }
  auto verdicts = parallel_map(
      attributed,
      [&](const std::size_t& i) {
        return verify_eigenvalue(problem, raw[i].value, config);
      },
      config.workers);

  auto near_accepted = [&](Complex z) {
    for (const EigenResult& r : out.eigenvalues) {
      if (std::abs(r.value - z) < config.merge_tol) return true;
    }
    return false;
  };

  for (std::size_t k = 0; k < attributed.size(); ++k) {
    const RawValue& rv = raw[attributed[k]];
    if (!verdicts[k].ok()) {
      out.warnings.push_back("verification errored at " +
                             point_label(rv.value) + ": " + verdicts[k].error);
      continue;
    }
    const Verification& v = *verdicts[k].value;
    if (!v.failure.empty()) {
      out.warnings.push_back("verification failed numerically at " +
                             point_label(rv.value) + ", rejecting: " +
                             v.failure);
      continue;
    }
    if (!v.accepted) continue;
    if (near_accepted(rv.value)) continue;
    out.eigenvalues.push_back(
        EigenResult{rv.value, rv.vector, v.residual, Method::BEYN});
  }

  // Recovery pass: a value filtered by every overlapping square but sitting
  // within merge_tol of a square edge would otherwise be lost to the strict
  // attribution rule.
  for (const RawValue& rv : raw) {
    if (rv.in_square || !rv.near_edge) continue;
    if (near_accepted(rv.value)) continue;
    Verification v = verify_eigenvalue(problem, rv.value, config);
    if (!v.failure.empty()) {
      out.warnings.push_back("verification failed numerically at " +
                             point_label(rv.value) + ", rejecting: " +
                             v.failure);
      continue;
    }
    if (!v.accepted) continue;
    out.warnings.push_back("recovered edge value at " + point_label(rv.value));
    out.eigenvalues.push_back(
        EigenResult{rv.value, rv.vector, v.residual, Method::BEYN});
  }

  out.solve_count = solve_counter() - solves_before;
  return out;
}

}  // namespace nepcim
