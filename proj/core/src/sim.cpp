#include "nepcim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

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

}  // namespace

std::vector<Complex> merge_candidates(const std::vector<CandidatePoint>& points,
                                      double tol) {
  if (tol <= 0) throw Error("merge_candidates: tol must be positive");
  std::vector<Complex> merged;
  std::vector<bool> consumed(points.size(), false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (consumed[i]) continue;
    Complex sum = points[i].value;
    int count = 1;
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (consumed[j]) continue;
      if (std::abs(points[j].value - points[i].value) < tol) {
        consumed[j] = true;
        sum += points[j].value;
        ++count;
      }
    }
    merged.push_back(sum / static_cast<double>(count));
  }
  return merged;
}

RecoveredVector recover_eigenvector(const NEPProblem& problem, Complex lambda,
                                    const SolverConfig& config) {
  Eigen::MatrixXcd t = problem.evaluate(lambda);
  Eigenpair pair = smallest_eigenpair(t, config.shift);
  return RecoveredVector{pair.vector, (t * pair.vector).norm()};
}

SolverOutput run_pmcima(const NEPProblem& problem,
                        const std::vector<Disk>& covering,
                        const SolverConfig& config) {
  config.validate();
  if (covering.empty()) throw Error("run_pmcima: empty covering");

  const std::uint64_t solves_before = solve_counter();
  SolverOutput out;

  PortableRng rng(config.rng_seed);
  const Eigen::VectorXcd f = rng.unit_vector(problem.dim());

  double r0 = covering.front().radius;
  int levels = static_cast<int>(std::ceil(std::log2(r0 / config.tol_eps))) +
               config.extra_levels;
  levels = std::max(levels, 1);

  std::vector<Disk> active = covering;
  std::vector<Disk> final_survivors;
  for (int level = 1; level <= levels && !active.empty(); ++level) {
    auto outcomes = parallel_map(
        active,
        [&](const Disk& d) {
          return indicator(problem, d, f, config.n_quad_sim);
        },
        config.workers);

    std::vector<Disk> survivors;
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (!outcomes[i].ok()) {
        out.warnings.push_back("indicator failed, treating as empty: " +
                               disk_label(active[i]) + ": " +
                               outcomes[i].error);
        continue;
      }
      if (*outcomes[i].value > config.tol_ind) {
        survivors.push_back(active[i]);
      }
    }

    if (level == levels) {
      final_survivors = std::move(survivors);
      break;
    }
    std::vector<Disk> next;
    next.reserve(survivors.size() * 4);
    for (const Disk& s : survivors) {
      for (const Disk& child : subdivide_disk(s)) next.push_back(child);
    }
    active = std::move(next);
  }

  std::vector<CandidatePoint> candidates;
  candidates.reserve(final_survivors.size());
  for (const Disk& d : final_survivors) {
    candidates.push_back(CandidatePoint{d.center, d, levels});
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const CandidatePoint& a, const CandidatePoint& b) {
              if (a.value.real() != b.value.real()) {
                return a.value.real() < b.value.real();
              }
              return a.value.imag() < b.value.imag();
            });

  std::vector<Complex> merged = merge_candidates(candidates, config.merge_tol);

  auto recoveries = parallel_map(
      merged,
      [&](const Complex& lambda) {
        return recover_eigenvector(problem, lambda, config);
      },
      config.workers);

  for (std::size_t i = 0; i < merged.size(); ++i) {
    EigenResult r;
    r.value = merged[i];
    r.method = Method::SIM;
    if (recoveries[i].ok()) {
      r.vector = std::move(recoveries[i].value->vector);
      r.residual = recoveries[i].value->residual;
    } else {
      r.residual = std::numeric_limits<double>::infinity();
      char buf[64];
      std::snprintf(buf, sizeof(buf), "(%.12g, %.12g)", merged[i].real(),
                    merged[i].imag());
      out.warnings.push_back(std::string("eigenvector recovery failed at ") +
                             buf + ": " + recoveries[i].error);
    }
    out.eigenvalues.push_back(std::move(r));
  }

  out.solve_count = solve_counter() - solves_before;
  return out;
}

}  // namespace nepcim
