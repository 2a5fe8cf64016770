// Microbenchmarks for the contour kernels and the worker pool. Run with
// --benchmark_filter=... to pick a subset.
#include <benchmark/benchmark.h>

#include <complex>
#include <cstdint>
#include <vector>

#include "nepcim/beyn.hpp"
#include "nepcim/contour.hpp"
#include "nepcim/parallel.hpp"
#include "nepcim/problems.hpp"
#include "nepcim/types.hpp"

namespace {

using nepcim::Complex;
using nepcim::Disk;

// One indicator evaluation on the 8x8 quadratic problem: the unit of work
// the subdivision method issues per disk.
void bm_indicator_appendix(benchmark::State& state) {
  nepcim::PolynomialNEP qep = nepcim::appendix_qep();
  nepcim::PortableRng rng(1);
  Eigen::VectorXcd f = rng.unit_vector(qep.dim());
  Disk d{Complex(0.0, 0.0), 3.0};
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nepcim::indicator(qep, d, f, n));
  }
  state.SetItemsProcessed(state.iterations() * n);
}

// Moment assembly on a dense 100x100 quadratic: the dominant cost of the
// moment method. One LU factorization per node.
void bm_beyn_moments(benchmark::State& state) {
  nepcim::PolynomialNEP qep = nepcim::random_qep(100, 7);
  nepcim::PortableRng rng(1);
  Eigen::MatrixXcd probes = rng.probe_matrix(qep.dim(), 20);
  Disk d{Complex(0.0, 0.0), 0.5};
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nepcim::beyn_moments(qep, d, probes, n));
  }
  state.SetItemsProcessed(state.iterations() * n);
}

// Disk sweep through the pool: 64 indicator tasks on an 8x8 problem, split
// across a varying worker count. Single-core hosts show the thread overhead,
// multi-core hosts the scaling.
void bm_parallel_indicator_sweep(benchmark::State& state) {
  nepcim::PolynomialNEP qep = nepcim::appendix_qep();
  nepcim::PortableRng rng(1);
  Eigen::VectorXcd f = rng.unit_vector(qep.dim());
  std::vector<Disk> disks;
  for (int i = 0; i < 64; ++i) {
    double x = -3.0 + 6.0 * (i % 8) / 7.0;
    double y = -3.0 + 6.0 * (i / 8) / 7.0;
    disks.push_back(Disk{Complex(x, y), 0.6});
  }
  int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto out = nepcim::parallel_map(
        disks, [&](const Disk& d) { return nepcim::indicator(qep, d, f, 16); },
        workers);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(disks.size()));
}

}  // namespace

BENCHMARK(bm_indicator_appendix)->Arg(16)->Arg(32);
BENCHMARK(bm_beyn_moments)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_parallel_indicator_sweep)
    ->Arg(1)
    ->Arg(2)
    ->Arg(4)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
