// Timings of the OpenMP kernels against their serial reference
// implementations: bump scans over interval families, per-cube norms for the
// maximal operator, and the principal-value transform.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "bumplab/bump.hpp"
#include "bumplab/hilbert.hpp"
#include "bumplab/parallel.hpp"
#include "bumplab/rng.hpp"
#include "bumplab/sparse.hpp"

using namespace bumplab;

namespace {

double time_of(const char* name, double serial_s, double parallel_s) {
  std::printf("%-28s serial %8.3f ms   openmp %8.3f ms   speedup %.2fx\n", name,
              serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s);
  return serial_s / parallel_s;
}

template <class F>
double timed(F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

StepFunction random_weight(Rng& rng, int cells) {
  std::vector<double> bp(static_cast<std::size_t>(cells) + 1), vals(cells);
  for (int i = 0; i <= cells; ++i) bp[static_cast<std::size_t>(i)] = static_cast<double>(i) / cells;
  double g = 0.0;
  for (int i = 0; i < cells; ++i) {
    g += rng.uniform(-0.5, 0.5);
    vals[static_cast<std::size_t>(i)] = std::exp(g);
  }
  return StepFunction(std::move(bp), std::move(vals));
}

}  // namespace

int main() {
  std::printf("threads available: %d (openmp %s)\n\n", par::max_threads(),
              par::openmp_enabled() ? "on" : "off");
  Rng rng(1);

  {
    StepFunction u = random_weight(rng, 96);
    StepFunction s = random_weight(rng, 96);
    WeightPair pair = WeightPair::make(u, s, {0.0, 1.0});
    YoungFunction A = YoungFunction::log_bump(2.0, 1.0);
    ScanFamily fam = breakpoint_family(pair, 2);
    volatile double sink = 0.0;
    double ts = timed([&] { sink = bump_double_serial(pair, A, A, 2.0, fam).value; });
    double tp = timed([&] { sink = bump_double(pair, A, A, 2.0, fam).value; });
    (void)sink;
    std::printf("bump scan over %zu intervals\n", fam.size());
    time_of("  bump_double", ts, tp);
  }

  {
    DyadicGrid grid = line_grid(0.0, -11, 0, {0.0, 1.0});
    Rng r2(2);
    StepFunction f = random_weight(r2, 2048);
    YoungFunction phi = YoungFunction::log_bump(2.0, 1.0);
    volatile double sink = 0.0;
    double ts = timed([&] { sink = cube_norms_serial(f, grid, phi)[0][0]; });
    double tp = timed([&] { sink = cube_norms(f, grid, phi)[0][0]; });
    (void)sink;
    std::printf("\nper-cube norms on %zu cubes\n", grid.cube_count());
    time_of("  cube_norms", ts, tp);
  }

  {
    Rng r3(3);
    StepFunction f = random_weight(r3, 512);
    volatile double sink = 0.0;
    double ts = timed([&] { sink = hilbert_apply_serial(f, {-1.0, 2.0}, -12).max_abs(); });
    double tp = timed([&] { sink = hilbert_apply(f, {-1.0, 2.0}, -12).max_abs(); });
    (void)sink;
    std::printf("\nprincipal-value transform, 512 input cells, 12288 output cells\n");
    time_of("  hilbert_apply", ts, tp);
  }
  return 0;
}
