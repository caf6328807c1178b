#include "bumplab/orlicz.hpp"

#include <algorithm>
#include <cmath>

#include "bumplab/errors.hpp"

namespace bumplab {

namespace {

double mean_of_A(double total_mass, std::span<const WeightedCell> cells,
                 const YoungFunction& A, double lambda) {
  double s = 0.0;
  for (const WeightedCell& c : cells) s += c.mass * A.eval(c.value / lambda);
  return s / total_mass;
}

}  // namespace

double luxemburg_norm(double total_mass, std::span<const WeightedCell> cells,
                      const YoungFunction& A) {
  if (!(total_mass > 0.0)) throw DegenerateSetError("luxemburg_norm: set has zero measure");
  double vmax = 0.0;
  for (const WeightedCell& c : cells) {
    if (!std::isfinite(c.value) || !std::isfinite(c.mass))
      throw DomainError("luxemburg_norm: non-finite cell");
    vmax = std::max(vmax, c.value);
  }
  if (vmax == 0.0) return 0.0;

  // bracket [lo, hi] with mean(lo) > 1 >= mean(hi)
  double hi = vmax;
  int guard = 0;
  while (mean_of_A(total_mass, cells, A, hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 1000 || !std::isfinite(hi))
      throw ConvergenceError("luxemburg_norm: upper bracket expansion failed");
  }
  double lo = 0.5 * hi;
  guard = 0;
  while (mean_of_A(total_mass, cells, A, lo) <= 1.0) {
    hi = lo;
    lo *= 0.5;
    if (++guard > 1000) return hi;  // function vanishes too fast to matter
  }
  while ((hi - lo) > 1e-10 * hi) {
    double mid = 0.5 * (lo + hi);
    (mean_of_A(total_mass, cells, A, mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double average(const StepFunction& f, Interval set) {
  double m = set.length();
  if (!(m > 0.0)) throw DegenerateSetError("average: set has zero measure");
  return f.integral(set) / m;
}

double average(const StepFunction& f, const IntervalSet& set) {
  double m = set.measure();
  if (!(m > 0.0)) throw DegenerateSetError("average: set has zero measure");
  return f.integral(set) / m;
}

double orlicz_norm(const StepFunction& f, Interval set, const YoungFunction& A) {
  double m = set.length();
  if (!(m > 0.0)) throw DegenerateSetError("orlicz_norm: set has zero measure");
  std::vector<WeightedCell> cells;
  f.abs_cells_on(set, cells);
  return luxemburg_norm(m, cells, A);
}

double orlicz_norm(const StepFunction& f, const IntervalSet& set, const YoungFunction& A) {
  double m = set.measure();
  if (!(m > 0.0)) throw DegenerateSetError("orlicz_norm: set has zero measure");
  std::vector<WeightedCell> cells;
  f.abs_cells_on(set, cells);
  return luxemburg_norm(m, cells, A);
}

double lp_average(const StepFunction& f, Interval set, double p) {
  double m = set.length();
  if (!(m > 0.0)) throw DegenerateSetError("lp_average: set has zero measure");
  if (!(p >= 1.0)) throw DomainError("lp_average: requires p >= 1");
  std::vector<WeightedCell> cells;
  f.abs_cells_on(set, cells);
  double s = 0.0;
  for (const WeightedCell& c : cells) s += c.mass * std::pow(c.value, p);
  return std::pow(s / m, 1.0 / p);
}

HolderPair holder_product(const StepFunction& f, const StepFunction& g, Interval set,
                          const YoungFunction& A) {
  HolderPair out;
  StepFunction prod = sf_mul(f, g);
  double m = set.length();
  if (!(m > 0.0)) throw DegenerateSetError("holder_product: set has zero measure");
  std::vector<WeightedCell> cells;
  prod.abs_cells_on(set, cells);
  double s = 0.0;
  for (const WeightedCell& c : cells) s += c.mass * c.value;
  out.lhs = s / m;
  YoungFunction conj = YoungFunction::conjugate_of(A);
  out.rhs = 2.0 * orlicz_norm(f, set, A) * orlicz_norm(g, set, conj);
  return out;
}

}  // namespace bumplab
