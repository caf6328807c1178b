#pragma once

#include <span>

#include "bumplab/step.hpp"
#include "bumplab/young.hpp"

namespace bumplab {

// Luxemburg norm  inf{ lambda > 0 : (1/total_mass) sum m_i A(v_i/lambda) <= 1 }
// over a set of measure total_mass whose nonzero |f| pieces are `cells`.
// Bisection on lambda, bracket seeded at max value and moved geometrically,
// terminating at relative bracket width 1e-10.  Returns 0 for the zero
// function.  Powers keep this same code path; the closed form lives in tests.
double luxemburg_norm(double total_mass, std::span<const WeightedCell> cells,
                      const YoungFunction& A);

double average(const StepFunction& f, Interval set);
double average(const StepFunction& f, const IntervalSet& set);

double orlicz_norm(const StepFunction& f, Interval set, const YoungFunction& A);
double orlicz_norm(const StepFunction& f, const IntervalSet& set, const YoungFunction& A);

// Plain L^p average  ( avg |f|^p )^{1/p}  (exact sum; the p = infinity of
// bisection-free evaluation used by separated bumps and test oracles).
double lp_average(const StepFunction& f, Interval set, double p);

struct HolderPair {
  double lhs;  // avg_E |f g|
  double rhs;  // 2 ||f||_{A,E} ||g||_{conj A,E}
};

HolderPair holder_product(const StepFunction& f, const StepFunction& g, Interval set,
                          const YoungFunction& A);

}  // namespace bumplab
