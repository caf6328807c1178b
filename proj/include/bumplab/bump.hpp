#pragma once

#include <string>
#include <vector>

#include "bumplab/space.hpp"
#include "bumplab/step.hpp"
#include "bumplab/young.hpp"

namespace bumplab {

// A weight pair on a working window, floored at tau > 0 so both weights are
// bounded away from zero there.
struct WeightPair {
  StepFunction u, sigma;
  Interval window;
  double tau = 1e-12;

  static WeightPair make(const StepFunction& u, const StepFunction& sigma, Interval window,
                         double tau = 1e-12);
};

enum class BumpKind { Double, SeparatedA, SeparatedB };

struct BumpReport {
  BumpKind kind = BumpKind::Double;
  double value = 0.0;
  bool divergent_flag = false;  // set by growing-family scans on a doubling trend
  Interval extremal;            // scan member achieving the value
  std::string family_desc;
};

using ScanFamily = std::vector<Interval>;

// All intervals with endpoints among the weights' breakpoints inside the
// window, after `refinements` rounds of halving each cell.
ScanFamily breakpoint_family(const WeightPair& pair, int refinements);
ScanFamily grid_family(const DyadicGrid& grid);

// sup over the family of ||u^{1/p}||_{A,Q} ||sigma^{1/p'}||_{B,Q}.
BumpReport bump_double(const WeightPair& pair, const YoungFunction& A, const YoungFunction& B,
                       double p, const ScanFamily& family);
BumpReport bump_double_serial(const WeightPair& pair, const YoungFunction& A,
                              const YoungFunction& B, double p, const ScanFamily& family);

// sup over the family of ||u^{1/p}||_{A,Q} ||sigma^{1/p'}||_{p',Q}  (the plain
// p'-average on sigma).
BumpReport bump_separated(const WeightPair& pair, const YoungFunction& A, double p,
                          const ScanFamily& family);
// Role-swapped form: sup ||u^{1/p}||_{p,Q} ||sigma^{1/p'}||_{B,Q}.
BumpReport bump_separated_dual(const WeightPair& pair, const YoungFunction& B, double p,
                               const ScanFamily& family);

struct EquivalenceReport {
  double ball_sup = 0.0;
  double dyadic_sup = 0.0;
  double ratio_ball_over_dyadic = 0.0;
  double ratio_dyadic_over_ball = 0.0;
  double cover_measure_ratio = 0.0;  // worst best-cover mu(Q)/mu(I)
  double comparability = 0.0;        // band constant implied by the cover ratio
  int uncovered = 0;                 // balls no grid cube contains
  bool within_band = false;
};

// Compares the separated bump over an interval family against its dyadic
// version over a shift family of grids.  Every grid cube joins the interval
// family, so the dyadic sup is never larger; the reverse direction is governed
// by the measured cover ratio through the convexity of A.
EquivalenceReport ball_dyadic_equivalence(const WeightPair& pair, const YoungFunction& A,
                                          double p, const std::vector<DyadicGrid>& grids,
                                          const ScanFamily& balls);

}  // namespace bumplab
