#pragma once

#include "bumplab/step.hpp"

namespace bumplab {

// Principal-value convolution with the kernel 1/(x - y), evaluated as exact
// cell averages: for an input cell [a,b) of height v and an output cell [c,d),
// the contribution is v/(d-c) * [F(d-a) - F(c-a) - F(d-b) + F(c-b)] with
// F(t) = t log|t| - t, which integrates the kernel through the singularity.
// The output is a step function on dyadic cells of the window; comparisons
// against pointwise formulas are only meaningful one cell away from the input
// breakpoints (the principal-value collar).
StepFunction hilbert_apply(const StepFunction& f, Interval window, int level);
StepFunction hilbert_apply_serial(const StepFunction& f, Interval window, int level);

}  // namespace bumplab
