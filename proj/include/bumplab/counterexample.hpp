#pragma once

#include <vector>

#include "bumplab/step.hpp"
#include "bumplab/young.hpp"

namespace bumplab {

// Block-weight pair on the line: block n carries u = K_n on a unit interval at
// local offset n-1 and sigma = 1 on local (0,1), with K_n = n^2 log(e+n)^{-3};
// block n lives at global offset e^n, far beyond the previous block.  Offsets
// are kept symbolic (block index + local coordinates) so arithmetic stays
// exact at any n; a direct global-float build is available for small n as a
// cross-check.
struct BlockWeights {
  struct Block {
    int n;
    double K;
  };
  int n_max = 0;
  std::vector<Block> blocks;  // n = 2..n_max

  static BlockWeights build(int n_max);
  const Block& block(int n) const { return blocks[static_cast<std::size_t>(n - 2)]; }
};

// The rescaled norm function used throughout: Phi(t) = t log(e+t)^2 (p = 2).
YoungFunction block_phi();

struct SeriesPoint {
  int n = 0;
  double value = 0.0;
  double reference = 0.0;  // log(e+n) for double scans, its reciprocal for separated
};

// Double-bump product ||u||_{Phi,Q_n} ||sigma||_{Phi,Q_n} on the block window
// Q_n, local coordinates.
std::vector<SeriesPoint> double_scan(const BlockWeights& ce, const std::vector<int>& ns);

// Same quantity from a literal global-coordinate build (offsets e^n as
// doubles); usable up to n ~ 30 before unit intervals lose resolution.
double double_product_global(int n);

enum class SeparatedDirection { BumpOnU, BumpOnSigma };

enum class IntervalRegime { WithinBlock, SingleWeight, LongRange };

struct LongIntervalPoint {
  double length = 0.0;
  double bump_norm = 0.0;       // Phi-norm of the bumped weight on Q
  double plain_avg = 0.0;       // plain average of the other weight on Q
  double product = 0.0;
  double bump_envelope = 0.0;   // log(N)^{5/2} / sqrt(N)
  double plain_envelope = 0.0;  // log(N) / N
  int blocks_covered = 0;
};

struct SeparatedScan {
  SeparatedDirection direction = SeparatedDirection::BumpOnU;
  std::vector<SeriesPoint> per_block;    // within-block sup for each n
  std::vector<SeriesPoint> running_sup;  // cumulative sup over all regimes up to n
  std::vector<LongIntervalPoint> long_scan;
  int single_weight_checked = 0;  // regime representatives with exact-zero product
  bool regimes_exclusive = true;  // every scanned interval fell in exactly one regime
};

// Scans the three interval regimes: within one block (breakpoint-aligned
// family with two refinement rounds), intervals meeting only one weight's
// support (exact zero product), and long intervals spanning several blocks
// (evaluated with exact block sums in shifted coordinates).
SeparatedScan separated_scan(const BlockWeights& ce, SeparatedDirection dir,
                             const std::vector<double>& long_lengths);

IntervalRegime classify_interval(const BlockWeights& ce, int block_lo, double lo_local,
                                 int block_hi, double hi_local);

}  // namespace bumplab
