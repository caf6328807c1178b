#include "bumplab/counterexample.hpp"

#include <algorithm>
#include <cmath>

#include "bumplab/errors.hpp"
#include "bumplab/orlicz.hpp"

namespace bumplab {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

double log_ept(double t) { return std::log(kE + t); }

double block_K(int n) { return static_cast<double>(n) * n * std::pow(log_ept(n), -3.0); }

StepFunction block_u_local(const BlockWeights::Block& b) {
  return StepFunction({static_cast<double>(b.n - 1), static_cast<double>(b.n)}, {b.K});
}

StepFunction block_sigma_local() { return StepFunction({0.0, 1.0}, {1.0}); }

// within-block scan endpoints: support corners plus two halving rounds
std::vector<double> block_endpoints(int n) {
  std::vector<double> pts{0.0, 1.0, static_cast<double>(n - 1), static_cast<double>(n)};
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (int r = 0; r < 2; ++r) {
    std::vector<double> finer;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      finer.push_back(pts[i]);
      finer.push_back(0.5 * (pts[i] + pts[i + 1]));
    }
    finer.push_back(pts.back());
    pts = std::move(finer);
  }
  return pts;
}

}  // namespace

BlockWeights BlockWeights::build(int n_max) {
  if (n_max < 2) throw ParameterError("BlockWeights: n_max >= 2");
  BlockWeights ce;
  ce.n_max = n_max;
  ce.blocks.reserve(static_cast<std::size_t>(n_max - 1));
  for (int n = 2; n <= n_max; ++n) {
    // separation between consecutive blocks, checked in log space:
    // e^{n+1} - e^n - n > 0  <=>  n + log(e - 1) > log(n)
    if (!(n + std::log(kE - 1.0) > std::log(static_cast<double>(n))))
      throw CheckFailure("BlockWeights: blocks would overlap", "n = " + std::to_string(n));
    ce.blocks.push_back({n, block_K(n)});
  }
  return ce;
}

YoungFunction block_phi() { return YoungFunction::power_log(1.0, 2.0); }

std::vector<SeriesPoint> double_scan(const BlockWeights& ce, const std::vector<int>& ns) {
  YoungFunction phi = block_phi();
  std::vector<SeriesPoint> out;
  for (int n : ns) {
    if (n < 2 || n > ce.n_max) throw ParameterError("double_scan: block index out of range");
    const auto& b = ce.block(n);
    Interval Qn{0.0, static_cast<double>(n)};
    StepFunction u = block_u_local(b);
    StepFunction s = block_sigma_local();
    SeriesPoint pt;
    pt.n = n;
    pt.value = orlicz_norm(u, Qn, phi) * orlicz_norm(s, Qn, phi);
    pt.reference = log_ept(n);
    out.push_back(pt);
  }
  return out;
}

double double_product_global(int n) {
  if (n < 2 || n > 700) throw ParameterError("double_product_global: n in [2, 700]");
  YoungFunction phi = block_phi();
  double E = std::exp(static_cast<double>(n));
  StepFunction u({E + (n - 1), E + n}, {block_K(n)});
  StepFunction s({E, E + 1.0}, {1.0});
  Interval Qn{E, E + n};
  return orlicz_norm(u, Qn, phi) * orlicz_norm(s, Qn, phi);
}

IntervalRegime classify_interval(const BlockWeights& ce, int block_lo, double lo_local,
                                 int block_hi, double hi_local) {
  if (block_lo < 2 || block_hi > ce.n_max || block_hi < block_lo)
    throw ParameterError("classify_interval: bad block range");
  if (block_hi > block_lo) return IntervalRegime::LongRange;
  int n = block_lo;
  bool touches_u = hi_local > n - 1 && lo_local < n;
  bool touches_sigma = lo_local < 1.0 && hi_local > 0.0;
  if (touches_u && touches_sigma) return IntervalRegime::WithinBlock;
  return IntervalRegime::SingleWeight;
}

SeparatedScan separated_scan(const BlockWeights& ce, SeparatedDirection dir,
                             const std::vector<double>& long_lengths) {
  YoungFunction phi = block_phi();
  SeparatedScan scan;
  scan.direction = dir;

  auto member_value = [&](const StepFunction& u, const StepFunction& s, Interval q) {
    if (dir == SeparatedDirection::BumpOnU)
      return orlicz_norm(u, q, phi) * (s.integral(q) / q.length());
    return (u.integral(q) / q.length()) * orlicz_norm(s, q, phi);
  };

  // regime (i): within-block intervals, breakpoint-aligned with refinements
  for (const auto& b : ce.blocks) {
    StepFunction u = block_u_local(b);
    StepFunction s = block_sigma_local();
    std::vector<double> pts = block_endpoints(b.n);
    SeriesPoint pt;
    pt.n = b.n;
    pt.reference = 1.0 / log_ept(b.n);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        Interval q{pts[i], pts[j]};
        IntervalRegime regime = classify_interval(ce, b.n, q.lo, b.n, q.hi);
        if (regime == IntervalRegime::LongRange) scan.regimes_exclusive = false;
        double v = member_value(u, s, q);
        if (regime == IntervalRegime::SingleWeight) {
          // one support only: the product vanishes identically
          if (v == 0.0)
            scan.single_weight_checked += 1;
          else
            scan.regimes_exclusive = false;
        }
        pt.value = std::max(pt.value, v);
      }
    }
    scan.per_block.push_back(pt);
  }

  // regime (iii): long intervals anchored at the first block, exact block sums
  double E2 = std::exp(2.0);
  for (double N : long_lengths) {
    if (!(N > 0.0)) throw ParameterError("separated_scan: long lengths must be positive");
    LongIntervalPoint lp;
    lp.length = N;
    std::vector<WeightedCell> u_cells, sigma_cells;
    double sigma_mass = 0.0, u_weighted = 0.0;
    for (const auto& b : ce.blocks) {
      if (static_cast<double>(b.n) > std::log(E2 + N)) break;
      double off = std::exp(static_cast<double>(b.n));
      double iu = std::max(0.0, std::min(off + b.n, E2 + N) - std::max(off + (b.n - 1), E2));
      double is = std::max(0.0, std::min(off + 1.0, E2 + N) - std::max(off, E2));
      if (iu > 0.0) {
        u_cells.push_back({iu, b.K});
        u_weighted += iu * b.K;
        lp.blocks_covered += 1;
      }
      if (is > 0.0) {
        sigma_cells.push_back({is, 1.0});
        sigma_mass += is;
      }
    }
    if (dir == SeparatedDirection::BumpOnU) {
      lp.bump_norm = luxemburg_norm(N, u_cells, phi);
      lp.plain_avg = sigma_mass / N;
    } else {
      lp.bump_norm = luxemburg_norm(N, sigma_cells, phi);
      lp.plain_avg = u_weighted / N;
    }
    lp.product = lp.bump_norm * lp.plain_avg;
    lp.bump_envelope = std::pow(std::log(N), 2.5) / std::sqrt(N);
    lp.plain_envelope = std::log(N) / N;
    scan.long_scan.push_back(lp);
  }

  // cumulative sup over everything seen up to block n
  double running = 0.0;
  for (const SeriesPoint& pt : scan.per_block) {
    running = std::max(running, pt.value);
    for (const LongIntervalPoint& lp : scan.long_scan) {
      int max_block = static_cast<int>(std::floor(std::log(E2 + lp.length)));
      if (max_block <= pt.n) running = std::max(running, lp.product);
    }
    SeriesPoint rp;
    rp.n = pt.n;
    rp.value = running;
    rp.reference = pt.reference;
    scan.running_sup.push_back(rp);
  }
  return scan;
}

}  // namespace bumplab
