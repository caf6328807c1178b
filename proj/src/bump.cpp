#include "bumplab/bump.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bumplab/errors.hpp"
#include "bumplab/orlicz.hpp"
#include "bumplab/parallel.hpp"

namespace bumplab {

WeightPair WeightPair::make(const StepFunction& u, const StepFunction& sigma, Interval window,
                            double tau) {
  if (window.empty()) throw ParameterError("WeightPair: empty window");
  if (!(tau > 0.0)) throw ParameterError("WeightPair: floor must be positive");
  if (!u.nonnegative() || !sigma.nonnegative())
    throw DomainError("WeightPair: weights must be nonnegative");
  WeightPair p;
  p.window = window;
  p.tau = tau;
  p.u = sf_floor_at(u.restrict_to(window), window, tau);
  p.sigma = sf_floor_at(sigma.restrict_to(window), window, tau);
  return p;
}

ScanFamily breakpoint_family(const WeightPair& pair, int refinements) {
  if (refinements < 0 || refinements > 8)
    throw ParameterError("breakpoint_family: refinements in [0, 8]");
  std::vector<double> pts{pair.window.lo, pair.window.hi};
  auto add_breaks = [&](const StepFunction& f) {
    for (double b : f.breakpoints())
      if (b > pair.window.lo && b < pair.window.hi) pts.push_back(b);
  };
  add_breaks(pair.u);
  add_breaks(pair.sigma);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (int r = 0; r < refinements; ++r) {
    std::vector<double> finer;
    finer.reserve(pts.size() * 2);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      finer.push_back(pts[i]);
      finer.push_back(0.5 * (pts[i] + pts[i + 1]));
    }
    finer.push_back(pts.back());
    pts = std::move(finer);
  }
  if (pts.size() > 3000) throw ParameterError("breakpoint_family: too many endpoints");
  ScanFamily fam;
  fam.reserve(pts.size() * (pts.size() - 1) / 2);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) fam.push_back({pts[i], pts[j]});
  return fam;
}

ScanFamily grid_family(const DyadicGrid& grid) {
  if (grid.kind != DyadicGrid::Kind::Line)
    throw ParameterError("grid_family: line grids only");
  ScanFamily fam;
  fam.reserve(grid.cube_count());
  for (const auto& gen : grid.gens)
    for (const Cube& q : gen) fam.push_back(q.box);
  return fam;
}

namespace {

double pdual(double p) { return p / (p - 1.0); }

template <class Evaluate>
BumpReport scan_max(const ScanFamily& family, BumpKind kind, const Evaluate& value_on,
                    bool parallel) {
  std::vector<double> vals(family.size(), 0.0);
  auto body = [&](std::int64_t i) {
    const Interval& q = family[static_cast<std::size_t>(i)];
    vals[static_cast<std::size_t>(i)] = q.empty() ? 0.0 : value_on(q);
  };
  if (parallel)
    par::parallel_for(static_cast<std::int64_t>(family.size()), body);
  else
    par::serial_for(static_cast<std::int64_t>(family.size()), body);
  BumpReport rep;
  rep.kind = kind;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] > rep.value) {
      rep.value = vals[i];
      rep.extremal = family[i];
    }
  }
  return rep;
}

}  // namespace

static BumpReport bump_double_impl(const WeightPair& pair, const YoungFunction& A,
                                   const YoungFunction& B, double p, const ScanFamily& family,
                                   bool parallel) {
  if (!(p > 1.0)) throw ParameterError("bump_double: requires p > 1");
  StepFunction U = sf_pow(pair.u, 1.0 / p);
  StepFunction Sg = sf_pow(pair.sigma, 1.0 / pdual(p));
  auto value_on = [&](Interval q) {
    return orlicz_norm(U, q, A) * orlicz_norm(Sg, q, B);
  };
  BumpReport rep = scan_max(family, BumpKind::Double, value_on, parallel);
  rep.family_desc = "intervals:" + std::to_string(family.size());
  return rep;
}

BumpReport bump_double(const WeightPair& pair, const YoungFunction& A, const YoungFunction& B,
                       double p, const ScanFamily& family) {
  return bump_double_impl(pair, A, B, p, family, true);
}

BumpReport bump_double_serial(const WeightPair& pair, const YoungFunction& A,
                              const YoungFunction& B, double p, const ScanFamily& family) {
  return bump_double_impl(pair, A, B, p, family, false);
}

BumpReport bump_separated(const WeightPair& pair, const YoungFunction& A, double p,
                          const ScanFamily& family) {
  if (!(p > 1.0)) throw ParameterError("bump_separated: requires p > 1");
  StepFunction U = sf_pow(pair.u, 1.0 / p);
  double pp = pdual(p);
  auto value_on = [&](Interval q) {
    // || sigma^{1/p'} ||_{p',Q} = (avg_Q sigma)^{1/p'}
    double avg = pair.sigma.integral(q) / q.length();
    return orlicz_norm(U, q, A) * std::pow(avg, 1.0 / pp);
  };
  BumpReport rep = scan_max(family, BumpKind::SeparatedA, value_on, true);
  rep.family_desc = "intervals:" + std::to_string(family.size());
  return rep;
}

BumpReport bump_separated_dual(const WeightPair& pair, const YoungFunction& B, double p,
                               const ScanFamily& family) {
  WeightPair swapped = pair;
  std::swap(swapped.u, swapped.sigma);
  BumpReport rep = bump_separated(swapped, B, pdual(p), family);
  rep.kind = BumpKind::SeparatedB;
  return rep;
}

EquivalenceReport ball_dyadic_equivalence(const WeightPair& pair, const YoungFunction& A,
                                          double p, const std::vector<DyadicGrid>& grids,
                                          const ScanFamily& balls) {
  if (grids.empty()) throw ParameterError("ball_dyadic_equivalence: no grids");
  EquivalenceReport rep;

  double dy = 0.0;
  ScanFamily all = balls;
  for (const DyadicGrid& g : grids) {
    ScanFamily cubes = grid_family(g);
    BumpReport r = bump_separated(pair, A, p, cubes);
    dy = std::max(dy, r.value);
    all.insert(all.end(), cubes.begin(), cubes.end());
  }
  rep.dyadic_sup = dy;

  BumpReport ball = bump_separated(pair, A, p, all);
  rep.ball_sup = ball.value;

  double mcov = 0.0;
  for (const Interval& iv : balls) {
    if (iv.empty()) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const DyadicGrid& g : grids) {
      const Cube* q = g.smallest_cube_containing(iv);
      if (q) best = std::min(best, q->mass / iv.length());
    }
    if (!std::isfinite(best)) {
      rep.uncovered += 1;
      continue;
    }
    mcov = std::max(mcov, best);
  }
  rep.cover_measure_ratio = mcov;
  rep.comparability = std::pow(std::max(mcov, 1.0), 1.0 + (p - 1.0) / p);

  if (rep.dyadic_sup > 0.0 && rep.ball_sup > 0.0) {
    rep.ratio_ball_over_dyadic = rep.ball_sup / rep.dyadic_sup;
    rep.ratio_dyadic_over_ball = rep.dyadic_sup / rep.ball_sup;
    double slack = 1.0 + 1e-9;
    rep.within_band = rep.uncovered == 0 &&
                      rep.ratio_ball_over_dyadic <= rep.comparability * slack &&
                      rep.ratio_dyadic_over_ball <= slack;
  }
  return rep;
}

}  // namespace bumplab
