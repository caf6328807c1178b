#include "bumplab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bumplab/errors.hpp"
#include "bumplab/orlicz.hpp"
#include "bumplab/parallel.hpp"

namespace bumplab {

namespace {

void require_line_grid(const DyadicGrid& grid, const char* who) {
  if (grid.kind != DyadicGrid::Kind::Line)
    throw ParameterError(std::string(who) + ": line grids only");
}

void require_coverage(const StepFunction& f, const DyadicGrid& grid, const char* who) {
  Interval supp = f.support_box();
  if (supp.empty()) return;
  if (supp.lo < grid.window.lo || supp.hi > grid.window.hi)
    throw CoverageError(std::string(who) + ": grid window does not cover supp(f)");
}

std::string cube_name(const DyadicGrid& grid, CubeRef r) {
  const Cube& q = grid.cube(r.gen, r.idx);
  std::ostringstream os;
  os << "[" << q.box.lo << "," << q.box.hi << ") gen " << r.gen;
  return os.str();
}

int parent_index(const DyadicGrid& grid, const Cube& q) {
  const Cube* p = grid.parent_of(q);
  return p ? p->index_in_gen : -1;
}

// breakpoints of the output refinement: f's breakpoints + finest cube edges
std::vector<double> refinement_breaks(const StepFunction& f, const DyadicGrid& grid) {
  std::vector<double> bp;
  bp.reserve(grid.gens.back().size() + f.breakpoints().size() + 1);
  for (const Cube& q : grid.gens.back()) bp.push_back(q.box.lo);
  bp.push_back(grid.window.hi);
  for (double b : f.breakpoints())
    if (b > grid.window.lo && b < grid.window.hi) bp.push_back(b);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

}  // namespace

std::vector<std::vector<double>> cube_norms_serial(const StepFunction& f, const DyadicGrid& grid,
                                                   const YoungFunction& Phi) {
  require_line_grid(grid, "cube_norms");
  std::vector<std::vector<double>> norms(grid.generations());
  std::vector<WeightedCell> cells;
  for (int gi = 0; gi < grid.generations(); ++gi) {
    norms[gi].resize(grid.gens[gi].size());
    for (std::size_t i = 0; i < grid.gens[gi].size(); ++i) {
      const Cube& q = grid.gens[gi][i];
      cells.clear();
      f.abs_cells_on(q.box, cells);
      norms[gi][i] = luxemburg_norm(q.mass, cells, Phi);
    }
  }
  return norms;
}

std::vector<std::vector<double>> cube_norms(const StepFunction& f, const DyadicGrid& grid,
                                            const YoungFunction& Phi) {
  require_line_grid(grid, "cube_norms");
  std::vector<std::vector<double>> norms(grid.generations());
  for (int gi = 0; gi < grid.generations(); ++gi) {
    auto& row = norms[gi];
    row.resize(grid.gens[gi].size());
    const auto& gen = grid.gens[gi];
    par::parallel_for(static_cast<std::int64_t>(gen.size()), [&](std::int64_t i) {
      std::vector<WeightedCell> cells;
      const Cube& q = gen[static_cast<std::size_t>(i)];
      f.abs_cells_on(q.box, cells);
      row[static_cast<std::size_t>(i)] = luxemburg_norm(q.mass, cells, Phi);
    });
  }
  return norms;
}

namespace {

StepFunction maximal_from_norms(const StepFunction& f, const DyadicGrid& grid,
                                const std::vector<std::vector<double>>& norms) {
  std::vector<double> bp = refinement_breaks(f, grid);
  std::vector<double> vals(bp.size() - 1, 0.0);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    CubeRef at{grid.generations() - 1, grid.leaf_index(bp[i])};
    double m = 0.0;
    while (at.idx >= 0) {
      m = std::max(m, norms[at.gen][at.idx]);
      if (at.gen == 0) break;
      at = {at.gen - 1, parent_index(grid, grid.cube(at.gen, at.idx))};
    }
    vals[i] = m;
  }
  return StepFunction(std::move(bp), std::move(vals));
}

}  // namespace

StepFunction dyadic_maximal(const StepFunction& f, const DyadicGrid& grid,
                            const YoungFunction& Phi) {
  if (!f.nonnegative()) throw DomainError("dyadic_maximal: f must be nonnegative");
  require_coverage(f, grid, "dyadic_maximal");
  return maximal_from_norms(f, grid, cube_norms(f, grid, Phi));
}

StepFunction dyadic_maximal_serial(const StepFunction& f, const DyadicGrid& grid,
                                   const YoungFunction& Phi) {
  if (!f.nonnegative()) throw DomainError("dyadic_maximal: f must be nonnegative");
  require_coverage(f, grid, "dyadic_maximal");
  return maximal_from_norms(f, grid, cube_norms_serial(f, grid, Phi));
}

namespace {

// maximal cubes with norm > lambda, walking top-down
std::vector<CubeRef> select_stopping(const DyadicGrid& grid,
                                     const std::vector<std::vector<double>>& norms,
                                     double lambda) {
  std::vector<CubeRef> out, stack;
  for (int i = static_cast<int>(grid.gens[0].size()) - 1; i >= 0; --i) stack.push_back({0, i});
  while (!stack.empty()) {
    CubeRef at = stack.back();
    stack.pop_back();
    if (level_exceeds(norms[at.gen][at.idx], lambda)) {
      out.push_back(at);
      continue;
    }
    if (at.gen + 1 >= grid.generations()) continue;
    const Cube& q = grid.cube(at.gen, at.idx);
    int base_id = grid.gens[at.gen + 1].front().id;
    for (auto it = q.children.rbegin(); it != q.children.rend(); ++it)
      stack.push_back({at.gen + 1, *it - base_id});
  }
  std::sort(out.begin(), out.end(), [&](CubeRef a, CubeRef b) {
    return grid.cube(a.gen, a.idx).box.lo < grid.cube(b.gen, b.idx).box.lo;
  });
  return out;
}

double top_threshold(const DyadicGrid& grid, const std::vector<std::vector<double>>& norms) {
  double m = 0.0;
  for (std::size_t i = 0; i < grid.gens[0].size(); ++i) m = std::max(m, norms[0][i]);
  return m;
}

}  // namespace

StoppingCubes cz_cubes(const StepFunction& f, const DyadicGrid& grid, const YoungFunction& Phi,
                       double lambda) {
  if (!f.nonnegative()) throw DomainError("cz_cubes: f must be nonnegative");
  if (!(lambda > 0.0)) throw ParameterError("cz_cubes: lambda must be positive");
  require_coverage(f, grid, "cz_cubes");
  auto norms = cube_norms(f, grid, Phi);
  double threshold = top_threshold(grid, norms);
  if (level_exceeds(threshold, lambda))
    throw PreconditionError(
        "cz_cubes: lambda below the finite-measure threshold (top-cube norm exceeds it)");
  StoppingCubes out;
  out.lambda = lambda;
  out.cubes = select_stopping(grid, norms, lambda);
  out.upper_bound_constant = 1.0 / grid.constants.epsilon;
  for (CubeRef r : out.cubes)
    out.achieved_upper = std::max(out.achieved_upper, norms[r.gen][r.idx] / lambda);
  return out;
}

SparseFamily::SparseFamily(std::shared_ptr<const DyadicGrid> grid, std::vector<Member> members)
    : grid_(std::move(grid)), members_(std::move(members)) {
  if (!grid_) throw ParameterError("SparseFamily: null grid");
  check_invariants();
}

void SparseFamily::check_invariants() const {
  for (const Member& m : members_) {
    const Cube& q = grid_->cube(m.cube.gen, m.cube.idx);
    for (const Interval& iv : m.witness.parts())
      if (iv.lo < q.box.lo - 1e-12 || iv.hi > q.box.hi + 1e-12)
        throw CheckFailure("sparse family: witness escapes its cube", cube_name(*grid_, m.cube));
    double ew = m.witness.measure();
    if (q.mass > 2.0 * ew * (1.0 + 1e-12) + 1e-300)
      throw CheckFailure("sparse family: cube is not 2-sparse", cube_name(*grid_, m.cube));
  }
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (std::size_t j = i + 1; j < members_.size(); ++j)
      if (!sets_disjoint(members_[i].witness, members_[j].witness))
        throw CheckFailure("sparse family: witnesses overlap",
                           cube_name(*grid_, members_[i].cube) + " vs " +
                               cube_name(*grid_, members_[j].cube));
}

LevelFamilyResult sparse_from_levels(const StepFunction& f,
                                     std::shared_ptr<const DyadicGrid> grid,
                                     const YoungFunction& Phi, double a) {
  const DyadicGrid& g = *grid;
  require_line_grid(g, "sparse_from_levels");
  if (!f.nonnegative()) throw DomainError("sparse_from_levels: f must be nonnegative");
  require_coverage(f, g, "sparse_from_levels");
  double a_min = 2.0 / g.constants.epsilon;
  if (a < a_min * (1.0 - 1e-12))
    throw ParameterError("sparse_from_levels: requires a >= 2/epsilon");

  LevelFamilyResult res;
  auto norms = cube_norms(f, g, Phi);
  double threshold = top_threshold(g, norms);
  res.threshold = threshold;
  if (threshold == 0.0) {
    res.family = SparseFamily(grid, {});
    return res;
  }

  // smallest k with a^k admissible (comparator slack keeps levels that sit
  // exactly at the window average)
  int k_lo = static_cast<int>(std::floor(std::log(threshold) / std::log(a))) - 2;
  while (level_exceeds(threshold, std::pow(a, k_lo))) ++k_lo;
  while (!level_exceeds(threshold, std::pow(a, k_lo - 1)) && k_lo > -1000) --k_lo;

  std::vector<std::vector<CubeRef>> levels;
  for (int k = k_lo;; ++k) {
    std::vector<CubeRef> cubes = select_stopping(g, norms, std::pow(a, k));
    if (cubes.empty()) break;
    levels.push_back(std::move(cubes));
  }
  res.k_lo = k_lo;
  res.k_hi = k_lo + static_cast<int>(levels.size()) - 1;

  std::vector<SparseFamily::Member> members;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    IntervalSet omega_next;
    if (li + 1 < levels.size()) {
      std::vector<Interval> next;
      for (CubeRef r : levels[li + 1]) next.push_back(g.cube(r.gen, r.idx).box);
      omega_next = IntervalSet(std::move(next));
    }
    for (CubeRef r : levels[li]) {
      SparseFamily::Member m;
      m.cube = r;
      m.level = std::pow(a, k_lo + static_cast<int>(li));
      m.witness = set_difference(IntervalSet(g.cube(r.gen, r.idx).box), omega_next);
      members.push_back(std::move(m));
    }
  }
  res.family = SparseFamily(grid, std::move(members));
  return res;
}

StepFunction sparse_apply(const SparseFamily& S, const StepFunction& f) {
  const DyadicGrid& g = S.grid();
  if (!f.nonnegative()) throw DomainError("sparse_apply: f must be nonnegative");
  if (S.empty()) return {};
  std::vector<double> bp = refinement_breaks(f, g);
  std::vector<double> vals(bp.size() - 1, 0.0);
  for (const auto& m : S.members()) {
    const Cube& q = g.cube(m.cube.gen, m.cube.idx);
    double avg = f.integral(q.box) / q.mass;
    auto lo = std::lower_bound(bp.begin(), bp.end(), q.box.lo) - bp.begin();
    auto hi = std::lower_bound(bp.begin(), bp.end(), q.box.hi) - bp.begin();
    for (auto i = lo; i < hi; ++i) vals[static_cast<std::size_t>(i)] += avg;
  }
  return StepFunction(std::move(bp), std::move(vals));
}

CZDecomposition cz_decompose(const StepFunction& f, std::shared_ptr<const DyadicGrid> grid,
                             double lambda) {
  const DyadicGrid& g = *grid;
  require_line_grid(g, "cz_decompose");
  if (!f.nonnegative()) throw DomainError("cz_decompose: f must be nonnegative");
  if (!g.resolves(f))
    throw CoverageError("cz_decompose: finest generation does not resolve f's breakpoints");
  YoungFunction id = YoungFunction::scaled_power(1.0, 1.0);
  StoppingCubes sc = cz_cubes(f, g, id, lambda);

  CZDecomposition out;
  out.lambda = lambda;
  out.stopping_cubes = sc.cubes;
  out.good_bound_constant = sc.upper_bound_constant;

  StepFunction good = f;
  for (CubeRef r : sc.cubes) {
    const Cube& q = g.cube(r.gen, r.idx);
    CzPart part;
    part.cube = r;
    part.box = q.box;
    part.integral = f.integral(q.box);
    // mass is a power of two, so mean * mass reproduces the integral exactly
    part.mean = part.integral / q.mass;
    StepFunction restricted = f.restrict_to(q.box);
    StepFunction mean_piece = StepFunction::constant(q.box, part.mean);
    part.as_step = sf_sub(restricted, mean_piece);
    good = sf_add(sf_sub(good, restricted), mean_piece);
    out.bad.push_back(std::move(part));
  }
  out.good = std::move(good);

  double bound = out.good_bound_constant * lambda * (1.0 + 1e-9);
  double worst = out.good.max_abs();
  if (worst > bound) {
    std::ostringstream os;
    os << "max |g| = " << worst << " exceeds " << bound;
    throw CheckFailure("cz_decompose: good part exceeds its level bound", os.str());
  }
  return out;
}

StepFunction sparse_apply_to_part(const SparseFamily& S, const CzPart& part) {
  const DyadicGrid& g = S.grid();
  if (S.empty()) return {};
  std::vector<double> bp = refinement_breaks(part.as_step, g);
  std::vector<double> vals(bp.size() - 1, 0.0);
  double part_mass = g.cube(part.cube.gen, part.cube.idx).mass;
  for (const auto& m : S.members()) {
    const Cube& q = g.cube(m.cube.gen, m.cube.idx);
    double integral;
    if (q.box.contains(part.box)) {
      // whole-part integral of (f - mean): cancels exactly in double arithmetic
      integral = part.integral - part.mean * part_mass;
    } else {
      integral = part.as_step.integral(q.box);
    }
    if (integral == 0.0) continue;
    double avg = integral / q.mass;
    auto lo = std::lower_bound(bp.begin(), bp.end(), q.box.lo) - bp.begin();
    auto hi = std::lower_bound(bp.begin(), bp.end(), q.box.hi) - bp.begin();
    for (auto i = lo; i < hi; ++i) vals[static_cast<std::size_t>(i)] += avg;
  }
  return StepFunction(std::move(bp), std::move(vals));
}

DominationReport maximal_dominated_by_sparse(const StepFunction& f,
                                             std::shared_ptr<const DyadicGrid> grid, double a) {
  const DyadicGrid& g = *grid;
  YoungFunction id = YoungFunction::scaled_power(1.0, 1.0);
  DominationReport rep;
  LevelFamilyResult lv = sparse_from_levels(f, grid, id, a);
  rep.maximal = dyadic_maximal(f, g, id);
  rep.base_level = std::pow(a, lv.k_lo);
  rep.coarse_average = lv.threshold;
  StepFunction ts = sparse_apply(lv.family, f);
  rep.sparse_side = sf_scale(ts, a);

  if (f.is_zero() || lv.family.empty()) {
    rep.sparse_side = StepFunction{};
    return rep;
  }

  StepFunction diff = sf_sub(rep.maximal, rep.sparse_side);
  const auto& bp = diff.breakpoints();
  for (std::size_t i = 0; i < diff.cells(); ++i) {
    double x = bp[i];
    if (x < g.window.lo || x >= g.window.hi) continue;
    rep.cells_checked += 1;
    double lhs = rep.maximal.value_at(x);
    double rhs = rep.sparse_side.value_at(x);
    double slack = 1e-9 * std::max(1.0, lhs);
    bool above_base = level_exceeds(lhs, rep.base_level);
    if (!above_base) {
      // below every stopping level both sides see only the coarsest cube
      rep.cells_sub_threshold += 1;
      double coarse = a * rep.coarse_average;
      if (lhs > std::max(rhs, coarse) + slack) rep.violations += 1;
    } else if (lhs > rhs + slack) {
      rep.violations += 1;
    }
  }
  if (rep.violations > 0) {
    std::ostringstream os;
    os << rep.violations << " of " << rep.cells_checked << " cells";
    throw CheckFailure("maximal_dominated_by_sparse: pointwise domination failed", os.str());
  }
  return rep;
}

}  // namespace bumplab
