#include "bumplab/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bumplab/errors.hpp"
#include "bumplab/parallel.hpp"
#include "bumplab/rng.hpp"

namespace bumplab {

namespace {

std::string cube_tag(const Cube& q) {
  std::ostringstream os;
  os << "cube(gen=" << q.gen << ", idx=" << q.index_in_gen << ")";
  return os.str();
}

}  // namespace

FiniteSpace FiniteSpace::from_table(std::vector<double> dist_row_major,
                                    std::vector<double> mass) {
  FiniteSpace sp;
  const int n = static_cast<int>(mass.size());
  if (n <= 0) throw ParameterError("FiniteSpace: needs at least one point");
  if (dist_row_major.size() != static_cast<std::size_t>(n) * n)
    throw ParameterError("FiniteSpace: distance table size mismatch");
  sp.n_ = n;
  sp.dist_ = std::move(dist_row_major);
  sp.mass_ = std::move(mass);

  double diam = 0.0, min_pos = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (!(sp.mass_[i] > 0.0) || !std::isfinite(sp.mass_[i]))
      throw ParameterError("FiniteSpace: masses must be positive and finite");
    sp.total_mass_ += sp.mass_[i];
    for (int j = 0; j < n; ++j) {
      double d = sp.dist(i, j);
      if (!std::isfinite(d) || d < 0.0) throw ParameterError("FiniteSpace: bad distance");
      if (d != sp.dist(j, i)) throw ParameterError("FiniteSpace: distance table not symmetric");
      if (i == j && d != 0.0) throw ParameterError("FiniteSpace: nonzero diagonal");
      if (i != j && !(d > 0.0))
        throw ParameterError("FiniteSpace: off-diagonal distances must be positive");
      if (i != j) {
        diam = std::max(diam, d);
        min_pos = std::min(min_pos, d);
      }
    }
  }
  sp.diameter_ = diam;
  sp.min_dist_ = n > 1 ? min_pos : 0.0;

  // quasi-triangle constant by exhaustive triple scan (y = x or y = z included,
  // which pins K >= 1)
  std::vector<double> row_max(n, 1.0);
  par::parallel_for(n, [&](std::int64_t xi) {
    int x = static_cast<int>(xi);
    double worst = 1.0;
    for (int z = 0; z < n; ++z) {
      double dxz = sp.dist(x, z);
      if (dxz == 0.0) continue;
      for (int y = 0; y < n; ++y) {
        double denom = sp.dist(x, y) + sp.dist(y, z);
        if (denom > 0.0) worst = std::max(worst, dxz / denom);
      }
    }
    row_max[x] = worst;
  });
  sp.K_ = *std::max_element(row_max.begin(), row_max.end());

  // doubling constant: sweep radii just above every half-distance and distance
  std::vector<double> row_doubling(n, 1.0);
  par::parallel_for(n, [&](std::int64_t xi) {
    int x = static_cast<int>(xi);
    std::vector<std::pair<double, double>> by_dist(n);
    for (int j = 0; j < n; ++j) by_dist[j] = {sp.dist(x, j), sp.mass_[j]};
    std::sort(by_dist.begin(), by_dist.end());
    std::vector<double> prefix(n + 1, 0.0);
    for (int j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + by_dist[j].second;
    auto mass_up_to = [&](double r) {  // mass of closed ball {d <= r}
      int lo = 0, hi = n;
      while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (by_dist[mid].first <= r)
          lo = mid + 1;
        else
          hi = mid;
      }
      return prefix[lo];
    };
    double worst = 1.0;
    for (int j = 0; j < n; ++j) {
      for (double r : {by_dist[j].first, 0.5 * by_dist[j].first}) {
        if (!(r > 0.0) || r > sp.diameter_) continue;
        double inner = mass_up_to(r);
        double outer = mass_up_to(2.0 * r);
        if (inner > 0.0) worst = std::max(worst, outer / inner);
      }
    }
    row_doubling[x] = worst;
  });
  sp.doubling_ = *std::max_element(row_doubling.begin(), row_doubling.end());
  return sp;
}

double FiniteSpace::ball_mass(int center, double r) const {
  double m = 0.0;
  for (int j = 0; j < n_; ++j)
    if (dist(center, j) < r) m += mass_[j];
  return m;
}

std::vector<int> FiniteSpace::ball_points(int center, double r) const {
  std::vector<int> out;
  for (int j = 0; j < n_; ++j)
    if (dist(center, j) < r) out.push_back(j);
  return out;
}

FiniteSpace make_circle_space(int n) {
  if (n < 1) throw ParameterError("make_circle_space: n >= 1");
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  double step = 2.0 * std::numbers::pi / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = std::abs(i - j);
      k = std::min(k, n - k);
      dist[static_cast<std::size_t>(i) * n + j] = k * step;
    }
  return FiniteSpace::from_table(std::move(dist), std::vector<double>(n, 1.0));
}

FiniteSpace make_random_planar_space(int n, std::uint64_t seed) {
  if (n < 1) throw ParameterError("make_random_planar_space: n >= 1");
  Rng rng(Rng::mix(seed, 0x9ad7));
  std::vector<double> px(n), py(n), mass(n);
  for (int i = 0; i < n; ++i) {
    px[i] = rng.next_double();
    py[i] = rng.next_double();
    mass[i] = rng.uniform(0.5, 1.5);
  }
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      dist[static_cast<std::size_t>(i) * n + j] =
          std::max(std::abs(px[i] - px[j]), std::abs(py[i] - py[j]));
  return FiniteSpace::from_table(std::move(dist), std::move(mass));
}

std::size_t DyadicGrid::cube_count() const {
  std::size_t c = 0;
  for (const auto& g : gens) c += g.size();
  return c;
}

const Cube* DyadicGrid::parent_of(const Cube& q) const {
  if (q.gen == 0 || q.parent < 0) return nullptr;
  const auto& up = gens[q.gen - 1];
  std::size_t idx = static_cast<std::size_t>(q.parent - up.front().id);
  if (idx >= up.size() || up[idx].id != q.parent) {
    for (const Cube& c : up)  // fallback for externally loaded grids
      if (c.id == q.parent) return &c;
    return nullptr;
  }
  return &up[idx];
}

double DyadicGrid::mu_total() const {
  if (kind == Kind::Line) return window.length();
  return space->total_mass();
}

int DyadicGrid::leaf_index(double x) const {
  const auto& leaves = gens.back();
  int lo = 0, hi = static_cast<int>(leaves.size());
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (leaves[mid].box.hi <= x)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo >= static_cast<int>(leaves.size()) || !leaves[lo].box.contains(x)) return -1;
  return lo;
}

const Cube* DyadicGrid::smallest_cube_containing(Interval iv) const {
  for (int g = generations() - 1; g >= 0; --g) {
    const auto& gen = gens[g];
    int lo = 0, hi = static_cast<int>(gen.size());
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (gen[mid].box.hi <= iv.lo)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < static_cast<int>(gen.size()) && gen[lo].box.contains(iv)) return &gen[lo];
  }
  return nullptr;
}

bool DyadicGrid::resolves(const StepFunction& f) const {
  if (kind != Kind::Line || f.is_zero()) return true;
  for (double b : f.breakpoints()) {
    if (b <= window.lo || b >= window.hi) continue;
    int leaf = leaf_index(b);
    if (leaf < 0) return false;
    if (gens.back()[leaf].box.lo != b) return false;
  }
  return true;
}

DyadicGrid line_grid(double shift, int level_min, int level_max, Interval window) {
  if (level_min > level_max) throw ParameterError("line_grid: level_min > level_max");
  if (window.empty()) throw ParameterError("line_grid: empty window");
  if (level_max - level_min > 48) throw ParameterError("line_grid: too many generations");

  DyadicGrid g;
  g.kind = DyadicGrid::Kind::Line;
  g.shift = shift;
  g.level_fine = level_min;
  g.level_coarse = level_max;

  // effective window: union of the coarsest-level cubes meeting the request
  double coarse_len = std::ldexp(1.0, level_max);
  auto lattice_floor = [&](double x, double len) {
    return static_cast<std::int64_t>(std::floor((x - shift) / len));
  };
  std::int64_t m_lo = lattice_floor(window.lo, coarse_len);
  std::int64_t m_hi = lattice_floor(window.hi, coarse_len);
  if (shift + static_cast<double>(m_hi) * coarse_len >= window.hi) m_hi -= 1;  // exact right edge
  if (m_hi < m_lo) m_hi = m_lo;
  if ((m_hi - m_lo + 1) * (std::int64_t{1} << (level_max - level_min)) > 4'000'000)
    throw ParameterError("line_grid: window/levels would create too many cubes");

  g.window = {shift + std::ldexp(static_cast<double>(m_lo), level_max),
              shift + std::ldexp(static_cast<double>(m_hi + 1), level_max)};

  int id = 0;
  for (int j = level_max; j >= level_min; --j) {
    int gi = level_max - j;
    std::int64_t first = m_lo << gi;
    std::int64_t last = ((m_hi + 1) << gi) - 1;
    std::vector<Cube> gen;
    gen.reserve(static_cast<std::size_t>(last - first + 1));
    for (std::int64_t m = first; m <= last; ++m) {
      Cube q;
      q.id = id++;
      q.gen = gi;
      q.index_in_gen = static_cast<int>(m - first);
      q.lattice = m;
      q.box = {shift + std::ldexp(static_cast<double>(m), j),
               shift + std::ldexp(static_cast<double>(m + 1), j)};
      q.mass = std::ldexp(1.0, j);
      q.center = shift + std::ldexp(static_cast<double>(2 * m + 1), j - 1);
      gen.push_back(std::move(q));
    }
    g.gens.push_back(std::move(gen));
    g.scales.push_back(std::ldexp(1.0, j - 1));  // half side length
  }

  // parent/child links by lattice arithmetic
  for (int gi = 1; gi < g.generations(); ++gi) {
    std::int64_t parent_first = g.gens[gi - 1].front().lattice;
    for (Cube& q : g.gens[gi]) {
      std::int64_t pm = q.lattice >> 1;
      Cube& parent = g.gens[gi - 1][static_cast<std::size_t>(pm - parent_first)];
      q.parent = parent.id;
      parent.children.push_back(q.id);
    }
  }

  g.constants = {0.5, 0.5, 1.0, 1.0};
  return g;
}

std::vector<DyadicGrid> line_shift_family(int level_min, int level_max, Interval window) {
  std::vector<DyadicGrid> out;
  for (double s : {0.0, 1.0 / 3.0, 2.0 / 3.0})
    out.push_back(line_grid(s, level_min, level_max, window));
  return out;
}

double default_finite_eta(const FiniteSpace& space) {
  double K = space.quasi_triangle_K();
  return 1.0 / (12.0 * K * K * K);
}

DyadicGrid finite_grid(std::shared_ptr<const FiniteSpace> space, double eta,
                       std::uint64_t seed) {
  if (!space || space->size() < 1) throw ParameterError("finite_grid: empty space");
  double K = space->quasi_triangle_K();
  if (!(eta > 0.0) || eta > 1.0 / (8.0 * K * K))
    throw ParameterError("finite_grid: eta must lie in (0, 1/(8 K^2)]");
  const int n = space->size();

  DyadicGrid g;
  g.kind = DyadicGrid::Kind::Finite;
  g.space = space;
  g.constants.eta = eta;

  // seeded candidate order, deterministic tie-break by point index
  Rng rng(Rng::mix(seed, 0x517e));
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(order[i], order[static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i + 1)))]);

  // nested greedy nets, one per scale; the top scale exceeds the diameter so
  // one root cube carries the whole space
  double diam = std::max(space->diameter(), space->min_positive_distance());
  if (diam == 0.0) diam = 1.0;  // single point
  std::vector<std::vector<int>> nets;
  std::vector<double> radii;
  double r = 2.0 * diam;
  while (true) {
    std::vector<int> net = nets.empty() ? std::vector<int>{} : nets.back();
    for (int cand : order) {
      bool separated = true;
      for (int c : net)
        if (space->dist(cand, c) < r) {
          separated = false;
          break;
        }
      if (separated) net.push_back(cand);
    }
    nets.push_back(std::move(net));
    radii.push_back(r);
    if (static_cast<int>(nets.back().size()) == n || nets.size() > 64) break;
    r *= eta;
  }

  // finest-level assignment: nearest net center, ties to the lowest point index
  const auto& fine_net = nets.back();
  std::vector<int> owner(n, -1);
  for (int pt = 0; pt < n; ++pt) {
    double best = std::numeric_limits<double>::infinity();
    int who = -1;
    for (int c : fine_net) {
      double d = space->dist(pt, c);
      if (d < best || (d == best && c < who)) {
        best = d;
        who = c;
      }
    }
    owner[pt] = who;
  }

  // build generations coarse -> fine; cube membership is the union of its
  // descendants' finest assignments, so generations partition the space exactly
  int G = static_cast<int>(nets.size());
  g.gens.resize(G);
  g.scales = radii;
  int id = 0;
  std::vector<std::vector<int>> carrier(n);  // finest cube members by center
  for (int pt = 0; pt < n; ++pt) carrier[owner[pt]].push_back(pt);

  // map: center point -> cube index per generation
  std::vector<std::vector<int>> cube_of_center(G, std::vector<int>(n, -1));
  for (int gi = G - 1; gi >= 0; --gi) {
    const auto& net = nets[gi];
    auto& gen = g.gens[gi];
    gen.resize(net.size());
    for (std::size_t ci = 0; ci < net.size(); ++ci) {
      Cube& q = gen[ci];
      q.gen = gi;
      q.index_in_gen = static_cast<int>(ci);
      q.center_point = net[ci];
      cube_of_center[gi][net[ci]] = static_cast<int>(ci);
    }
    if (gi == G - 1) {
      for (auto& q : gen) q.points = carrier[q.center_point];
    }
  }
  // parent of a finer cube: nearest coarser net center (ties to lowest index);
  // old centers keep themselves (distance zero)
  for (int gi = G - 1; gi > 0; --gi) {
    for (Cube& q : g.gens[gi]) {
      double best = std::numeric_limits<double>::infinity();
      int who = -1;
      for (int c : nets[gi - 1]) {
        double d = space->dist(q.center_point, c);
        if (d < best || (d == best && c < who)) {
          best = d;
          who = c;
        }
      }
      int pidx = cube_of_center[gi - 1][who];
      Cube& parent = g.gens[gi - 1][pidx];
      q.parent = pidx;  // fixed to global ids below
      parent.children.push_back(q.index_in_gen);
    }
    // pull members up
    for (Cube& parent : g.gens[gi - 1]) {
      std::vector<int> pts;
      for (int child_idx : parent.children) {
        const auto& cp = g.gens[gi][child_idx].points;
        pts.insert(pts.end(), cp.begin(), cp.end());
      }
      std::sort(pts.begin(), pts.end());
      parent.points = std::move(pts);
    }
  }
  // masses, global ids, and id-based links
  for (int gi = 0; gi < G; ++gi) {
    for (Cube& q : g.gens[gi]) {
      q.id = id++;
      double m = 0.0;
      for (int pt : q.points) m += space->mass(pt);
      q.mass = m;
      std::sort(q.points.begin(), q.points.end());
    }
  }
  for (int gi = 1; gi < G; ++gi)
    for (Cube& q : g.gens[gi]) q.parent = g.gens[gi - 1][q.parent].id;
  for (int gi = 0; gi + 1 < G; ++gi)
    for (Cube& q : g.gens[gi]) {
      for (int& ch : q.children) ch = g.gens[gi + 1][ch].id;
      std::sort(q.children.begin(), q.children.end());
    }

  // achieved constants
  double eps = 1.0;
  for (int gi = 1; gi < G; ++gi)
    for (const Cube& q : g.gens[gi]) {
      const Cube* p = g.parent_of(q);
      if (p && p->mass > 0.0) eps = std::min(eps, q.mass / p->mass);
    }
  double outer = 0.0, inner = std::numeric_limits<double>::infinity();
  for (int gi = 0; gi < G; ++gi)
    for (const Cube& q : g.gens[gi]) {
      double far = 0.0;
      for (int pt : q.points) far = std::max(far, space->dist(q.center_point, pt));
      outer = std::max(outer, far / g.scales[gi]);
      double near_out = std::numeric_limits<double>::infinity();
      for (int pt = 0; pt < n; ++pt)
        if (!std::binary_search(q.points.begin(), q.points.end(), pt))
          near_out = std::min(near_out, space->dist(q.center_point, pt));
      if (std::isfinite(near_out)) inner = std::min(inner, near_out / g.scales[gi]);
    }
  g.constants.epsilon = eps;
  g.constants.outer_C = std::max(outer, 1e-12);
  g.constants.inner_c = std::isfinite(inner) ? inner : 1.0;
  return g;
}

namespace {

GridReport verify_line_grid(const DyadicGrid& g) {
  GridReport rep;
  rep.achieved = g.constants;
  double tol = 4.0 * std::numeric_limits<double>::epsilon() *
               std::max(std::abs(g.window.lo), std::abs(g.window.hi)) +
               1e-300;

  for (int gi = 0; gi < g.generations() && rep.partition.ok; ++gi) {
    const auto& gen = g.gens[gi];
    if (gen.empty()) {
      rep.partition = {false, "empty generation " + std::to_string(gi), 0.0};
      break;
    }
    if (std::abs(gen.front().box.lo - g.window.lo) > tol ||
        std::abs(gen.back().box.hi - g.window.hi) > tol) {
      rep.partition = {false, "generation " + std::to_string(gi) + " does not span the window",
                       0.0};
      break;
    }
    for (std::size_t i = 0; i + 1 < gen.size(); ++i) {
      if (std::abs(gen[i].box.hi - gen[i + 1].box.lo) > tol) {
        rep.partition = {false, "gap or overlap after " + cube_tag(gen[i]), 0.0};
        break;
      }
    }
  }

  // nested-or-disjoint plus lineage
  double min_ratio = 1.0;
  for (int gi = 1; gi < g.generations(); ++gi) {
    for (const Cube& q : g.gens[gi]) {
      const Cube* p = g.parent_of(q);
      if (!p) {
        rep.lineage = {false, cube_tag(q) + " has no parent", 0.0};
        continue;
      }
      if (q.box.lo < p->box.lo - tol || q.box.hi > p->box.hi + tol)
        rep.nesting = {false, cube_tag(q) + " escapes its parent", 0.0};
      min_ratio = std::min(min_ratio, q.mass / p->mass);
    }
  }
  for (int gi = 0; gi + 1 < g.generations(); ++gi) {
    for (const Cube& q : g.gens[gi]) {
      if (q.children.empty()) {
        rep.lineage = {false, cube_tag(q) + " has no children", 0.0};
        continue;
      }
      double child_mass = 0.0;
      for (const Cube& c : g.gens[gi + 1])
        if (c.parent == q.id) child_mass += c.mass;
      if (std::abs(child_mass - q.mass) > 1e-12 * std::max(1.0, q.mass))
        rep.lineage = {false, "children of " + cube_tag(q) + " do not fill it", child_mass};
    }
  }
  rep.mass_ratio.achieved = min_ratio;
  if (!(min_ratio > 0.0))
    rep.mass_ratio = {false, "vanishing child/parent mass ratio", min_ratio};

  // ball sandwich with scale = half side length
  double outer = 0.0, inner = std::numeric_limits<double>::infinity();
  for (int gi = 0; gi < g.generations(); ++gi) {
    for (const Cube& q : g.gens[gi]) {
      double s = g.scales[gi];
      double c = q.center;
      inner = std::min(inner, std::min(c - q.box.lo, q.box.hi - c) / s);
      outer = std::max(outer, std::max(c - q.box.lo, q.box.hi - c) / s);
      if (c - q.box.lo < s - tol || q.box.hi - c < s - tol)
        rep.sandwich = {false, "inner ball of " + cube_tag(q) + " escapes", inner};
    }
  }
  rep.sandwich.achieved = outer;
  rep.achieved.epsilon = min_ratio;
  rep.achieved.outer_C = outer;
  rep.achieved.inner_c = std::isfinite(inner) ? inner : 1.0;
  return rep;
}

GridReport verify_finite_grid(const DyadicGrid& g) {
  GridReport rep;
  rep.achieved = g.constants;
  const FiniteSpace& sp = *g.space;
  const int n = sp.size();

  for (int gi = 0; gi < g.generations(); ++gi) {
    std::vector<int> seen;
    for (const Cube& q : g.gens[gi]) seen.insert(seen.end(), q.points.begin(), q.points.end());
    std::sort(seen.begin(), seen.end());
    bool exact = static_cast<int>(seen.size()) == n;
    for (int i = 0; exact && i < n; ++i) exact = seen[static_cast<std::size_t>(i)] == i;
    if (!exact) {
      rep.partition = {false, "generation " + std::to_string(gi) + " is not a partition", 0.0};
      break;
    }
  }

  double min_ratio = 1.0;
  for (int gi = 1; gi < g.generations(); ++gi) {
    for (const Cube& q : g.gens[gi]) {
      const Cube* p = g.parent_of(q);
      if (!p) {
        rep.lineage = {false, cube_tag(q) + " has no parent", 0.0};
        continue;
      }
      bool subset = std::includes(p->points.begin(), p->points.end(), q.points.begin(),
                                  q.points.end());
      if (!subset) rep.nesting = {false, cube_tag(q) + " escapes its parent", 0.0};
      if (p->mass > 0.0) min_ratio = std::min(min_ratio, q.mass / p->mass);
    }
  }
  for (int gi = 0; gi + 1 < g.generations(); ++gi)
    for (const Cube& q : g.gens[gi])
      if (q.children.empty()) rep.lineage = {false, cube_tag(q) + " has no children", 0.0};

  rep.mass_ratio.achieved = min_ratio;
  if (!(min_ratio > 0.0))
    rep.mass_ratio = {false, "vanishing child/parent mass ratio", min_ratio};

  double outer = 0.0, inner = std::numeric_limits<double>::infinity();
  for (int gi = 0; gi < g.generations(); ++gi) {
    for (const Cube& q : g.gens[gi]) {
      if (q.center_point < 0 ||
          !std::binary_search(q.points.begin(), q.points.end(), q.center_point)) {
        rep.sandwich = {false, "center of " + cube_tag(q) + " is outside the cube", 0.0};
        continue;
      }
      double far = 0.0;
      for (int pt : q.points) far = std::max(far, sp.dist(q.center_point, pt));
      outer = std::max(outer, far / g.scales[gi]);
      double near_out = std::numeric_limits<double>::infinity();
      for (int pt = 0; pt < n; ++pt)
        if (!std::binary_search(q.points.begin(), q.points.end(), pt))
          near_out = std::min(near_out, sp.dist(q.center_point, pt));
      if (std::isfinite(near_out)) {
        if (!(near_out > 0.0))
          rep.sandwich = {false, "no inner ball around " + cube_tag(q), 0.0};
        inner = std::min(inner, near_out / g.scales[gi]);
      }
    }
  }
  rep.sandwich.achieved = outer;
  rep.achieved.epsilon = min_ratio;
  rep.achieved.outer_C = outer;
  rep.achieved.inner_c = std::isfinite(inner) ? inner : 1.0;
  return rep;
}

}  // namespace

GridReport verify_grid(const DyadicGrid& g) {
  if (g.gens.empty()) throw ParameterError("verify_grid: empty grid");
  return g.kind == DyadicGrid::Kind::Line ? verify_line_grid(g) : verify_finite_grid(g);
}

std::string GridReport::summary() const {
  std::ostringstream os;
  auto line = [&](const char* name, const GridCheckItem& it) {
    os << name << ": " << (it.ok ? "ok" : ("FAIL " + it.witness));
    if (it.achieved != 0.0) os << " (achieved " << it.achieved << ")";
    os << "\n";
  };
  line("partition", partition);
  line("nesting", nesting);
  line("lineage", lineage);
  line("mass_ratio", mass_ratio);
  line("sandwich", sandwich);
  os << "constants: eta=" << achieved.eta << " epsilon=" << achieved.epsilon
     << " outer_C=" << achieved.outer_C << " inner_c=" << achieved.inner_c << "\n";
  return os.str();
}

Interval dilate(const DyadicGrid& g, const Cube& q, double lambda) {
  if (!(lambda >= 1.0)) throw ParameterError("dilate: requires lambda >= 1");
  if (g.kind != DyadicGrid::Kind::Line) throw ParameterError("dilate: line grids only");
  double r = lambda * g.constants.outer_C * g.scales[q.gen];
  return {q.center - r, q.center + r};
}

std::vector<int> dilate_points(const DyadicGrid& g, const Cube& q, double lambda) {
  if (!(lambda >= 1.0)) throw ParameterError("dilate_points: requires lambda >= 1");
  if (g.kind != DyadicGrid::Kind::Finite)
    throw ParameterError("dilate_points: finite grids only");
  double r = lambda * g.constants.outer_C * g.scales[q.gen];
  std::vector<int> pts = g.space->ball_points(q.center_point, r);
  // a dilation always contains the cube itself
  pts.insert(pts.end(), q.points.begin(), q.points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace bumplab
