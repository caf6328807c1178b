#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "bumplab/errors.hpp"
#include "bumplab/orlicz.hpp"
#include "bumplab/rng.hpp"
#include "bumplab/sparse.hpp"

using namespace bumplab;

namespace {

YoungFunction id_young() { return YoungFunction::scaled_power(1.0, 1.0); }

std::shared_ptr<DyadicGrid> unit_grid(int depth) {
  return std::make_shared<DyadicGrid>(line_grid(0.0, -depth, 0, {0.0, 1.0}));
}

StepFunction spike() { return StepFunction({0.0, 0.125}, {8.0}); }

StepFunction random_lattice(Rng& rng, const DyadicGrid& g) {
  std::vector<double> bp, vals;
  for (const Cube& q : g.gens.back()) {
    bp.push_back(q.box.lo);
    vals.push_back(std::exp(rng.uniform(-2.0, 2.0)));
  }
  bp.push_back(g.window.hi);
  return StepFunction(std::move(bp), std::move(vals));
}

// brute-force oracle: direct sup of plain averages over all cubes containing x
double maximal_oracle_at(const StepFunction& f, const DyadicGrid& g, double x) {
  double m = 0.0;
  for (const auto& gen : g.gens)
    for (const Cube& q : gen)
      if (q.box.contains(x)) m = std::max(m, f.integral(q.box) / q.mass);
  return m;
}

}  // namespace

TEST_CASE("dyadic maximal of the unit spike: the textbook ladder") {
  auto g = unit_grid(3);
  StepFunction m = dyadic_maximal(spike(), *g, id_young());
  CHECK(m.value_at(0.06) == doctest::Approx(8.0).epsilon(1e-9));
  CHECK(m.value_at(0.2) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(m.value_at(0.3) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(m.value_at(0.7) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("maximal function: constant case, oracle, pointwise lower bound") {
  auto g = unit_grid(4);
  YoungFunction sq = YoungFunction::power(2.0);  // A(1) = 1
  StepFunction c = StepFunction::constant({0.0, 1.0}, 2.5);
  StepFunction mc = dyadic_maximal(c, *g, sq);
  for (double x : {0.1, 0.5, 0.9}) CHECK(mc.value_at(x) == doctest::Approx(2.5).epsilon(1e-9));

  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    StepFunction f = random_lattice(rng, *g);
    StepFunction m = dyadic_maximal(f, *g, id_young());
    for (double x = 1.0 / 64.0; x < 1.0; x += 1.0 / 16.0) {
      CHECK(m.value_at(x) == doctest::Approx(maximal_oracle_at(f, *g, x)).epsilon(1e-9));
      CHECK(m.value_at(x) >= f.value_at(x) * (1.0 - 1e-9));
    }
  }

  // serial reference agrees with the parallel kernel bitwise
  StepFunction f = random_lattice(rng, *g);
  StepFunction ms = dyadic_maximal_serial(f, *g, id_young());
  StepFunction mp = dyadic_maximal(f, *g, id_young());
  REQUIRE(ms.cells() == mp.cells());
  for (std::size_t i = 0; i < ms.cells(); ++i) CHECK(ms.values()[i] == mp.values()[i]);
}

TEST_CASE("coverage guard") {
  auto g = unit_grid(3);
  StepFunction wide({-1.0, 2.0}, {1.0});
  CHECK_THROWS_AS(dyadic_maximal(wide, *g, id_young()), CoverageError);
}

TEST_CASE("stopping cubes of the spike at level 2") {
  auto g = unit_grid(3);
  StoppingCubes sc = cz_cubes(spike(), *g, id_young(), 2.0);
  REQUIRE(sc.cubes.size() == 1);
  const Cube& q = g->cube(sc.cubes[0].gen, sc.cubes[0].idx);
  CHECK(q.box.lo == 0.0);
  CHECK(q.box.hi == 0.25);
  CHECK(sc.achieved_upper <= sc.upper_bound_constant * (1.0 + 1e-9));

  // lambda above the peak: nothing stops
  CHECK(cz_cubes(spike(), *g, id_young(), 9.0).cubes.empty());
  // lambda below the window average: the local branch rejects it
  CHECK_THROWS_AS(cz_cubes(spike(), *g, id_young(), 0.5), PreconditionError);
}

TEST_CASE("stopping cubes tile the superlevel set exactly") {
  auto g = unit_grid(5);
  Rng rng(17);
  for (int k = 0; k < 10; ++k) {
    StepFunction f = random_lattice(rng, *g);
    StepFunction m = dyadic_maximal(f, *g, id_young());
    double theta = f.integral(g->window) / g->window.length();
    double lambda = theta * std::pow(2.0, 0.5 + 2.0 * rng.next_double());
    StoppingCubes sc = cz_cubes(f, *g, id_young(), lambda);
    IntervalSet omega(std::vector<Interval>{});
    {
      std::vector<Interval> parts;
      for (CubeRef r : sc.cubes) parts.push_back(g->cube(r.gen, r.idx).box);
      omega = IntervalSet(std::move(parts));
    }
    const auto& bp = m.breakpoints();
    for (std::size_t i = 0; i < m.cells(); ++i) {
      bool in_omega = omega.contains(bp[i]);
      bool above = level_exceeds(m.values()[i], lambda);
      CHECK(in_omega == above);
    }
  }
}

TEST_CASE("level family of the spike: two occupied levels, disjoint witnesses") {
  auto g = unit_grid(3);
  LevelFamilyResult res = sparse_from_levels(spike(), g, id_young(), 4.0);
  CHECK(res.threshold == doctest::Approx(1.0));
  CHECK(res.k_lo == 0);
  REQUIRE(res.family.size() == 2);
  const auto& members = res.family.members();
  const Cube& q0 = g->cube(members[0].cube.gen, members[0].cube.idx);
  const Cube& q1 = g->cube(members[1].cube.gen, members[1].cube.idx);
  CHECK(q0.box.hi == 0.5);
  CHECK(q0.box.lo == 0.0);
  CHECK(q1.box.hi == 0.125);
  // E((0,1/2)) = [1/8, 1/2), E((0,1/8)) = (0,1/8)
  CHECK(members[0].witness.measure() == doctest::Approx(0.375));
  CHECK(members[1].witness.measure() == doctest::Approx(0.125));

  StepFunction z;
  CHECK(sparse_from_levels(z, g, id_young(), 4.0).family.empty());
  CHECK_THROWS_AS(sparse_from_levels(spike(), g, id_young(), 3.0), ParameterError);
}

TEST_CASE("every constructed family is 2-sparse with disjoint witnesses") {
  Rng rng(23);
  for (int k = 0; k < 20; ++k) {
    auto g = unit_grid(4 + static_cast<int>(rng.next_below(3)));
    StepFunction f = random_lattice(rng, *g);
    LevelFamilyResult res = sparse_from_levels(f, g, id_young(), 8.0);
    res.family.check_invariants();  // throws on violation
    for (const auto& m : res.family.members()) {
      const Cube& q = g->cube(m.cube.gen, m.cube.idx);
      CHECK(q.mass <= 2.0 * m.witness.measure() * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("good/bad decomposition of the spike at level 2") {
  auto g = unit_grid(3);
  CZDecomposition cz = cz_decompose(spike(), g, 2.0);
  REQUIRE(cz.bad.size() == 1);
  CHECK(cz.bad[0].box.lo == 0.0);
  CHECK(cz.bad[0].box.hi == 0.25);
  CHECK(cz.bad[0].mean == doctest::Approx(4.0));
  // g = 4 chi_(0,1/4): the cube mean, within the level bound 2*lambda
  CHECK(cz.good.value_at(0.1) == doctest::Approx(4.0));
  CHECK(cz.good.value_at(0.6) == 0.0);
  // b has values 4 on (0,1/8) and -4 on (1/8,1/4), mean zero
  CHECK(cz.bad[0].as_step.value_at(0.05) == doctest::Approx(4.0));
  CHECK(cz.bad[0].as_step.value_at(0.2) == doctest::Approx(-4.0));
  CHECK(cz.bad[0].as_step.integral(cz.bad[0].box) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("decomposition identities: reconstruction, mean zero, level bound") {
  Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    auto g = unit_grid(4 + static_cast<int>(rng.next_below(3)));
    StepFunction f = random_lattice(rng, *g);
    double theta = f.integral(g->window) / g->window.length();
    double lambda = theta * std::pow(2.0, 0.25 + 2.0 * rng.next_double());
    CZDecomposition cz = cz_decompose(f, g, lambda);

    StepFunction rebuilt = cz.good;
    for (const CzPart& part : cz.bad) rebuilt = sf_add(rebuilt, part.as_step);
    double scale = f.max_abs();
    for (const Cube& leaf : g->gens.back()) {
      double x = leaf.box.lo;
      CHECK(std::abs(rebuilt.value_at(x) - f.value_at(x)) <= 1e-12 * scale);
    }
    for (const CzPart& part : cz.bad) {
      double mass = g->cube(part.cube.gen, part.cube.idx).mass;
      CHECK(std::abs(part.as_step.integral(part.box) / mass) <= 1e-12 * std::max(1.0, scale));
      // support inside the cube (single-leaf parts cancel to the zero function)
      if (!part.as_step.is_zero()) {
        Interval s = part.as_step.support_box();
        CHECK(s.lo >= part.box.lo - 1e-15);
        CHECK(s.hi <= part.box.hi + 1e-15);
      }
    }
    CHECK(cz.good.max_abs() <= cz.good_bound_constant * lambda * (1.0 + 1e-9));
  }
}

TEST_CASE("constant functions decompose trivially above their level") {
  auto g = unit_grid(3);
  StepFunction one = StepFunction::constant({0.0, 1.0}, 1.0);
  CZDecomposition cz = cz_decompose(one, g, 2.0);
  CHECK(cz.bad.empty());
  CHECK(cz.good.value_at(0.5) == doctest::Approx(1.0));
}

TEST_CASE("resolution guard: the finest generation must resolve f") {
  auto g = unit_grid(2);
  StepFunction thin({0.4999, 0.5001}, {100.0});
  CHECK_THROWS_AS(cz_decompose(thin, g, 1.0), CoverageError);
}

TEST_CASE("sparse operator: exact sums, linearity, positivity") {
  auto g = unit_grid(3);
  LevelFamilyResult res = sparse_from_levels(spike(), g, id_young(), 4.0);
  StepFunction one = StepFunction::constant({0.0, 1.0}, 1.0);
  // family {(0,1/2), (0,1/8)}: averages over the members
  StepFunction t1 = sparse_apply(res.family, one);
  CHECK(t1.value_at(0.05) == doctest::Approx(2.0));  // both cubes contain x
  CHECK(t1.value_at(0.3) == doctest::Approx(1.0));
  CHECK(t1.value_at(0.7) == 0.0);

  StepFunction t_spike = sparse_apply(res.family, spike());
  CHECK(t_spike.value_at(0.05) == doctest::Approx(10.0));  // 2 + 8
  CHECK(t_spike.value_at(0.3) == doctest::Approx(2.0));

  Rng rng(37);
  StepFunction f = random_lattice(rng, *g);
  StepFunction h = random_lattice(rng, *g);
  StepFunction lhs = sparse_apply(res.family, sf_add(f, h));
  StepFunction rhs = sf_add(sparse_apply(res.family, f), sparse_apply(res.family, h));
  for (double x = 1.0 / 16.0; x < 1.0; x += 1.0 / 8.0)
    CHECK(lhs.value_at(x) == doctest::Approx(rhs.value_at(x)).epsilon(1e-12));
  CHECK(sparse_apply(res.family, f).min_value() >= 0.0);
}

TEST_CASE("hand-built families reproduce the two-term sum") {
  auto g = unit_grid(3);
  SparseFamily::Member whole{{0, 0}, IntervalSet(Interval{0.5, 1.0}), 1.0};
  SparseFamily::Member half{{1, 0}, IntervalSet(Interval{0.0, 0.5}), 2.0};
  SparseFamily S(g, {whole, half});

  StepFunction one = StepFunction::constant({0.0, 1.0}, 1.0);
  StepFunction t1 = sparse_apply(S, one);
  CHECK(t1.value_at(0.25) == doctest::Approx(2.0));  // 1 from each cube
  CHECK(t1.value_at(0.75) == doctest::Approx(1.0));

  StepFunction chi_half = StepFunction::indicator({0.0, 0.5});
  StepFunction t2 = sparse_apply(S, chi_half);
  CHECK(t2.value_at(0.25) == doctest::Approx(1.5));  // 1/2 + 1
  CHECK(t2.value_at(0.75) == doctest::Approx(0.5));

  // a witness escaping 2-sparseness is rejected at construction
  SparseFamily::Member bad{{0, 0}, IntervalSet(Interval{0.0, 0.25}), 1.0};
  CHECK_THROWS_AS(SparseFamily(g, {bad}), CheckFailure);
}

TEST_CASE("sparse operator annihilates bad parts away from the stopping region") {
  auto g = unit_grid(4);
  Rng rng(41);
  for (int k = 0; k < 10; ++k) {
    StepFunction f = random_lattice(rng, *g);
    double theta = f.integral(g->window) / g->window.length();
    CZDecomposition cz = cz_decompose(f, g, 2.0 * theta);
    LevelFamilyResult res = sparse_from_levels(f, g, id_young(), 8.0);
    if (res.family.empty() || cz.bad.empty()) continue;
    std::vector<Interval> parts;
    for (CubeRef r : cz.stopping_cubes) parts.push_back(g->cube(r.gen, r.idx).box);
    IntervalSet omega(parts);
    for (const CzPart& part : cz.bad) {
      StepFunction img = sparse_apply_to_part(res.family, part);
      const auto& bp = img.breakpoints();
      for (std::size_t i = 0; i < img.cells(); ++i) {
        if (omega.contains(bp[i])) continue;
        CHECK(img.values()[i] == 0.0);  // exact, not approximate
      }
    }
  }
}

TEST_CASE("maximal function dominated by the sparse operator") {
  auto g3 = unit_grid(3);
  DominationReport rep = maximal_dominated_by_sparse(spike(), g3, 4.0);
  CHECK(rep.violations == 0);
  CHECK(rep.cells_checked > 0);

  StepFunction z;
  DominationReport rz = maximal_dominated_by_sparse(z, unit_grid(3), 4.0);
  CHECK(rz.violations == 0);

  Rng rng(43);
  for (int k = 0; k < 50; ++k) {
    auto g = unit_grid(4 + static_cast<int>(rng.next_below(3)));
    StepFunction f = random_lattice(rng, *g);
    DominationReport r = maximal_dominated_by_sparse(f, g, 8.0);
    CHECK(r.violations == 0);
  }
}
