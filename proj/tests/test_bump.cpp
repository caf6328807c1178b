#include <doctest.h>

#include <cmath>
#include <vector>

#include "bumplab/bump.hpp"
#include "bumplab/errors.hpp"
#include "bumplab/io.hpp"
#include "bumplab/orlicz.hpp"
#include "bumplab/rng.hpp"

using namespace bumplab;

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

StepFunction random_weight(Rng& rng, int cells, Interval w) {
  std::vector<double> bp(static_cast<std::size_t>(cells) + 1), vals(cells);
  for (int i = 0; i <= cells; ++i)
    bp[static_cast<std::size_t>(i)] = w.lo + w.length() * i / cells;
  double g = 0.0;
  for (int i = 0; i < cells; ++i) {
    g += rng.uniform(-0.8, 0.8);
    vals[static_cast<std::size_t>(i)] = std::exp(g);
  }
  return StepFunction(std::move(bp), std::move(vals));
}

}  // namespace

TEST_CASE("unit weights give unit bumps") {
  StepFunction one = StepFunction::constant({0.0, 1.0}, 1.0);
  WeightPair pair = WeightPair::make(one, one, {0.0, 1.0});
  YoungFunction sq = YoungFunction::power(2.0);
  ScanFamily fam = breakpoint_family(pair, 2);
  BumpReport d = bump_double(pair, sq, sq, 2.0, fam);
  CHECK(d.value == doctest::Approx(1.0).epsilon(1e-9));
  BumpReport s = bump_separated(pair, sq, 2.0, fam);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-9));
  BumpReport sd = bump_separated_dual(pair, sq, 2.0, fam);
  CHECK(sd.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("single block: rescaled double and separated values") {
  // u = K4 on (3,4), sigma = 1 on (0,1), window (0,4), Phi = t log(e+t)^2
  int n = 4;
  double K = n * n * std::pow(std::log(kE + n), -3.0);
  StepFunction u({3.0, 4.0}, {K});
  StepFunction sigma({0.0, 1.0}, {1.0});
  WeightPair pair = WeightPair::make(u, sigma, {0.0, 4.0}, 1e-300);
  YoungFunction phi = YoungFunction::power_log(1.0, 2.0);

  ScanFamily lone{Interval{0.0, 4.0}};
  // the double product sits near log(e+n) (the drift is the documented band)
  double dval = orlicz_norm(pair.u, Interval{0.0, 4.0}, phi) *
                orlicz_norm(pair.sigma, Interval{0.0, 4.0}, phi);
  CHECK(dval / std::log(kE + n) > 0.1);
  CHECK(dval / std::log(kE + n) < 10.0);
  // the separated product sits near 1/log(e+n)
  double sval = orlicz_norm(pair.u, Interval{0.0, 4.0}, phi) *
                (pair.sigma.integral(Interval{0.0, 4.0}) / 4.0);
  CHECK(sval * std::log(kE + n) > 0.1);
  CHECK(sval * std::log(kE + n) < 10.0);
  (void)lone;
}

TEST_CASE("translation invariance of the scanned value") {
  Rng rng(3);
  StepFunction u = random_weight(rng, 16, {0.0, 1.0});
  StepFunction s = random_weight(rng, 16, {0.0, 1.0});
  WeightPair pair = WeightPair::make(u, s, {0.0, 1.0});
  YoungFunction A = YoungFunction::log_bump(2.0, 1.0);
  YoungFunction B = YoungFunction::log_bump(2.0, 0.5);
  double v0 = bump_double(pair, A, B, 2.0, breakpoint_family(pair, 1)).value;

  double delta = 7.25;
  WeightPair moved = WeightPair::make(u.translate(delta), s.translate(delta),
                                      {0.0 + delta, 1.0 + delta});
  double v1 = bump_double(moved, A, B, 2.0, breakpoint_family(moved, 1)).value;
  CHECK(v1 == doctest::Approx(v0).epsilon(1e-11));
}

TEST_CASE("scaling law in the first weight") {
  Rng rng(5);
  StepFunction u = random_weight(rng, 12, {0.0, 1.0});
  StepFunction s = random_weight(rng, 12, {0.0, 1.0});
  YoungFunction A = YoungFunction::log_bump(2.0, 1.0);
  for (double p : {1.5, 2.0, 3.0}) {
    WeightPair pair = WeightPair::make(u, s, {0.0, 1.0});
    ScanFamily fam = breakpoint_family(pair, 1);
    double v = bump_separated(pair, A, p, fam).value;
    double c = 5.0;
    WeightPair scaled = WeightPair::make(sf_scale(u, c), s, {0.0, 1.0});
    double vc = bump_separated(scaled, A, p, fam).value;
    CHECK(vc == doctest::Approx(std::pow(c, 1.0 / p) * v).epsilon(1e-9));
  }
}

TEST_CASE("double bump dominates the separated bump for log bumps") {
  // t^{p'} <= B(t) pointwise for the dual log bump, so the B-norm dominates
  // the plain p'-average with constant 1
  Rng rng(7);
  double p = 2.0;
  YoungFunction A = YoungFunction::log_bump(p, 1.0);
  YoungFunction B = YoungFunction::log_bump(2.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    StepFunction u = random_weight(rng, 12, {0.0, 1.0});
    StepFunction s = random_weight(rng, 12, {0.0, 1.0});
    WeightPair pair = WeightPair::make(u, s, {0.0, 1.0});
    ScanFamily fam = breakpoint_family(pair, 1);
    CHECK(bump_double(pair, A, B, p, fam).value >=
          bump_separated(pair, A, p, fam).value * (1.0 - 1e-9));
  }
}

TEST_CASE("the value never decreases when the family grows") {
  Rng rng(9);
  StepFunction u = random_weight(rng, 16, {0.0, 1.0});
  StepFunction s = random_weight(rng, 16, {0.0, 1.0});
  WeightPair pair = WeightPair::make(u, s, {0.0, 1.0});
  YoungFunction A = YoungFunction::log_bump(2.0, 1.0);
  double v1 = bump_separated(pair, A, 2.0, breakpoint_family(pair, 0)).value;
  double v2 = bump_separated(pair, A, 2.0, breakpoint_family(pair, 2)).value;
  CHECK(v2 >= v1 - 1e-12);
}

TEST_CASE("parallel and serial scans agree bitwise") {
  Rng rng(11);
  StepFunction u = random_weight(rng, 20, {0.0, 1.0});
  StepFunction s = random_weight(rng, 20, {0.0, 1.0});
  WeightPair pair = WeightPair::make(u, s, {0.0, 1.0});
  YoungFunction A = YoungFunction::log_bump(2.0, 1.0);
  ScanFamily fam = breakpoint_family(pair, 1);
  BumpReport rp = bump_double(pair, A, A, 2.0, fam);
  BumpReport rs = bump_double_serial(pair, A, A, 2.0, fam);
  CHECK(rp.value == rs.value);
  CHECK(rp.extremal.lo == rs.extremal.lo);
  CHECK(rp.extremal.hi == rs.extremal.hi);
}

TEST_CASE("ball/dyadic comparability for unit and random weights") {
  StepFunction one = StepFunction::constant({0.0, 1.0}, 1.0);
  WeightPair unit = WeightPair::make(one, one, {0.0, 1.0});
  auto grids = line_shift_family(-5, 2, {0.0, 1.0});
  YoungFunction A = YoungFunction::log_bump(2.0, 1.0);
  EquivalenceReport rep = ball_dyadic_equivalence(unit, A, 2.0, grids,
                                                  breakpoint_family(unit, 2));
  CHECK(rep.uncovered == 0);
  CHECK(rep.ratio_ball_over_dyadic == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.ratio_dyadic_over_ball == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.within_band);

  Rng rng(13);
  for (int k = 0; k < 20; ++k) {
    StepFunction u = random_weight(rng, 8, {0.0, 1.0});
    StepFunction s = random_weight(rng, 8, {0.0, 1.0});
    WeightPair pair = WeightPair::make(u, s, {0.0, 1.0});
    EquivalenceReport r = ball_dyadic_equivalence(pair, A, 2.0, grids,
                                                  breakpoint_family(pair, 1));
    CHECK(r.uncovered == 0);
    CHECK(r.within_band);
    CHECK(r.ratio_ball_over_dyadic >= 1.0 - 1e-9);
    CHECK(r.ratio_ball_over_dyadic <= r.comparability * (1.0 + 1e-9));
  }
}

TEST_CASE("block pair: ball/dyadic ratios recorded and finite") {
  int n = 4;
  double K = n * n * std::pow(std::log(kE + n), -3.0);
  StepFunction u({3.0, 4.0}, {K});
  StepFunction sigma({0.0, 1.0}, {1.0});
  WeightPair pair = WeightPair::make(u, sigma, {0.0, 4.0});
  auto grids = line_shift_family(-3, 3, {0.0, 4.0});
  YoungFunction A = YoungFunction::log_bump(2.0, 1.0);
  EquivalenceReport rep =
      ball_dyadic_equivalence(pair, A, 2.0, grids, breakpoint_family(pair, 2));
  CHECK(rep.uncovered == 0);
  CHECK(std::isfinite(rep.ratio_ball_over_dyadic));
  CHECK(std::isfinite(rep.ratio_dyadic_over_ball));
  CHECK(rep.within_band);
}

#ifdef _OPENMP
#include <omp.h>
TEST_CASE("scan results do not depend on the thread count") {
  Rng rng(29);
  StepFunction u = random_weight(rng, 24, {0.0, 1.0});
  StepFunction s = random_weight(rng, 24, {0.0, 1.0});
  WeightPair pair = WeightPair::make(u, s, {0.0, 1.0});
  YoungFunction A = YoungFunction::log_bump(2.0, 1.0);
  ScanFamily fam = breakpoint_family(pair, 1);
  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  BumpReport r1 = bump_double(pair, A, A, 2.0, fam);
  omp_set_num_threads(saved);
  BumpReport r2 = bump_double(pair, A, A, 2.0, fam);
  CHECK(r1.value == r2.value);
  CHECK(r1.extremal.lo == r2.extremal.lo);
}
#endif

TEST_CASE("bump report serialization") {
  StepFunction one = StepFunction::constant({0.0, 1.0}, 1.0);
  WeightPair pair = WeightPair::make(one, one, {0.0, 1.0});
  YoungFunction sq = YoungFunction::power(2.0);
  BumpReport rep = bump_double(pair, sq, sq, 2.0, breakpoint_family(pair, 0));
  std::string row = io::bump_report_csv_row(rep);
  CHECK(row.find("double,") == 0);
  io::json j = io::to_json(rep);
  CHECK(j.at("kind") == "double");
  CHECK(j.at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}
