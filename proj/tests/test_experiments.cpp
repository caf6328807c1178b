#include <doctest.h>

#include <cmath>
#include <memory>

#include "bumplab/experiments.hpp"
#include "bumplab/hilbert.hpp"
#include "bumplab/orlicz.hpp"
#include "bumplab/rng.hpp"

using namespace bumplab;

namespace {

SuiteConfig small_suite(int instances, std::uint64_t seed) {
  SuiteConfig cfg;
  cfg.instances = instances;
  cfg.seed = seed;
  cfg.sizes = {8, 16, 32};
  return cfg;
}

SparseFamily whole_window_family(std::shared_ptr<const DyadicGrid> g) {
  SparseFamily::Member m{{0, 0}, IntervalSet(Interval{0.0, 1.0}), 1.0};
  return SparseFamily(std::move(g), {m});
}

}  // namespace

TEST_CASE("strong norm of the averaging projection is one") {
  auto g = std::make_shared<DyadicGrid>(line_grid(0.0, -3, 0, {0.0, 1.0}));
  StepFunction one = StepFunction::constant({0.0, 1.0}, 1.0);
  WeightPair pair = WeightPair::make(one, one, {0.0, 1.0});
  SparseFamily S = whole_window_family(g);
  SparseOperator op = make_operator(S, pair);
  TestBattery battery = make_battery(op, 1, 3);
  for (double p : {1.5, 2.0, 3.0}) {
    OperatorNormEstimate est = strong_norm(S, pair, p, battery);
    CHECK(est.estimate == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(est.estimate >= est.lower_bound);
    CHECK(est.converged);
  }
  // empty family: zero operator
  SparseFamily empty(g, {});
  CHECK(strong_norm(empty, pair, 2.0, battery).estimate == 0.0);
}

TEST_CASE("weak norm below strong norm, attained at the constant function") {
  auto g = std::make_shared<DyadicGrid>(line_grid(0.0, -3, 0, {0.0, 1.0}));
  StepFunction one = StepFunction::constant({0.0, 1.0}, 1.0);
  WeightPair pair = WeightPair::make(one, one, {0.0, 1.0});
  SparseFamily S = whole_window_family(g);
  SparseOperator op = make_operator(S, pair);
  TestBattery battery = make_battery(op, 2, 3);
  double w = weak_norm(S, pair, 2.0, battery);
  CHECK(w == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w <= strong_norm(S, pair, 2.0, battery).estimate * (1.0 + 1e-9));
}

TEST_CASE("estimates are deterministic under the seed") {
  Instance a = make_instance(99, 32, 2.0, 0.8);
  Instance b = make_instance(99, 32, 2.0, 0.8);
  SparseOperator opa = make_operator(a.S, a.pair);
  SparseOperator opb = make_operator(b.S, b.pair);
  TestBattery ba = make_battery(opa, 5, 4);
  TestBattery bb = make_battery(opb, 5, 4);
  CHECK(strong_norm(a.S, a.pair, 2.0, ba).estimate ==
        strong_norm(b.S, b.pair, 2.0, bb).estimate);
  CHECK(weak_norm(a.S, a.pair, 2.0, ba) == weak_norm(b.S, b.pair, 2.0, bb));
}

TEST_CASE("power iteration stays above the random-search lower bound") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    Instance inst = make_instance(seed, 32, 2.0, 0.8);
    if (inst.S.empty()) continue;
    SparseOperator op = make_operator(inst.S, inst.pair);
    TestBattery battery = make_battery(op, Rng::mix(seed, 77), 4);
    OperatorNormEstimate est = strong_norm(inst.S, inst.pair, 2.0, battery);
    CHECK(est.estimate >= est.lower_bound);
    CHECK(est.gap >= 0.0);
    CHECK(est.gap <= 0.35);  // the battery tracks the iterate closely
  }
}

TEST_CASE("testing constants: unit case and domination by the strong norm") {
  auto g = std::make_shared<DyadicGrid>(line_grid(0.0, -3, 0, {0.0, 1.0}));
  StepFunction one = StepFunction::constant({0.0, 1.0}, 1.0);
  WeightPair pair = WeightPair::make(one, one, {0.0, 1.0});
  SparseFamily S = whole_window_family(g);
  TestingConstants tc = testing_constants(S, pair, 2.0);
  CHECK(tc.forward == doctest::Approx(1.0).epsilon(1e-12));

  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    Instance inst = make_instance(seed, 32, 2.0, 0.8);
    if (inst.S.empty()) continue;
    SparseOperator op = make_operator(inst.S, inst.pair);
    TestBattery battery = make_battery(op, Rng::mix(seed, 77), 4);
    double strong = strong_norm(inst.S, inst.pair, 2.0, battery).estimate;
    TestingConstants t = testing_constants(inst.S, inst.pair, 2.0);
    CHECK(t.forward <= strong * (1.0 + 1e-9));
  }
}

TEST_CASE("double-bump suite: bounded ratios, chain inequality, flat trend") {
  SuiteConfig cfg = small_suite(12, 101);
  NormExperimentReport rep = check_thm_double(cfg);
  CHECK(rep.ok);
  CHECK(rep.rows.size() == 12);
  for (const auto& r : rep.rows) {
    CHECK(std::isfinite(r.ratio));
    CHECK(r.ratio >= 0.0);
    CHECK(r.ratio <= 4.0);  // bounded; the hidden constant sits near one
  }
  CHECK(rep.slope_vs_size <= 0.05);
}

TEST_CASE("orlicz-maximal bound suite") {
  SuiteConfig cfg = small_suite(12, 103);
  NormExperimentReport rep = check_lemma41(cfg);
  CHECK(rep.ok);
  for (const auto& r : rep.rows) CHECK(std::isfinite(r.ratio));
  CHECK(rep.max_ratio < 16.0);
}

TEST_CASE("weak (1,1) suite: bounded sweep, exact bad-part cancellation") {
  SuiteConfig cfg = small_suite(8, 107);
  NormExperimentReport rep = check_thm_weak11(cfg);
  CHECK(rep.ok);
  CHECK(!rep.rows.empty());
  for (const auto& r : rep.rows) CHECK(std::isfinite(r.ratio));
  CHECK(rep.detail.find("bad parts checked") != std::string::npos);
}

TEST_CASE("weak (1,1) ratio is invariant under scaling the test function") {
  Instance inst = make_instance(55, 32, 2.0, 0.8);
  REQUIRE(!inst.S.empty());
  SparseOperator op = make_operator(inst.S, inst.pair);
  YoungFunction phi = YoungFunction::power_log(1.0, 2.0);
  StepFunction Mu = dyadic_maximal(inst.pair.u, *inst.grid, phi);
  std::vector<double> mu_cells = op.cell_values(Mu);
  std::vector<double> ones(op.mass.size(), 1.0), y;

  auto sweep_max = [&](const std::vector<double>& f) {
    double denom = 0.0;
    for (std::size_t c = 0; c < f.size(); ++c) denom += f[c] * mu_cells[c] * op.mass[c];
    op.apply_weighted(f, ones, y);
    double best = 0.0;
    for (std::size_t c = 0; c < y.size(); ++c) {
      if (!(y[c] > 0.0)) continue;
      double mass_above = 0.0;
      for (std::size_t d = 0; d < y.size(); ++d)
        if (y[d] >= y[c]) mass_above += op.u[d] * op.mass[d];
      best = std::max(best, y[c] * mass_above / denom);
    }
    return best;
  };

  std::vector<double> f(op.mass.size(), 0.0);
  Rng rng(5);
  for (auto& v : f) v = std::exp(rng.uniform(-1.0, 1.0));
  std::vector<double> cf = f;
  for (auto& v : cf) v *= 7.5;
  CHECK(sweep_max(cf) == doctest::Approx(sweep_max(f)).epsilon(1e-12));
}

TEST_CASE("bump-weighted maximal suite and its scaling invariance") {
  SuiteConfig cfg = small_suite(9, 109);
  NormExperimentReport rep = check_lemma61(cfg);
  CHECK(rep.ok);
  for (const auto& r : rep.rows) CHECK(std::isfinite(r.ratio));
  CHECK(rep.detail.find("holder=") != std::string::npos);

  // scaling u by c leaves the ratio unchanged
  Instance inst = make_instance(77, 32, 2.0, 0.8);
  double p = 2.0, pp = 2.0;
  double delta = 1.0, eps = delta / (2.0 * p), eta = delta - eps * p;
  YoungFunction A = YoungFunction::log_bump(p, delta);
  YoungFunction Phi = YoungFunction::power_log(1.0, eps);
  YoungFunction C = YoungFunction::power_log(pp, -1.0 - (pp - 1.0) * eta);
  double bpc = bp_constant(C, pp).value;
  StepFunction f = random_lattice_function(*inst.grid, 5, 0.8);

  auto ratio_for = [&](const WeightPair& pair) {
    StepFunction m = dyadic_maximal(sf_mul(f, pair.u), *inst.grid, Phi);
    double lhs =
        std::pow(sf_mul(sf_pow(m, pp), pair.sigma).integral(inst.grid->window), 1.0 / pp);
    double bump = bump_separated(pair, A, p, grid_family(*inst.grid)).value;
    double fn = std::pow(sf_mul(sf_pow(f, pp), pair.u).integral(inst.grid->window), 1.0 / pp);
    return lhs / (bump * std::pow(bpc, 1.0 / pp) * fn);
  };
  double r1 = ratio_for(inst.pair);
  WeightPair scaled = inst.pair;
  scaled.u = sf_scale(inst.pair.u, 11.0);
  double r2 = ratio_for(scaled);
  CHECK(r2 == doctest::Approx(r1).epsilon(1e-8));
}

TEST_CASE("weak/strong band suite") {
  SuiteConfig cfg = small_suite(8, 113);
  NormExperimentReport rep = check_lsut_band(cfg);
  CHECK(rep.ok);
  double lo = 1e300, hi = 0.0;
  for (const auto& r : rep.rows) {
    if (r.ratio <= 0.0) continue;
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  CHECK(hi / lo <= 20.0);
}

TEST_CASE("maximal domination suite") {
  SuiteConfig cfg = small_suite(10, 127);
  NormExperimentReport rep = check_maximal_domination(cfg);
  CHECK(rep.ok);
  for (const auto& r : rep.rows) CHECK(r.aux == 0.0);  // zero violations
}

TEST_CASE("transform pipeline: weighted norm against the bump product") {
  // H(f sigma) in L^p(u) against the double-bump bound, finite across pairs
  Rng rng(19);
  YoungFunction A = YoungFunction::log_bump(2.0, 1.0);
  for (int k = 0; k < 5; ++k) {
    int depth = 5;
    DyadicGrid grid = line_grid(0.0, -depth, 0, {0.0, 1.0});
    StepFunction u = random_lattice_function(grid, Rng::mix(19, k * 3 + 1), 0.6);
    StepFunction s = random_lattice_function(grid, Rng::mix(19, k * 3 + 2), 0.6);
    StepFunction f = random_lattice_function(grid, Rng::mix(19, k * 3 + 3), 0.6);
    WeightPair pair = WeightPair::make(u, s, {0.0, 1.0});
    StepFunction h = hilbert_apply(sf_mul(f, pair.sigma), {-1.0, 2.0}, -depth);
    double hn = std::pow(sf_mul(sf_pow(h, 2.0), pair.u).integral({0.0, 1.0}), 0.5);
    double bump = bump_double(pair, A, A, 2.0, breakpoint_family(pair, 1)).value;
    double fn = std::pow(sf_mul(sf_pow(f, 2.0), pair.sigma).integral({0.0, 1.0}), 0.5);
    CHECK(std::isfinite(hn / (bump * fn)));
    CHECK(hn / (bump * fn) < 100.0);
  }
}
