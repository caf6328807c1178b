// Batch front end: every operation is a subcommand reading JSON inputs and
// writing CSV/JSON artifacts into --out.  Exit codes: 0 success, 1 a verified
// mathematical check failed (witness in the summary), 2 bad input/parameters.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "bumplab/counterexample.hpp"
#include "bumplab/errors.hpp"
#include "bumplab/experiments.hpp"
#include "bumplab/hilbert.hpp"
#include "bumplab/io.hpp"
#include "bumplab/orlicz.hpp"

using namespace bumplab;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string out = ".";
};

std::string out_path(const CommonOpts& c, const std::string& name) {
  fs::create_directories(c.out);
  return (fs::path(c.out) / name).string();
}

Interval to_interval(const std::vector<double>& v) {
  if (v.size() != 2 || !(v[0] < v[1])) throw ParameterError("expected 'lo hi' with lo < hi");
  return {v[0], v[1]};
}

YoungFunction young_from_spec(const std::string& spec) {
  // inline JSON or a path to a JSON file
  if (!spec.empty() && spec.front() == '{')
    return io::young_from_json(io::json::parse(spec));
  return io::young_from_json(io::load_json_file(spec));
}

int run_orlicz_norm(const std::string& f_path, const std::vector<double>& set,
                    const std::string& young, const CommonOpts& c) {
  StepFunction f = io::step_from_json(io::load_json_file(f_path));
  YoungFunction A = young_from_spec(young);
  Interval E = to_interval(set);
  double norm = orlicz_norm(f, E, A);
  io::json out{{"norm", norm},
               {"set", {E.lo, E.hi}},
               {"young", io::to_json(A)},
               {"defining_average", "average of A(f/norm) over the set is 1"}};
  io::save_json_file(out_path(c, "orlicz_norm.json"), out);
  std::cout << io::format_double(norm) << "\n";
  return 0;
}

int run_bump_scan(const std::string& u_path, const std::string& sigma_path,
                  const std::vector<double>& window, const std::string& young_a,
                  const std::string& young_b, double p, const std::string& mode,
                  const std::string& family_kind, int refine, const std::string& grid_path,
                  const CommonOpts& c) {
  StepFunction u = io::step_from_json(io::load_json_file(u_path));
  StepFunction sigma = io::step_from_json(io::load_json_file(sigma_path));
  WeightPair pair = WeightPair::make(u, sigma, to_interval(window));
  ScanFamily family;
  if (family_kind == "grid") {
    if (grid_path.empty()) throw ParameterError("bump-scan: --grid required with family=grid");
    DyadicGrid g = io::grid_from_json(io::load_json_file(grid_path));
    family = grid_family(g);
  } else {
    family = breakpoint_family(pair, refine);
  }
  BumpReport rep;
  if (mode == "double") {
    YoungFunction A = young_from_spec(young_a);
    YoungFunction B = young_from_spec(young_b.empty() ? young_a : young_b);
    rep = bump_double(pair, A, B, p, family);
  } else if (mode == "separated") {
    rep = bump_separated(pair, young_from_spec(young_a), p, family);
  } else if (mode == "dual") {
    rep = bump_separated_dual(pair, young_from_spec(young_b.empty() ? young_a : young_b), p,
                              family);
  } else {
    throw ParameterError("bump-scan: mode must be double|separated|dual");
  }
  io::save_json_file(out_path(c, "bump_scan.json"), io::to_json(rep));
  io::save_text_file(out_path(c, "bump_scan.csv"),
                     "kind,value,extremal_lo,extremal_hi\n" + io::bump_report_csv_row(rep) +
                         "\n");
  std::cout << io::format_double(rep.value) << "\n";
  return 0;
}

std::shared_ptr<DyadicGrid> standard_window_grid(const std::vector<double>& window, int depth) {
  if (depth < 1 || depth > 24) throw ParameterError("depth must lie in [1, 24]");
  Interval w = to_interval(window);
  return std::make_shared<DyadicGrid>(line_grid(w.lo, -depth + static_cast<int>(std::floor(
                                                                  std::log2(w.length()))),
                                                static_cast<int>(std::floor(std::log2(w.length()))),
                                                w));
}

int run_cz_decompose(const std::string& f_path, const std::vector<double>& window, int depth,
                     double lambda, const CommonOpts& c) {
  StepFunction f = io::step_from_json(io::load_json_file(f_path));
  auto grid = standard_window_grid(window, depth);
  CZDecomposition cz = cz_decompose(f, grid, lambda);
  io::json out;
  out["lambda"] = lambda;
  out["good"] = io::to_json(cz.good);
  out["good_bound_constant"] = cz.good_bound_constant;
  io::json parts = io::json::array();
  for (const CzPart& part : cz.bad)
    parts.push_back(io::json{{"box", {part.box.lo, part.box.hi}},
                             {"mean", part.mean},
                             {"integral", part.integral},
                             {"values", io::to_json(part.as_step)}});
  out["bad_parts"] = parts;
  io::save_json_file(out_path(c, "cz_decompose.json"), out);
  std::cout << "stopping cubes: " << cz.bad.size() << "\n";
  return 0;
}

int run_sparse_build(const std::string& f_path, const std::vector<double>& window, int depth,
                     const std::string& phi, double a, const CommonOpts& c) {
  StepFunction f = io::step_from_json(io::load_json_file(f_path));
  auto grid = standard_window_grid(window, depth);
  YoungFunction Phi =
      phi.empty() ? YoungFunction::scaled_power(1.0, 1.0) : young_from_spec(phi);
  LevelFamilyResult res = sparse_from_levels(f, grid, Phi, a);
  io::json out = io::to_json(res.family);
  out["k_lo"] = res.k_lo;
  out["k_hi"] = res.k_hi;
  out["threshold"] = res.threshold;
  io::save_json_file(out_path(c, "sparse_family.json"), out);
  std::cout << "members: " << res.family.size() << "\n";
  return 0;
}

int run_sparse_apply(const std::string& family_path, const std::string& f_path,
                     const CommonOpts& c) {
  SparseFamily S = io::sparse_from_json(io::load_json_file(family_path));
  StepFunction f = io::step_from_json(io::load_json_file(f_path));
  StepFunction out = sparse_apply(S, f);
  io::save_json_file(out_path(c, "sparse_apply.json"), io::to_json(out));
  std::cout << "cells: " << out.cells() << "\n";
  return 0;
}

int run_grid_build(const std::string& kind, double shift, int level_min, int level_max,
                   const std::vector<double>& window, const std::string& space_path, int circle,
                   int random_planar, double eta, std::uint64_t seed, const CommonOpts& c) {
  DyadicGrid g;
  if (kind == "line") {
    g = line_grid(shift, level_min, level_max, to_interval(window));
  } else if (kind == "finite") {
    std::shared_ptr<FiniteSpace> sp;
    if (!space_path.empty())
      sp = std::make_shared<FiniteSpace>(io::space_from_json(io::load_json_file(space_path)));
    else if (circle > 0)
      sp = std::make_shared<FiniteSpace>(make_circle_space(circle));
    else if (random_planar > 0)
      sp = std::make_shared<FiniteSpace>(make_random_planar_space(random_planar, seed));
    else
      throw ParameterError("grid-build: need --space, --circle or --random-planar");
    double e = eta > 0.0 ? eta : default_finite_eta(*sp);
    g = finite_grid(sp, e, seed);
  } else {
    throw ParameterError("grid-build: kind must be line|finite");
  }
  io::save_json_file(out_path(c, "grid.json"), io::to_json(g));
  GridReport rep = verify_grid(g);
  io::save_text_file(out_path(c, "grid_verify.txt"), rep.summary());
  std::cout << rep.summary();
  return rep.all_ok() ? 0 : 1;
}

int run_grid_verify(const std::string& grid_path, const CommonOpts& c) {
  DyadicGrid g = io::grid_from_json(io::load_json_file(grid_path));
  GridReport rep = verify_grid(g);
  io::save_text_file(out_path(c, "grid_verify.txt"), rep.summary());
  std::cout << rep.summary();
  return rep.all_ok() ? 0 : 1;
}

int run_verify_thm(const std::string& tag, int instances, std::uint64_t seed, double delta,
                   double a, double oscillation, const CommonOpts& c) {
  SuiteConfig cfg;
  cfg.instances = instances;
  cfg.seed = seed;
  cfg.delta = delta;
  cfg.a = a;
  cfg.oscillation = oscillation;
  std::vector<NormExperimentReport> reports;
  if (tag == "double") {
    reports.push_back(check_thm_double(cfg));
    reports.push_back(check_lemma41(cfg));
  } else if (tag == "weak11") {
    reports.push_back(check_thm_weak11(cfg));
  } else if (tag == "lemma61") {
    reports.push_back(check_lemma61(cfg));
  } else if (tag == "lsut") {
    reports.push_back(check_lsut_band(cfg));
  } else if (tag == "maximal") {
    reports.push_back(check_maximal_domination(cfg));
  } else {
    throw ParameterError("verify-thm: unknown tag " + tag);
  }
  bool ok = true;
  for (const auto& rep : reports) {
    io::save_text_file(out_path(c, "thm_" + rep.tag + ".csv"), io::report_csv(rep));
    io::save_json_file(out_path(c, "thm_" + rep.tag + "_summary.json"),
                       io::report_summary(rep));
    std::cout << rep.tag << ": max ratio " << io::format_double(rep.max_ratio) << ", slope "
              << io::format_double(rep.slope_vs_size) << (rep.ok ? " [ok]" : " [FAIL]") << "\n";
    ok = ok && rep.ok;
  }
  if (!ok) throw CheckFailure("verify-thm: suite assertion failed", "see summary files");
  return 0;
}

int run_counterexample(const std::string& mode, int n_max, bool global_check,
                       const CommonOpts& c) {
  BlockWeights ce = BlockWeights::build(n_max);
  if (mode == "build") {
    std::ostringstream csv;
    csv << "n,K_n,offset_exponent\n";
    for (const auto& b : ce.blocks)
      csv << b.n << "," << io::format_double(b.K) << "," << b.n << "\n";
    io::save_text_file(out_path(c, "counterexample_blocks.csv"), csv.str());
    std::cout << "blocks: " << ce.blocks.size() << "\n";
    return 0;
  }
  if (mode == "double") {
    std::vector<int> ns;
    for (int n = 2; n <= n_max; ++n) ns.push_back(n);
    auto series = double_scan(ce, ns);
    std::ostringstream csv;
    csv << "n,product,product_over_log\n";
    for (const auto& pt : series)
      csv << pt.n << "," << io::format_double(pt.value) << ","
          << io::format_double(pt.value / pt.reference) << "\n";
    io::save_text_file(out_path(c, "counterexample_double.csv"), csv.str());
    if (global_check) {
      std::ostringstream g;
      g << "n,local,global\n";
      for (int n : {4, 8, 16, 24, 30}) {
        if (n > n_max) break;
        g << n << "," << io::format_double(double_scan(ce, {n})[0].value) << ","
          << io::format_double(double_product_global(n)) << "\n";
      }
      io::save_text_file(out_path(c, "counterexample_double_global.csv"), g.str());
    }
    std::cout << "series points: " << series.size() << "\n";
    return 0;
  }
  if (mode == "separated") {
    std::vector<double> lengths{10, 100, 1000, 1e4, 1e5, 1e6};
    for (int d = 0; d < 2; ++d) {
      SeparatedDirection dir =
          d == 0 ? SeparatedDirection::BumpOnU : SeparatedDirection::BumpOnSigma;
      SeparatedScan scan = separated_scan(ce, dir, lengths);
      std::ostringstream csv;
      csv << "n,per_block_sup,running_sup,reference\n";
      for (std::size_t i = 0; i < scan.per_block.size(); ++i)
        csv << scan.per_block[i].n << "," << io::format_double(scan.per_block[i].value) << ","
            << io::format_double(scan.running_sup[i].value) << ","
            << io::format_double(scan.per_block[i].reference) << "\n";
      std::ostringstream lcsv;
      lcsv << "length,bump_norm,plain_avg,product,bump_envelope,plain_envelope,blocks\n";
      for (const auto& lp : scan.long_scan)
        lcsv << io::format_double(lp.length) << "," << io::format_double(lp.bump_norm) << ","
             << io::format_double(lp.plain_avg) << "," << io::format_double(lp.product) << ","
             << io::format_double(lp.bump_envelope) << ","
             << io::format_double(lp.plain_envelope) << "," << lp.blocks_covered << "\n";
      std::string tagname = d == 0 ? "u" : "sigma";
      io::save_text_file(out_path(c, "counterexample_separated_" + tagname + ".csv"),
                         csv.str());
      io::save_text_file(out_path(c, "counterexample_separated_long_" + tagname + ".csv"),
                         lcsv.str());
      if (!scan.regimes_exclusive)
        throw CheckFailure("counterexample: interval regime classification failed", tagname);
    }
    std::cout << "separated scans written\n";
    return 0;
  }
  throw ParameterError("counterexample: mode must be build|double|separated");
}

int run_hilbert(const std::string& f_path, const std::vector<double>& window, int level,
                const CommonOpts& c) {
  StepFunction f = io::step_from_json(io::load_json_file(f_path));
  StepFunction out = hilbert_apply(f, to_interval(window), level);
  std::ostringstream csv;
  csv << "cell_lo,cell_hi,value\n";
  const auto& bp = out.breakpoints();
  for (std::size_t i = 0; i < out.cells(); ++i)
    csv << io::format_double(bp[i]) << "," << io::format_double(bp[i + 1]) << ","
        << io::format_double(out.values()[i]) << "\n";
  io::save_text_file(out_path(c, "hilbert.csv"), csv.str());
  io::save_json_file(out_path(c, "hilbert.json"), io::to_json(out));
  std::cout << "cells: " << out.cells() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dyadic harmonic-analysis toolkit: Orlicz norms, dyadic grids, sparse "
               "operators, two-weight bump experiments"};
  app.set_config("--config");
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--out", common.out, "output directory for artifacts")->capture_default_str();

  // orlicz-norm
  std::string f_path, young_a, young_b, u_path, sigma_path, mode, family_kind, grid_path,
      space_path, tag, kind;
  std::vector<double> set_v, window_v{0.0, 1.0};
  double p = 2.0, lambda = 1.0, a = 8.0, eta = 0.0, shift = 0.0, delta = 1.0, osc = 0.8;
  int refine = 2, depth = 6, level_min = -6, level_max = 0, circle = 0, random_planar = 0,
      n_max = 30, instances = 20, level = -10;
  std::uint64_t seed = 1;
  bool global_check = false;

  auto* c_norm = app.add_subcommand("orlicz-norm", "Luxemburg norm of a step function");
  c_norm->add_option("--function", f_path, "step function JSON")->required();
  c_norm->add_option("--set", set_v, "interval lo hi")->expected(2)->required();
  c_norm->add_option("--young", young_a, "young function JSON (inline or path)")->required();

  auto* c_bump = app.add_subcommand("bump-scan", "double/separated bump constants");
  c_bump->add_option("--u", u_path)->required();
  c_bump->add_option("--sigma", sigma_path)->required();
  c_bump->add_option("--window", window_v, "interval lo hi")->expected(2)->required();
  c_bump->add_option("--young-a", young_a)->required();
  c_bump->add_option("--young-b", young_b);
  c_bump->add_option("--p", p)->check(CLI::Range(1.0000001, 1e6));
  c_bump->add_option("--mode", mode, "double|separated|dual")->required();
  c_bump->add_option("--family", family_kind, "breakpoints|grid")
      ->default_val("breakpoints");
  c_bump->add_option("--refine", refine);
  c_bump->add_option("--grid", grid_path);

  auto* c_cz = app.add_subcommand("cz-decompose", "good/bad decomposition at a level");
  c_cz->add_option("--f", f_path)->required();
  c_cz->add_option("--window", window_v)->expected(2)->required();
  c_cz->add_option("--depth", depth);
  c_cz->add_option("--lambda", lambda)->required();

  auto* c_sb = app.add_subcommand("sparse-build", "stopping cubes of every level");
  c_sb->add_option("--f", f_path)->required();
  c_sb->add_option("--window", window_v)->expected(2)->required();
  c_sb->add_option("--depth", depth);
  c_sb->add_option("--phi", young_b, "young function for the stopping norms (default: plain averages)");
  c_sb->add_option("--a", a);

  auto* c_sa = app.add_subcommand("sparse-apply", "apply the sparse operator to a function");
  c_sa->add_option("--family", grid_path)->required();
  c_sa->add_option("--f", f_path)->required();

  auto* c_gb = app.add_subcommand("grid-build", "build a dyadic grid and verify it");
  c_gb->add_option("--kind", kind, "line|finite")->required();
  c_gb->add_option("--shift", shift);
  c_gb->add_option("--level-min", level_min);
  c_gb->add_option("--level-max", level_max);
  c_gb->add_option("--window", window_v)->expected(2);
  c_gb->add_option("--space", space_path, "finite space JSON");
  c_gb->add_option("--circle", circle, "built-in circle space with n points");
  c_gb->add_option("--random-planar", random_planar, "built-in random planar space");
  c_gb->add_option("--eta", eta, "scale ratio (default 1/(12 K^3))");
  c_gb->add_option("--seed", seed);

  auto* c_gv = app.add_subcommand("grid-verify", "check the grid axioms of a stored grid");
  c_gv->add_option("--grid", grid_path)->required();

  auto* c_vt = app.add_subcommand("verify-thm", "run a norm-inequality instance suite");
  c_vt->add_option("--tag", tag, "double|weak11|lemma61|lsut|maximal")->required();
  c_vt->add_option("--instances", instances);
  c_vt->add_option("--seed", seed);
  c_vt->add_option("--delta", delta);
  c_vt->add_option("--a", a);
  c_vt->add_option("--oscillation", osc);

  auto* c_ce = app.add_subcommand("counterexample", "separated-vs-double block example scans");
  c_ce->add_option("--mode", mode, "build|double|separated")->required();
  c_ce->add_option("--n-max", n_max)->check(CLI::Range(2, 100000));
  c_ce->add_flag("--global-check", global_check, "also rebuild small blocks in global floats");

  auto* c_h = app.add_subcommand("hilbert", "principal-value convolution with 1/(x-y)");
  c_h->add_option("--f", f_path)->required();
  c_h->add_option("--window", window_v)->expected(2)->required();
  c_h->add_option("--level", level, "output cell size 2^level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // unknown subcommand / malformed flags
  }

  try {
    if (c_norm->parsed()) return run_orlicz_norm(f_path, set_v, young_a, common);
    if (c_bump->parsed())
      return run_bump_scan(u_path, sigma_path, window_v, young_a, young_b, p, mode, family_kind,
                           refine, grid_path, common);
    if (c_cz->parsed()) return run_cz_decompose(f_path, window_v, depth, lambda, common);
    if (c_sb->parsed()) return run_sparse_build(f_path, window_v, depth, young_b, a, common);
    if (c_sa->parsed()) return run_sparse_apply(grid_path, f_path, common);
    if (c_gb->parsed())
      return run_grid_build(kind, shift, level_min, level_max, window_v, space_path, circle,
                            random_planar, eta, seed, common);
    if (c_gv->parsed()) return run_grid_verify(grid_path, common);
    if (c_vt->parsed()) return run_verify_thm(tag, instances, seed, delta, a, osc, common);
    if (c_ce->parsed()) return run_counterexample(mode, n_max, global_check, common);
    if (c_h->parsed()) return run_hilbert(f_path, window_v, level, common);
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
