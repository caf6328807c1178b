#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <cmath>

#include "bumplab/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path log = fs::temp_directory_path() / ("bumplab_cli_" + std::to_string(counter++) + ".log");
  std::string cmd = std::string(BUMPLAB_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WEXITSTATUS(raw);
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(log);
  return r;
}

fs::path sandbox() {
  fs::path dir = fs::temp_directory_path() / "bumplab_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_json(const std::string& name, const bumplab::io::json& j) {
  fs::path p = sandbox() / name;
  std::ofstream out(p);
  out << j.dump();
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("orlicz-norm of a constant weight prints the constant") {
  using bumplab::io::json;
  std::string f = write_json("const.json", json{{"breakpoints", {0.0, 1.0}}, {"values", {3.5}}});
  fs::path out = sandbox() / "norm_out";
  RunResult r = run_cli("--out " + out.string() + " orlicz-norm --function " + f +
                        " --set 0 1 --young '{\"family\":\"power\",\"p\":2.0}'");
  CHECK(r.code == 0);
  CHECK(std::abs(std::stod(r.out) - 3.5) <= 1e-9);
  CHECK(fs::exists(out / "orlicz_norm.json"));
}

TEST_CASE("counterexample double emits the series CSV") {
  fs::path out = sandbox() / "ce_out";
  RunResult r = run_cli("--out " + out.string() + " counterexample --mode double --n-max 30");
  CHECK(r.code == 0);
  std::string csv = slurp(out / "counterexample_double.csv");
  CHECK(csv.find("n,product,product_over_log") == 0);
  // 29 data rows for n = 2..30
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 30);
}

TEST_CASE("grid-verify rejects a corrupted grid with exit 1") {
  using bumplab::io::json;
  fs::path out = sandbox() / "grid_out";
  RunResult build = run_cli("--out " + out.string() +
                            " grid-build --kind line --level-min -3 --level-max 0 --window 0 1");
  REQUIRE(build.code == 0);
  json j = bumplab::io::load_json_file((out / "grid.json").string());
  j["generations"][2][1]["hi"] = 0.33;
  std::string bad = write_json("bad_grid.json", j);
  RunResult r = run_cli("--out " + out.string() + " grid-verify --grid " + bad);
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("unknown subcommands and malformed input exit with 2") {
  RunResult r1 = run_cli("no-such-command");
  CHECK(r1.code == 2);
  std::string broken = (sandbox() / "broken.json").string();
  {
    std::ofstream outf(broken);
    outf << "{not json";
  }
  fs::path out = sandbox() / "err_out";
  RunResult r2 = run_cli("--out " + out.string() + " orlicz-norm --function " + broken +
                         " --set 0 1 --young '{\"family\":\"power\",\"p\":2.0}'");
  CHECK(r2.code == 2);
  // parameter out of its domain
  using bumplab::io::json;
  std::string f = write_json("c2.json", json{{"breakpoints", {0.0, 1.0}}, {"values", {1.0}}});
  RunResult r3 = run_cli("--out " + out.string() + " orlicz-norm --function " + f +
                         " --set 0 1 --young '{\"family\":\"power\",\"p\":0.5}'");
  CHECK(r3.code == 2);
}

TEST_CASE("identical seeds give byte-identical artifacts") {
  fs::path o1 = sandbox() / "det1";
  fs::path o2 = sandbox() / "det2";
  std::string args = " verify-thm --tag maximal --instances 6 --seed 42";
  REQUIRE(run_cli("--out " + o1.string() + args).code == 0);
  REQUIRE(run_cli("--out " + o2.string() + args).code == 0);
  CHECK(slurp(o1 / "thm_maximal-domination.csv") == slurp(o2 / "thm_maximal-domination.csv"));
}

TEST_CASE("config files feed flags, command line overrides") {
  fs::path out = sandbox() / "cfg_out";
  fs::path cfg = sandbox() / "run.ini";
  {
    std::ofstream c(cfg);
    c << "out=" << out.string() << "\n";
  }
  RunResult r = run_cli("--config " + cfg.string() + " counterexample --mode build --n-max 10");
  CHECK(r.code == 0);
  CHECK(fs::exists(out / "counterexample_blocks.csv"));
}

TEST_CASE("hilbert, cz-decompose and bump-scan subcommands emit artifacts") {
  using bumplab::io::json;
  std::string f = write_json(
      "box.json", json{{"breakpoints", {-1.0, 1.0}}, {"values", {1.0}}});
  fs::path out = sandbox() / "misc_out";
  RunResult h = run_cli("--out " + out.string() + " hilbert --f " + f +
                        " --window -2 2 --level -6");
  CHECK(h.code == 0);
  CHECK(fs::exists(out / "hilbert.csv"));

  std::string spike = write_json(
      "spike2.json", json{{"breakpoints", {0.0, 0.125}}, {"values", {8.0}}});
  RunResult cz = run_cli("--out " + out.string() + " cz-decompose --f " + spike +
                         " --window 0 1 --depth 3 --lambda 2");
  CHECK(cz.code == 0);
  CHECK(fs::exists(out / "cz_decompose.json"));
  // lambda below the admissible threshold is an input error
  RunResult low = run_cli("--out " + out.string() + " cz-decompose --f " + spike +
                          " --window 0 1 --depth 3 --lambda 0.5");
  CHECK(low.code == 2);

  std::string w = write_json(
      "w.json", json{{"breakpoints", {0.0, 0.5, 1.0}}, {"values", {2.0, 0.5}}});
  RunResult b = run_cli("--out " + out.string() + " bump-scan --u " + w + " --sigma " + w +
                        " --window 0 1 --young-a '{\"family\":\"logbump\",\"p\":2.0,"
                        "\"delta\":1.0}' --p 2 --mode separated");
  CHECK(b.code == 0);
  CHECK(fs::exists(out / "bump_scan.csv"));
}

TEST_CASE("finite grid build writes a verifiable dump") {
  fs::path out = sandbox() / "fin_out";
  RunResult r = run_cli("--out " + out.string() +
                        " grid-build --kind finite --circle 48 --seed 3");
  CHECK(r.code == 0);
  RunResult v = run_cli("--out " + out.string() + " grid-verify --grid " +
                        (out / "grid.json").string());
  CHECK(v.code == 0);
}

TEST_CASE("verify-thm runs a small weak-type suite") {
  fs::path out = sandbox() / "thm_out";
  RunResult r = run_cli("--out " + out.string() + " verify-thm --tag weak11 --instances 4");
  CHECK(r.code == 0);
  CHECK(fs::exists(out / "thm_weak11.csv"));
  CHECK(fs::exists(out / "thm_weak11_summary.json"));
}

TEST_CASE("sparse build and apply round trip through files") {
  using bumplab::io::json;
  std::string f = write_json(
      "spike.json", json{{"breakpoints", {0.0, 0.125}}, {"values", {8.0}}});
  fs::path out = sandbox() / "sp_out";
  RunResult b = run_cli("--out " + out.string() + " sparse-build --f " + f +
                        " --window 0 1 --depth 3 --a 4");
  REQUIRE(b.code == 0);
  RunResult a = run_cli("--out " + out.string() + " sparse-apply --family " +
                        (out / "sparse_family.json").string() + " --f " + f);
  CHECK(a.code == 0);
  CHECK(fs::exists(out / "sparse_apply.json"));
}
