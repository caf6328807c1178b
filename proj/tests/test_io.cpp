#include <doctest.h>

#include <cmath>

#include "bumplab/io.hpp"
#include "bumplab/sparse.hpp"

using namespace bumplab;

TEST_CASE("young function JSON round trips across families") {
  for (const YoungFunction& A :
       {YoungFunction::power(2.5), YoungFunction::scaled_power(1.0, 3.0),
        YoungFunction::log_bump(2.0, 1.0), YoungFunction::power_log(1.5, -1.25),
        YoungFunction::product(YoungFunction::power(2.0), YoungFunction::log_bump(2.0, 0.5)),
        YoungFunction::conjugate_of(YoungFunction::log_bump(2.0, 1.0))}) {
    YoungFunction B = io::young_from_json(io::to_json(A));
    for (double t : {0.1, 1.0, 7.3, 1e3})
      CHECK(B.eval(t) == doctest::Approx(A.eval(t)).epsilon(1e-12));
  }
  // the documented wire shape
  io::json j = io::to_json(YoungFunction::log_bump(2.0, 1.0));
  CHECK(j.at("family") == "logbump");
  CHECK(j.at("p").get<double>() == 2.0);
  CHECK(j.at("delta").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("step function JSON round trip") {
  StepFunction f({0.0, 0.25, 1.0}, {2.0, 0.5});
  StepFunction g = io::step_from_json(io::to_json(f));
  CHECK(g.breakpoints() == f.breakpoints());
  CHECK(g.values() == f.values());
  CHECK_THROWS(io::step_from_json(io::json{{"breakpoints", {0.0}}}));
}

TEST_CASE("sparse family dump keeps cubes, levels and witnesses") {
  auto g = std::make_shared<DyadicGrid>(line_grid(0.0, -3, 0, {0.0, 1.0}));
  StepFunction spike({0.0, 0.125}, {8.0});
  LevelFamilyResult res =
      sparse_from_levels(spike, g, YoungFunction::scaled_power(1.0, 1.0), 4.0);
  SparseFamily back = io::sparse_from_json(io::to_json(res.family));
  REQUIRE(back.size() == res.family.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back.members()[i].cube.gen == res.family.members()[i].cube.gen);
    CHECK(back.members()[i].witness.measure() ==
          doctest::Approx(res.family.members()[i].witness.measure()));
  }
  back.check_invariants();
}

TEST_CASE("floats serialize with 17 significant digits") {
  std::string s = io::format_double(1.0 / 3.0);
  CHECK(s == "0.33333333333333331");
}
