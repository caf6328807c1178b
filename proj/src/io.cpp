#include "bumplab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bumplab/errors.hpp"

namespace bumplab::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json to_json(const StepFunction& f) {
  return json{{"breakpoints", f.breakpoints()}, {"values", f.values()}};
}

StepFunction step_from_json(const json& j) {
  if (!j.contains("breakpoints") || !j.contains("values"))
    throw ParameterError("step function file needs 'breakpoints' and 'values'");
  return StepFunction(j.at("breakpoints").get<std::vector<double>>(),
                      j.at("values").get<std::vector<double>>());
}

json to_json(const YoungFunction& A) {
  switch (A.family()) {
    case YoungFunction::Family::Power:
      if (A.param_c() == 1.0) return json{{"family", "power"}, {"p", A.param_p()}};
      return json{{"family", "scaledpower"}, {"p", A.param_p()}, {"c", A.param_c()}};
    case YoungFunction::Family::PowerLog: {
      double p = A.param_p(), beta = A.param_beta();
      if (A.param_c() == 1.0 && p > 1.0 && beta > p - 1.0)
        return json{{"family", "logbump"}, {"p", p}, {"delta", beta - (p - 1.0)}};
      return json{{"family", "powerlog"}, {"p", p}, {"beta", beta}, {"c", A.param_c()}};
    }
    case YoungFunction::Family::Product:
      return json{{"family", "product"},
                  {"left", to_json(A.factor_left())},
                  {"right", to_json(A.factor_right())}};
    case YoungFunction::Family::Conjugate:
      return json{{"family", "conjugate"}, {"of", to_json(A.conjugate_inner())}};
  }
  throw ParameterError("unknown young function family");
}

YoungFunction young_from_json(const json& j) {
  std::string family = j.at("family").get<std::string>();
  if (family == "power") return YoungFunction::power(j.at("p").get<double>());
  if (family == "scaledpower")
    return YoungFunction::scaled_power(j.at("p").get<double>(), j.at("c").get<double>());
  if (family == "logbump")
    return YoungFunction::log_bump(j.at("p").get<double>(), j.at("delta").get<double>());
  if (family == "powerlog")
    return YoungFunction::power_log(j.at("p").get<double>(), j.at("beta").get<double>(),
                                    j.value("c", 1.0));
  if (family == "product")
    return YoungFunction::product(young_from_json(j.at("left")),
                                  young_from_json(j.at("right")));
  if (family == "conjugate") return YoungFunction::conjugate_of(young_from_json(j.at("of")));
  throw ParameterError("unknown young function family: " + family);
}

json to_json(const FiniteSpace& sp) {
  return json{{"n", sp.size()},
              {"dist", sp.dist_table()},
              {"mass", sp.masses()},
              {"K", sp.quasi_triangle_K()},
              {"doubling", sp.doubling_constant()}};
}

FiniteSpace space_from_json(const json& j) {
  return FiniteSpace::from_table(j.at("dist").get<std::vector<double>>(),
                                 j.at("mass").get<std::vector<double>>());
}

json to_json(const DyadicGrid& g) {
  json out;
  out["kind"] = g.kind == DyadicGrid::Kind::Line ? "line" : "finite";
  out["constants"] = {{"eta", g.constants.eta},
                      {"epsilon", g.constants.epsilon},
                      {"outer_C", g.constants.outer_C},
                      {"inner_c", g.constants.inner_c}};
  out["scales"] = g.scales;
  if (g.kind == DyadicGrid::Kind::Line) {
    out["shift"] = g.shift;
    out["window"] = {g.window.lo, g.window.hi};
    out["level_fine"] = g.level_fine;
    out["level_coarse"] = g.level_coarse;
  } else {
    out["space"] = to_json(*g.space);
  }
  json gens = json::array();
  for (const auto& gen : g.gens) {
    json jg = json::array();
    for (const Cube& q : gen) {
      json jq{{"id", q.id}, {"parent", q.parent}, {"mass", q.mass}};
      if (g.kind == DyadicGrid::Kind::Line) {
        jq["lo"] = q.box.lo;
        jq["hi"] = q.box.hi;
        jq["center"] = q.center;
        jq["lattice"] = q.lattice;
      } else {
        jq["points"] = q.points;
        jq["center_point"] = q.center_point;
      }
      jg.push_back(std::move(jq));
    }
    gens.push_back(std::move(jg));
  }
  out["generations"] = std::move(gens);
  return out;
}

DyadicGrid grid_from_json(const json& j) {
  DyadicGrid g;
  std::string kind = j.at("kind").get<std::string>();
  g.kind = kind == "line" ? DyadicGrid::Kind::Line : DyadicGrid::Kind::Finite;
  const json& c = j.at("constants");
  g.constants.eta = c.at("eta").get<double>();
  g.constants.epsilon = c.at("epsilon").get<double>();
  g.constants.outer_C = c.at("outer_C").get<double>();
  g.constants.inner_c = c.at("inner_c").get<double>();
  g.scales = j.at("scales").get<std::vector<double>>();
  if (g.kind == DyadicGrid::Kind::Line) {
    g.shift = j.at("shift").get<double>();
    auto w = j.at("window").get<std::vector<double>>();
    g.window = {w.at(0), w.at(1)};
    g.level_fine = j.at("level_fine").get<int>();
    g.level_coarse = j.at("level_coarse").get<int>();
  } else {
    g.space = std::make_shared<FiniteSpace>(space_from_json(j.at("space")));
  }
  int gi = 0;
  for (const json& jg : j.at("generations")) {
    std::vector<Cube> gen;
    int idx = 0;
    for (const json& jq : jg) {
      Cube q;
      q.id = jq.at("id").get<int>();
      q.parent = jq.at("parent").get<int>();
      q.mass = jq.at("mass").get<double>();
      q.gen = gi;
      q.index_in_gen = idx++;
      if (g.kind == DyadicGrid::Kind::Line) {
        q.box = {jq.at("lo").get<double>(), jq.at("hi").get<double>()};
        q.center = jq.at("center").get<double>();
        q.lattice = jq.at("lattice").get<std::int64_t>();
      } else {
        q.points = jq.at("points").get<std::vector<int>>();
        q.center_point = jq.at("center_point").get<int>();
      }
      gen.push_back(std::move(q));
    }
    g.gens.push_back(std::move(gen));
    ++gi;
  }
  // rebuild child links from parents
  for (gi = 1; gi < g.generations(); ++gi)
    for (Cube& q : g.gens[gi])
      for (Cube& p : g.gens[gi - 1])
        if (p.id == q.parent) p.children.push_back(q.id);
  return g;
}

json to_json(const SparseFamily& S) {
  json members = json::array();
  for (const auto& m : S.members()) {
    json parts = json::array();
    for (const Interval& iv : m.witness.parts()) parts.push_back({iv.lo, iv.hi});
    members.push_back(
        json{{"gen", m.cube.gen}, {"idx", m.cube.idx}, {"level", m.level}, {"witness", parts}});
  }
  return json{{"grid", to_json(S.grid())}, {"members", members}};
}

SparseFamily sparse_from_json(const json& j) {
  auto grid = std::make_shared<DyadicGrid>(grid_from_json(j.at("grid")));
  std::vector<SparseFamily::Member> members;
  for (const json& jm : j.at("members")) {
    SparseFamily::Member m;
    m.cube = {jm.at("gen").get<int>(), jm.at("idx").get<int>()};
    m.level = jm.value("level", 0.0);
    std::vector<Interval> parts;
    for (const json& p : jm.at("witness")) parts.push_back({p.at(0), p.at(1)});
    m.witness = IntervalSet(std::move(parts));
    members.push_back(std::move(m));
  }
  return SparseFamily(grid, std::move(members));
}

json to_json(const BumpReport& rep) {
  const char* kind = rep.kind == BumpKind::Double
                         ? "double"
                         : (rep.kind == BumpKind::SeparatedA ? "separated-A" : "separated-B");
  return json{{"kind", kind},
              {"value", rep.value},
              {"divergent", rep.divergent_flag},
              {"extremal", {rep.extremal.lo, rep.extremal.hi}},
              {"family", rep.family_desc}};
}

std::string bump_report_csv_row(const BumpReport& rep) {
  const char* kind = rep.kind == BumpKind::Double
                         ? "double"
                         : (rep.kind == BumpKind::SeparatedA ? "separated-A" : "separated-B");
  std::ostringstream os;
  os << kind << "," << format_double(rep.value) << "," << format_double(rep.extremal.lo) << ","
     << format_double(rep.extremal.hi);
  return os.str();
}

std::string report_csv(const NormExperimentReport& rep) {
  std::ostringstream os;
  os << "index,size,lhs,rhs,ratio,aux\n";
  for (const InstanceRow& r : rep.rows)
    os << r.index << "," << format_double(r.size) << "," << format_double(r.lhs) << ","
       << format_double(r.rhs) << "," << format_double(r.ratio) << "," << format_double(r.aux)
       << "\n";
  return os.str();
}

json report_summary(const NormExperimentReport& rep) {
  return json{{"tag", rep.tag},
              {"instances", rep.rows.size()},
              {"max_ratio", rep.max_ratio},
              {"slope_vs_size", rep.slope_vs_size},
              {"slope_vs_lambda", rep.slope_vs_lambda},
              {"ok", rep.ok},
              {"detail", rep.detail},
              {"note", "norm constants are not explicit; assertions are boundedness and "
                       "trend statistics over the instance suite"}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParameterError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write file: " + path);
  out << text;
}

}  // namespace bumplab::io
