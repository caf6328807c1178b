#pragma once

#include <string>

#include <json.hpp>

#include "bumplab/bump.hpp"
#include "bumplab/experiments.hpp"
#include "bumplab/space.hpp"
#include "bumplab/sparse.hpp"
#include "bumplab/step.hpp"
#include "bumplab/young.hpp"

namespace bumplab::io {

using nlohmann::json;

// every float in emitted text carries 17 significant digits
std::string format_double(double v);

json to_json(const StepFunction& f);
StepFunction step_from_json(const json& j);

json to_json(const YoungFunction& A);
YoungFunction young_from_json(const json& j);

json to_json(const FiniteSpace& sp);
FiniteSpace space_from_json(const json& j);

json to_json(const DyadicGrid& g);
DyadicGrid grid_from_json(const json& j);

json to_json(const SparseFamily& S);
SparseFamily sparse_from_json(const json& j);

json to_json(const BumpReport& rep);
std::string bump_report_csv_row(const BumpReport& rep);

std::string report_csv(const NormExperimentReport& rep);
json report_summary(const NormExperimentReport& rep);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace bumplab::io
