#include "nukc/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace nukc {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(fmt::format("missing field \"{}\"", key));
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(fmt::format("field \"{}\": {}", what, e.what()));
  }
}

MetricSpace metric_from_json(const Json& j) {
  const auto type = get<std::string>(field(j, "type"), "metric.type");
  if (type == "matrix") return MetricSpace::from_matrix(get<std::vector<std::vector<double>>>(field(j, "d"), "metric.d"));
  if (type == "points") {
    const auto norm = get<std::string>(field(j, "norm"), "metric.norm");
    if (norm != "l1" && norm != "l2") throw InputError("metric.norm must be \"l1\" or \"l2\"");
    return MetricSpace::from_points(get<std::vector<std::vector<double>>>(field(j, "coords"), "metric.coords"),
                                    norm == "l1" ? Norm::kL1 : Norm::kL2);
  }
  throw InputError(fmt::format("unknown metric type \"{}\"", type));
}

Json metric_to_json(const MetricSpace& space) {
  Json j;
  if (space.has_coords()) {
    j["type"] = "points";
    j["coords"] = space.coords();
    j["norm"] = space.norm() == Norm::kL1 ? "l1" : "l2";
    return j;
  }
  j["type"] = "matrix";
  Json rows = Json::array();
  for (PointId p = 0; p < space.size(); ++p) {
    Json row = Json::array();
    for (PointId q = 0; q < space.size(); ++q) row.push_back(space(p, q));
    rows.push_back(std::move(row));
  }
  j["d"] = std::move(rows);
  return j;
}

WeightFn weights_from(const Json& j, const char* key, int n) {
  auto w = get<std::vector<Weight>>(field(j, key), key);
  if (static_cast<int>(w.size()) != n) throw InputError(fmt::format("weights \"{}\" need {} entries", key, n));
  return WeightFn(std::move(w));
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Instance instance_from_json(const Json& j) {
  const auto kind = get<std::string>(field(j, "kind"), "kind");
  MetricSpace space = metric_from_json(field(j, "metric"));
  auto radii = get<std::vector<double>>(field(j, "radii"), "radii");
  auto budgets = get<std::vector<int>>(field(j, "budgets"), "budgets");
  if (radii.size() != budgets.size()) throw InputError("radii and budgets differ in length");
  std::optional<CenterRestriction> restriction;
  if (j.contains("center_restriction")) {
    const Json& r = j.at("center_restriction");
    restriction = make_restriction(space, get<PointSet>(field(r, "set"), "center_restriction.set"),
                                   get<double>(field(r, "separation"), "center_restriction.separation"));
  }
  const int n = space.size();
  if (kind == "nukc") {
    if (restriction) throw InputError("nukc instances take no center restriction");
    return NukcInstance{std::move(space), std::move(radii), std::move(budgets)};
  }
  if (kind == "robust") {
    RobustInstance r{std::move(space), std::move(radii), std::move(budgets), weights_from(field(j, "weights"), "w", n),
                     get<Weight>(field(field(j, "targets"), "m"), "targets.m"), std::move(restriction)};
    return r;
  }
  if (kind == "colorful") {
    const Json& w = field(j, "weights");
    const Json& t = field(j, "targets");
    ColorfulInstance c{std::move(space),         std::move(radii),
                       std::move(budgets),       weights_from(w, "red", n),
                       weights_from(w, "blue", n), get<Weight>(field(t, "mr"), "targets.mr"),
                       get<Weight>(field(t, "mb"), "targets.mb"), std::move(restriction)};
    return c;
  }
  throw InputError(fmt::format("unknown instance kind \"{}\"", kind));
}

Json instance_to_json(const Instance& instance) {
  Json j;
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, NukcInstance>) j["kind"] = "nukc";
        if constexpr (std::is_same_v<T, RobustInstance>) j["kind"] = "robust";
        if constexpr (std::is_same_v<T, ColorfulInstance>) j["kind"] = "colorful";
        j["metric"] = metric_to_json(inst.space);
        j["radii"] = inst.radii;
        j["budgets"] = inst.budgets;
        if constexpr (std::is_same_v<T, RobustInstance>) {
          j["weights"] = {{"w", inst.weight.values()}};
          j["targets"] = {{"m", inst.target}};
        }
        if constexpr (std::is_same_v<T, ColorfulInstance>) {
          j["weights"] = {{"red", inst.red.values()}, {"blue", inst.blue.values()}};
          j["targets"] = {{"mr", inst.red_target}, {"mb", inst.blue_target}};
        }
        if constexpr (!std::is_same_v<T, NukcInstance>) {
          if (inst.restriction) {
            j["center_restriction"] = {{"set", inst.restriction->candidates},
                                       {"separation", inst.restriction->separation}};
          }
        }
      },
      instance);
  return j;
}

Solution solution_from_json(const Json& j) {
  Solution s;
  const Json& levels = field(j, "levels");
  if (!levels.is_array()) throw InputError("\"levels\" must be an array");
  s.levels.resize(levels.size());
  std::vector<char> seen(levels.size(), 0);
  for (const Json& level : levels) {
    const int i = get<int>(field(level, "radius_index"), "radius_index");
    if (i < 0 || i >= static_cast<int>(levels.size()) || seen[i]) throw InputError("bad or repeated radius_index");
    seen[i] = 1;
    s.levels[i].radius = get<double>(field(level, "realized_radius"), "realized_radius");
    s.levels[i].centers = get<PointSet>(field(level, "centers"), "centers");
  }
  return s;
}

Json solution_to_json(const Solution& solution) {
  Json levels = Json::array();
  for (int i = 0; i < solution.level_count(); ++i) {
    levels.push_back({{"radius_index", i},
                      {"realized_radius", solution.levels[i].radius},
                      {"centers", solution.levels[i].centers}});
  }
  Json j;
  j["levels"] = std::move(levels);
  return j;
}

Json solution_to_json(const Solution& solution, const VerificationReport& report) {
  Json j = solution_to_json(solution);
  j["report"] = report_to_json(report);
  return j;
}

Json report_to_json(const VerificationReport& report) {
  Json dil = Json::array();
  for (double a : report.dilation) dil.push_back(number(a));
  Json j;
  j["pass"] = report.pass();
  j["dilation"] = std::move(dil);
  j["max_dilation"] = number(report.max_dilation);
  j["covered_points"] = report.covered_points;
  j["covered_weight"] = report.covered_weight;
  j["covered_red"] = report.covered_red;
  j["covered_blue"] = report.covered_blue;
  j["budgets_ok"] = report.budgets_ok;
  j["radii_ok"] = report.radii_ok;
  j["coverage_ok"] = report.coverage_ok;
  j["restriction_ok"] = report.restriction_ok;
  j["failures"] = report.failures;
  return j;
}

Json ledger_to_json(const DilationLedger& ledger) {
  Json stages = Json::array();
  for (const auto& s : ledger.stages) stages.push_back({{"stage", s.name}, {"transform", s.transform}});
  Json dil = Json::array();
  for (double a : ledger.realized_dilation) dil.push_back(number(a));
  Json j;
  j["stages"] = std::move(stages);
  j["merged_radii"] = ledger.merged_radii;
  j["bound_radius"] = ledger.bound_radius;
  j["realized_radius"] = ledger.realized_radius;
  j["realized_dilation"] = std::move(dil);
  j["composed_constant"] = ledger.composed_constant;
  j["route"] = ledger.route;
  j["iterations"] = ledger.iterations;
  j["iteration_cap"] = ledger.iteration_cap;
  return j;
}

Json greedy_to_json(const GreedyOutput& output) {
  Json clusters = Json::array();
  for (int j = 0; j < output.size(); ++j) {
    clusters.push_back({{"mega_point", output.mega_points[j]},
                        {"weight", output.weights[j]},
                        {"members", output.clusters[j]}});
  }
  Json j;
  j["radius"] = output.radius;
  j["gamma"] = output.gamma;
  j["clusters"] = std::move(clusters);
  return j;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open {}", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError(fmt::format("cannot write {}", path));
  out << text;
}

}  // namespace nukc
