#include <cmath>

#include <json.hpp>

#include "mtmclp/errors.hpp"
#include "mtmclp/io.hpp"

namespace mtmclp {

using OrderedJson = nlohmann::ordered_json;

namespace {

OrderedJson finite_or_null(double v) { return std::isfinite(v) ? OrderedJson(v) : OrderedJson(nullptr); }

double number_or(const nlohmann::json& j, const char* key, double fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_number()) throw InputError(std::string("solution field '") + key + "': expected a number");
  return it->get<double>();
}

}  // namespace

std::string emit_solution(const Instance& instance, const SolveReport& report) {
  const Solution& sol = report.solution;
  OrderedJson doc;
  doc["format"] = "mtmclp-solution";
  doc["version"] = kSolutionFormatVersion;
  doc["instance"] = instance.name;
  doc["method"] = report.method;
  doc["status"] = to_string(report.status);
  doc["objective"] = sol.objective;
  doc["bound"] = finite_or_null(report.bound);
  doc["gap"] = finite_or_null(report.gap);

  OrderedJson open = OrderedJson::array();
  for (std::size_t t = 0; t < instance.discrete_types.size(); ++t) {
    OrderedJson sites = OrderedJson::array();
    if (t < sol.assignment.open_sites.size()) {
      for (int j : sol.assignment.open_sites[t]) sites.push_back(j);
    }
    open.push_back(std::move(sites));
  }
  doc["open_sites"] = std::move(open);

  OrderedJson centers = OrderedJson::array();
  OrderedJson clusters = OrderedJson::array();
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    OrderedJson cs = OrderedJson::array();
    OrderedJson qs = OrderedJson::array();
    if (t < sol.centers.size()) {
      for (std::size_t k = 0; k < sol.centers[t].size(); ++k) {
        OrderedJson c = OrderedJson::array();
        for (double v : sol.centers[t][k].coords()) c.push_back(v);
        cs.push_back(std::move(c));
        OrderedJson q = OrderedJson::array();
        if (t < sol.assignment.continuous_cover.size() && k < sol.assignment.continuous_cover[t].size()) {
          for (int i : sol.assignment.cluster(t, k)) q.push_back(i);
        }
        qs.push_back(std::move(q));
      }
    }
    centers.push_back(std::move(cs));
    clusters.push_back(std::move(qs));
  }
  doc["centers"] = std::move(centers);
  doc["clusters"] = std::move(clusters);

  OrderedJson covered = OrderedJson::array();
  if (report.status != SolveStatus::NoSolution) {
    const EvaluationReport ev = evaluate(instance, sol);
    for (std::size_t i = 0; i < ev.covered.size(); ++i) {
      if (ev.covered[i]) covered.push_back(i);
    }
  }
  doc["covered"] = std::move(covered);

  OrderedJson stats;
  stats["nodes"] = report.nodes;
  stats["lp_iterations"] = report.lp_iterations;
  stats["variables"] = report.variables;
  stats["constraints"] = report.constraints;
  stats["pool_cuts"] = report.pool_cuts;
  stats["lazy_cuts"] = report.lazy_cuts;
  doc["stats"] = std::move(stats);
  return doc.dump(2) + "\n";
}

SolutionDocument parse_solution(std::string_view text, const Instance& instance) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("solution: malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "mtmclp-solution") {
    throw InputError("solution: missing \"format\": \"mtmclp-solution\"");
  }
  SolutionDocument out;
  out.instance = doc.value("instance", "");
  out.method = doc.value("method", "");
  out.status = doc.value("status", "");
  out.objective = number_or(doc, "objective", 0.0);
  out.bound = number_or(doc, "bound", INFINITY);
  out.gap = number_or(doc, "gap", INFINITY);

  try {
    const auto& open = doc.at("open_sites");
    if (open.size() != instance.discrete_types.size()) {
      throw InputError("solution: open_sites has " + std::to_string(open.size()) + " types, instance has " +
                       std::to_string(instance.discrete_types.size()));
    }
    std::vector<std::vector<int>> sites(open.size());
    for (std::size_t t = 0; t < open.size(); ++t) {
      for (const auto& j : open[t]) {
        const int idx = j.get<int>();
        if (idx < 0 || static_cast<std::size_t>(idx) >= instance.discrete_types[t].sites.size()) {
          throw InputError("solution: open site index " + std::to_string(idx) + " out of range");
        }
        sites[t].push_back(idx);
      }
    }
    const auto& centers = doc.at("centers");
    if (centers.size() != instance.continuous_types.size()) {
      throw InputError("solution: centers has " + std::to_string(centers.size()) + " types, instance has " +
                       std::to_string(instance.continuous_types.size()));
    }
    std::vector<std::vector<Point>> pts(centers.size());
    for (std::size_t t = 0; t < centers.size(); ++t) {
      for (const auto& c : centers[t]) pts[t].emplace_back(c.get<std::vector<double>>());
    }
    out.solution.centers = pts;
    out.solution.assignment = assignment_from_facilities(instance, sites, pts);
    out.solution.assignment.open_sites = sites;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("solution: ") + e.what());
  }
  out.solution.objective = evaluate(instance, out.solution).objective;
  return out;
}

}  // namespace mtmclp
