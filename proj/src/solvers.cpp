#include "mtmclp/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "mtmclp/errors.hpp"
#include "mtmclp/separation.hpp"

namespace mtmclp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

SolveStatus from_bnb(milp::BnBStatus status) {
  switch (status) {
    case milp::BnBStatus::Optimal:
      return SolveStatus::Optimal;
    case milp::BnBStatus::Feasible:
      return SolveStatus::Feasible;
    default:
      return SolveStatus::NoSolution;
  }
}

void finish_solution(const Instance& instance, Solution& solution) {
  std::vector<std::vector<int>> open = solution.assignment.open_sites;
  solution.assignment = assignment_from_facilities(instance, open, solution.centers);
  solution.objective = evaluate(instance, solution).objective;
}

// Sorts each type's slots by covered weight so the symmetry chain holds.
void order_slots(const Instance& instance, Solution& solution) {
  for (std::size_t t = 0; t < solution.centers.size(); ++t) {
    const auto& flags = solution.assignment.continuous_cover[t];
    std::vector<std::pair<double, std::size_t>> keyed;
    for (std::size_t k = 0; k < flags.size(); ++k) {
      double w = 0.0;
      for (std::size_t i = 0; i < flags[k].size(); ++i) {
        if (flags[k][i]) w += instance.demand[i].weight;
      }
      keyed.emplace_back(w, k);
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Point> centers;
    std::vector<std::vector<std::uint8_t>> cover;
    for (auto [w, k] : keyed) {
      centers.push_back(solution.centers[t][k]);
      cover.push_back(flags[k]);
    }
    solution.centers[t] = std::move(centers);
    solution.assignment.continuous_cover[t] = std::move(cover);
  }
}

std::optional<std::vector<double>> incomplete_ip_point(const IpModel& ip, const Instance& instance,
                                                       Solution solution) {
  order_slots(instance, solution);
  const Assignment& a = solution.assignment;
  std::vector<double> x(ip.model.num_variables(), 0.0);
  const IpLayout& layout = ip.layout;
  for (std::size_t t = 0; t < layout.site_vars.size(); ++t) {
    if (layout.site_vars[t].empty()) continue;
    for (int j : a.open_sites[t]) x[layout.site_vars[t][j]] = 1.0;
    for (std::size_t i = 0; i < layout.cover_vars[t].size(); ++i) {
      if (a.discrete_cover[t][i]) x[layout.cover_vars[t][i]] = 1.0;
    }
  }
  for (std::size_t t = 0; t < layout.slot_vars.size(); ++t) {
    for (std::size_t k = 0; k < layout.slot_vars[t].size(); ++k) {
      for (std::size_t i = 0; i < layout.slot_vars[t][k].size(); ++i) {
        if (a.continuous_cover[t][k][i]) x[layout.slot_vars[t][k][i]] = 1.0;
      }
    }
  }
  if (ip.model.max_violation(x) > 1e-9) return std::nullopt;
  if (!separate(a, instance).empty()) return std::nullopt;
  return x;
}

void check_separation_support(const Instance& instance) {
  for (const ContinuousTypeSpec& s : instance.continuous_types) {
    if (s.count > 0 && !separation_supported(s.norm, instance.dimension)) {
      throw_capability("branch-and-cut separation does not support norm " + s.norm.to_string() +
                       " in dimension " + std::to_string(instance.dimension));
    }
  }
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::Bnc:
      return "bnc";
    case Method::Bips:
      return "bips";
    case Method::Sequential:
      return "seq";
    case Method::Brute:
      return "brute";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "bnc") return Method::Bnc;
  if (name == "bips") return Method::Bips;
  if (name == "seq") return Method::Sequential;
  if (name == "brute") return Method::Brute;
  throw_input("unknown method '" + name + "' (expected bnc, bips, seq or brute)");
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Feasible:
      return "feasible";
    case SolveStatus::NoSolution:
      return "no-solution";
  }
  return "?";
}

std::vector<std::vector<Point>> recover_centers(const Instance& instance,
                                                const Assignment& assignment) {
  std::vector<std::vector<Point>> centers(instance.continuous_types.size());
  const std::vector<Point> pts = instance.points();
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    const ContinuousTypeSpec& spec = instance.continuous_types[t];
    const std::size_t slots = static_cast<std::size_t>(std::max(spec.count, 0));
    for (std::size_t k = 0; k < slots; ++k) {
      const std::vector<int> q =
          t < assignment.continuous_cover.size() && k < assignment.continuous_cover[t].size()
              ? assignment.cluster(t, k)
              : std::vector<int>{};
      if (q.empty()) {
        centers[t].push_back(pts.front());
        continue;
      }
      const FeasibilityCertificate cert = cluster_feasible(q, pts, spec.radius, spec.norm);
      if (!cert.feasible) {
        throw_contract("slot (" + std::to_string(t) + ", " + std::to_string(k) +
                       ") holds a cluster without a common center");
      }
      centers[t].push_back(*cert.center);
    }
  }
  return centers;
}

Solution greedy_solution(const Instance& instance) {
  const std::size_t n = instance.size();
  std::vector<std::uint8_t> taken(n, 0);
  auto gain_of = [&](const std::vector<int>& members) {
    double g = 0.0;
    for (int i : members) {
      if (!taken[i]) g += instance.demand[i].weight;
    }
    return g;
  };
  Solution sol;
  sol.assignment.open_sites.resize(instance.discrete_types.size());
  for (std::size_t t = 0; t < instance.discrete_types.size(); ++t) {
    const DiscreteTypeSpec& spec = instance.discrete_types[t];
    std::vector<std::vector<int>> reach(spec.sites.size());
    for (std::size_t j = 0; j < spec.sites.size(); ++j) {
      reach[j] = covered_by(instance, spec.sites[j], spec.radii[j], spec.norm);
    }
    std::vector<char> used(spec.sites.size(), 0);
    for (int c = 0; c < spec.count; ++c) {
      int best = -1;
      double best_gain = -1.0;
      for (std::size_t j = 0; j < spec.sites.size(); ++j) {
        if (used[j]) continue;
        const double g = gain_of(reach[j]);
        if (g > best_gain) {
          best = static_cast<int>(j);
          best_gain = g;
        }
      }
      used[best] = 1;
      sol.assignment.open_sites[t].push_back(best);
      for (int i : reach[best]) taken[i] = 1;
    }
    std::sort(sol.assignment.open_sites[t].begin(), sol.assignment.open_sites[t].end());
  }
  sol.centers.resize(instance.continuous_types.size());
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    const ContinuousTypeSpec& spec = instance.continuous_types[t];
    std::vector<std::vector<int>> reach(n);
    for (std::size_t i = 0; i < n; ++i) {
      reach[i] = covered_by(instance, instance.demand[i].point, spec.radius, spec.norm);
    }
    std::vector<char> used(n, 0);
    for (int c = 0; c < spec.count; ++c) {
      int best = -1;
      double best_gain = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        const double g = gain_of(reach[i]);
        if (g > best_gain) {
          best = static_cast<int>(i);
          best_gain = g;
        }
      }
      if (best < 0) best = 0;
      used[best] = 1;
      sol.centers[t].push_back(instance.demand[best].point);
      for (int i : reach[best]) taken[i] = 1;
    }
  }
  finish_solution(instance, sol);
  return sol;
}

// --- Branch-and-cut -------------------------------------------------------------

SolveReport solve_bnc(const Instance& instance, const SolveOptions& options) {
  validate(instance);
  check_separation_support(instance);
  SolveReport report;
  report.method = "bnc";
  const auto t0 = Clock::now();

  CutPool pool;
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    const ContinuousTypeSpec& spec = instance.continuous_types[t];
    if (spec.count <= 0 || options.pool_fractions.empty()) continue;
    std::vector<double> eps;
    for (double f : options.pool_fractions) eps.push_back(f * spec.radius);
    pool.merge(initial_cut_pool(instance, t, eps));
  }
  report.times.preprocessing = seconds_since(t0);

  const auto t1 = Clock::now();
  IpBuildOptions build;
  build.symmetry = options.symmetry;
  build.pairwise = options.pairwise;
  const IpModel ip = build_incomplete_ip(instance, pool.cuts(), build);
  report.times.constraint_generation = seconds_since(t1);
  report.pool_cuts = pool.size();
  report.cuts = pool.cuts();

  std::set<Cut> seen;
  const milp::LazyCallback callback = [&](std::span<const double> values) {
    const Assignment a = decode_assignment(instance, ip.layout, values);
    std::vector<milp::Constraint> rows;
    for (const Cut& cut : separate(a, instance)) {
      if (seen.insert(cut).second) report.cuts.push_back(cut);
      for (milp::Constraint& row : cut_rows(ip.layout, cut)) rows.push_back(std::move(row));
    }
    return rows;
  };

  milp::BnBOptions bnb;
  bnb.record_trace = options.record_trace;
  if (options.warm_start) bnb.initial_solution = incomplete_ip_point(ip, instance, greedy_solution(instance));
  milp::BnBResult res = milp::branch_and_bound(ip.model, callback, options.limits, bnb);

  report.status = from_bnb(res.status);
  report.bound = res.bound;
  report.gap = res.gap;
  report.times.callback = res.stats.callback_seconds;
  report.times.solving = res.stats.total_seconds - res.stats.callback_seconds;
  report.constraints = res.final_constraint_count;
  report.variables = ip.model.num_variables();
  report.lazy_cuts = seen.size();
  report.nodes = res.stats.nodes;
  report.lp_iterations = res.stats.lp_iterations;
  report.trace = std::move(res.trace);
  if (report.status != SolveStatus::NoSolution) {
    const Assignment a = decode_assignment(instance, ip.layout, res.incumbent);
    report.solution.assignment = a;
    report.solution.centers = recover_centers(instance, a);
    finish_solution(instance, report.solution);
  }
  report.times.total = seconds_since(t0);
  return report;
}

// --- BIPS -------------------------------------------------------------------------

namespace {

std::optional<std::vector<double>> bips_point(const BipsModel& bm, const Instance& instance,
                                              const Solution& solution) {
  const BipsLayout& layout = bm.layout;
  std::vector<double> x(bm.model.num_variables(), 0.0);
  for (std::size_t t = 0; t < layout.site_vars.size(); ++t) {
    for (int j : solution.assignment.open_sites[t]) {
      if (layout.site_vars[t].empty()) return std::nullopt;
      x[layout.site_vars[t][j]] = 1.0;
    }
  }
  for (std::size_t t = 0; t < layout.candidate_vars.size(); ++t) {
    std::map<Point, std::size_t> where;
    for (std::size_t l = 0; l < layout.candidates[t].size(); ++l) where.emplace(layout.candidates[t][l], l);
    for (const Point& c : solution.centers[t]) {
      auto it = where.find(c);
      if (it == where.end()) return std::nullopt;
      x[layout.candidate_vars[t][it->second]] = 1.0;
    }
  }
  const EvaluationReport ev = evaluate(instance, solution);
  for (std::size_t i = 0; i < layout.cover_vars.size(); ++i) {
    if (ev.covered[i]) x[layout.cover_vars[i]] = 1.0;
  }
  if (bm.model.max_violation(x) > 1e-9) return std::nullopt;
  return x;
}

}  // namespace

SolveReport solve_bips(const Instance& instance, const SolveOptions& options) {
  validate(instance);
  SolveReport report;
  report.method = "bips";
  const auto t0 = Clock::now();
  std::vector<std::vector<Point>> candidates(instance.continuous_types.size());
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) {
    if (instance.continuous_types[t].count > 0) candidates[t] = build_bips(instance, t);
  }
  report.times.preprocessing = seconds_since(t0);

  const auto t1 = Clock::now();
  const BipsModel bm = build_bips_ip(instance, std::move(candidates));
  report.times.constraint_generation = seconds_since(t1);

  milp::BnBOptions bnb;
  bnb.record_trace = options.record_trace;
  if (options.warm_start) bnb.initial_solution = bips_point(bm, instance, greedy_solution(instance));
  milp::BnBResult res = milp::branch_and_bound(bm.model, {}, options.limits, bnb);

  report.status = from_bnb(res.status);
  report.bound = res.bound;
  report.gap = res.gap;
  report.times.solving = res.stats.total_seconds;
  report.constraints = res.final_constraint_count;
  report.variables = bm.model.num_variables();
  report.nodes = res.stats.nodes;
  report.lp_iterations = res.stats.lp_iterations;
  report.trace = std::move(res.trace);
  if (report.status != SolveStatus::NoSolution) {
    const BipsLayout& layout = bm.layout;
    Solution& sol = report.solution;
    sol.assignment.open_sites.resize(instance.discrete_types.size());
    for (std::size_t t = 0; t < layout.site_vars.size(); ++t) {
      for (std::size_t j = 0; j < layout.site_vars[t].size(); ++j) {
        if (res.incumbent[layout.site_vars[t][j]] > 0.5) sol.assignment.open_sites[t].push_back(static_cast<int>(j));
      }
    }
    sol.centers.resize(instance.continuous_types.size());
    for (std::size_t t = 0; t < layout.candidate_vars.size(); ++t) {
      for (std::size_t l = 0; l < layout.candidate_vars[t].size(); ++l) {
        if (res.incumbent[layout.candidate_vars[t][l]] > 0.5) sol.centers[t].push_back(layout.candidates[t][l]);
      }
      while (sol.centers[t].size() < static_cast<std::size_t>(std::max(instance.continuous_types[t].count, 0))) {
        sol.centers[t].push_back(instance.demand.front().point);
      }
    }
    finish_solution(instance, sol);
  }
  report.times.total = seconds_since(t0);
  return report;
}

// --- Sequential baselines ---------------------------------------------------------

StageOrder discrete_first(const Instance& instance) {
  StageOrder order(2);
  for (std::size_t t = 0; t < instance.discrete_types.size(); ++t) order[0].push_back({false, t});
  for (std::size_t t = 0; t < instance.continuous_types.size(); ++t) order[1].push_back({true, t});
  return order;
}

StageOrder continuous_first(const Instance& instance) {
  StageOrder order = discrete_first(instance);
  std::swap(order[0], order[1]);
  return order;
}

StageOrder parse_order(const std::string& text, const Instance& instance) {
  if (text == "discrete-first") return discrete_first(instance);
  if (text == "continuous-first") return continuous_first(instance);
  StageOrder order;
  std::stringstream stages(text);
  std::string stage;
  while (std::getline(stages, stage, '>')) {
    order.emplace_back();
    std::stringstream items(stage);
    std::string item;
    while (std::getline(items, item, ',')) {
      if (item.size() < 2 || (item[0] != 'd' && item[0] != 'c')) {
        throw_input("bad order item '" + item + "' (expected d<index> or c<index>)");
      }
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(item.substr(1), &used);
        if (used + 1 != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw_input("bad order item '" + item + "'");
      }
      const std::size_t limit =
          item[0] == 'c' ? instance.continuous_types.size() : instance.discrete_types.size();
      if (idx >= limit) throw_input("order item '" + item + "' refers to a missing type");
      order.back().push_back(TypeRef{item[0] == 'c', idx});
    }
  }
  return order;
}

std::string format_order(const StageOrder& order) {
  std::string out;
  for (std::size_t s = 0; s < order.size(); ++s) {
    if (s) out += '>';
    for (std::size_t i = 0; i < order[s].size(); ++i) {
      if (i) out += ',';
      out += (order[s][i].continuous ? 'c' : 'd') + std::to_string(order[s][i].index);
    }
  }
  return out;
}

SolveReport solve_sequential(const Instance& instance, const StageOrder& order,
                             Method stage_method, const SolveOptions& options) {
  validate(instance);
  if (stage_method != Method::Bnc && stage_method != Method::Bips) {
    throw_input("sequential stages run with bnc or bips");
  }
  std::set<std::pair<bool, std::size_t>> mentioned;
  for (const auto& stage : order) {
    for (const TypeRef& r : stage) {
      const std::size_t limit = r.continuous ? instance.continuous_types.size() : instance.discrete_types.size();
      if (r.index >= limit) throw_input("order refers to a missing type " + format_order({{r}}));
      if (!mentioned.insert({r.continuous, r.index}).second) {
        throw_input("order mentions type " + format_order({{r}}) + " twice");
      }
    }
  }
  if (mentioned.size() != instance.discrete_types.size() + instance.continuous_types.size()) {
    throw_input("order must mention every facility type exactly once");
  }

  const auto t0 = Clock::now();
  SolveReport report;
  report.method = std::string("seq(") + format_order(order) + ")";
  report.status = SolveStatus::Optimal;
  Solution& sol = report.solution;
  sol.assignment.open_sites.resize(instance.discrete_types.size());
  sol.centers.resize(instance.continuous_types.size());
  std::vector<std::uint8_t> covered(instance.size(), 0);

  for (const auto& stage : order) {
    Instance sub;
    sub.name = instance.name;
    sub.dimension = instance.dimension;
    for (std::size_t i = 0; i < instance.size(); ++i) {
      if (!covered[i] && instance.demand[i].weight > 0.0) sub.demand.push_back(instance.demand[i]);
    }
    sub.discrete_types = instance.discrete_types;
    sub.continuous_types = instance.continuous_types;
    for (auto& d : sub.discrete_types) d.count = 0;
    for (auto& c : sub.continuous_types) c.count = 0;
    int requested = 0;
    for (const TypeRef& r : stage) {
      if (r.continuous) {
        requested += sub.continuous_types[r.index].count = instance.continuous_types[r.index].count;
      } else {
        requested += sub.discrete_types[r.index].count = instance.discrete_types[r.index].count;
      }
    }
    if (requested == 0) continue;

    if (sub.demand.empty()) {
      // Nothing left to cover: place the stage's facilities arbitrarily.
      for (const TypeRef& r : stage) {
        if (r.continuous) {
          sol.centers[r.index].assign(static_cast<std::size_t>(instance.continuous_types[r.index].count),
                                      instance.demand.front().point);
        } else {
          for (int j = 0; j < instance.discrete_types[r.index].count; ++j) sol.assignment.open_sites[r.index].push_back(j);
        }
      }
      continue;
    }

    const SolveReport part = stage_method == Method::Bnc ? solve_bnc(sub, options) : solve_bips(sub, options);
    if (part.status == SolveStatus::NoSolution) {
      report.status = SolveStatus::NoSolution;
      break;
    }
    if (part.status == SolveStatus::Feasible) report.status = SolveStatus::Feasible;
    report.times.preprocessing += part.times.preprocessing;
    report.times.constraint_generation += part.times.constraint_generation;
    report.times.solving += part.times.solving;
    report.times.callback += part.times.callback;
    report.constraints += part.constraints;
    report.variables += part.variables;
    report.pool_cuts += part.pool_cuts;
    report.lazy_cuts += part.lazy_cuts;
    report.nodes += part.nodes;
    report.lp_iterations += part.lp_iterations;
    for (const TypeRef& r : stage) {
      if (r.continuous) {
        sol.centers[r.index] = part.solution.centers[r.index];
        for (const Point& c : sol.centers[r.index]) {
          const ContinuousTypeSpec& spec = instance.continuous_types[r.index];
          for (int i : covered_by(instance, c, spec.radius, spec.norm)) covered[i] = 1;
        }
      } else {
        sol.assignment.open_sites[r.index] = part.solution.assignment.open_sites[r.index];
        const DiscreteTypeSpec& spec = instance.discrete_types[r.index];
        for (int j : sol.assignment.open_sites[r.index]) {
          for (int i : covered_by(instance, spec.sites[j], spec.radii[j], spec.norm)) covered[i] = 1;
        }
      }
    }
  }
  if (report.status != SolveStatus::NoSolution) {
    finish_solution(instance, sol);
    report.bound = sol.objective;
  }
  report.times.total = seconds_since(t0);
  return report;
}

}  // namespace mtmclp
