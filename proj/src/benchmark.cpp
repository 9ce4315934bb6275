#include "mtmclp/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>
#include <tuple>

#include "mtmclp/errors.hpp"

namespace mtmclp {

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void describe(const Instance& inst, BenchmarkRow& row) {
  row.instance = inst.name;
  row.n = inst.size();
  for (const DiscreteTypeSpec& d : inst.discrete_types) {
    if (!row.rho.empty()) {
      row.rho += '|';
      row.p += '|';
    }
    const bool uniform = !d.radii.empty() &&
                         std::all_of(d.radii.begin(), d.radii.end(), [&](double r) { return r == d.radii[0]; });
    row.rho += uniform ? fmt(d.radii[0]) : std::string("var");
    row.p += std::to_string(d.count);
  }
  for (const ContinuousTypeSpec& c : inst.continuous_types) {
    if (!row.rho.empty()) {
      row.rho += '|';
      row.p += '|';
    }
    row.rho += fmt(c.radius);
    row.p += std::to_string(c.count);
  }
}

BenchmarkRow run_one(const Instance& inst, const std::string& method, const SolveOptions& options) {
  BenchmarkRow row;
  describe(inst, row);
  row.method = method;
  try {
    const SolveReport r = run_method(inst, method, options);
    row.status = to_string(r.status);
    row.objective = r.solution.objective;
    row.bound = r.bound;
    row.gap = r.gap;
    row.times = r.times;
    row.constraints = r.constraints;
    row.cuts = r.pool_cuts + r.lazy_cuts;
    row.nodes = r.nodes;
  } catch (const std::exception& e) {
    row.status = "error";
    row.error = e.what();
  }
  return row;
}

}  // namespace

SolveReport run_method(const Instance& instance, const std::string& method,
                       const SolveOptions& options) {
  if (method == "bnc") return solve_bnc(instance, options);
  if (method == "bips") return solve_bips(instance, options);
  if (method == "brute") return brute_force(instance);
  if (method == "seq") return solve_sequential(instance, discrete_first(instance), Method::Bnc, options);
  if (method == "seq-cf") return solve_sequential(instance, continuous_first(instance), Method::Bnc, options);
  throw_input("unknown benchmark method '" + method + "'");
}

std::vector<BenchmarkRow> run_benchmark(const std::vector<Instance>& instances,
                                        const BenchmarkOptions& options) {
  std::vector<std::pair<std::size_t, std::string>> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (const std::string& m : options.methods) jobs.emplace_back(i, m);
  }
  std::vector<BenchmarkRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      rows[j] = run_one(instances[jobs[j].first], jobs[j].second, options.solve);
    }
  };
  const int threads = std::max(1, std::min<int>(options.jobs, static_cast<int>(jobs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return rows;
}

std::string rows_csv(const std::vector<BenchmarkRow>& rows) {
  std::string out =
      "instance,n,rho,p,method,status,objective,bound,MIPGAP,Total,Solving,Prepr.,Ctrs.Gen.,Callback,"
      "#Ctrs,#Cuts,nodes,error\n";
  for (const BenchmarkRow& r : rows) {
    out += csv_cell(r.instance) + ',' + std::to_string(r.n) + ',' + csv_cell(r.rho) + ',' + csv_cell(r.p) + ',' +
           csv_cell(r.method) + ',' + r.status + ',' + fmt(r.objective, "%.10g") + ',' + fmt(r.bound, "%.10g") +
           ',' + fmt(r.gap) + ',' + fmt(r.times.total, "%.4f") + ',' + fmt(r.times.solving, "%.4f") + ',' +
           fmt(r.times.preprocessing, "%.4f") + ',' + fmt(r.times.constraint_generation, "%.4f") + ',' +
           fmt(r.times.callback, "%.4f") + ',' + std::to_string(r.constraints) + ',' + std::to_string(r.cuts) +
           ',' + std::to_string(r.nodes) + ',' + csv_cell(r.error) + '\n';
  }
  return out;
}

std::string aggregate_csv(const std::vector<BenchmarkRow>& rows) {
  struct Acc {
    int runs = 0, solved = 0, gaps = 0;
    double total = 0, solving = 0, prepr = 0, ctrs_gen = 0, callback = 0, gap = 0, ctrs = 0;
  };
  using Key = std::tuple<std::size_t, std::string, std::string, std::string>;
  std::map<Key, Acc> groups;
  std::vector<Key> order;
  for (const BenchmarkRow& r : rows) {
    const Key key{r.n, r.rho, r.p, r.method};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    Acc& a = it->second;
    ++a.runs;
    if (r.solved()) {
      ++a.solved;
      a.total += r.times.total;
      a.solving += r.times.solving;
      a.prepr += r.times.preprocessing;
      a.ctrs_gen += r.times.constraint_generation;
      a.callback += r.times.callback;
      a.ctrs += static_cast<double>(r.constraints);
    } else if (r.status == "feasible" && std::isfinite(r.gap)) {
      ++a.gaps;
      a.gap += r.gap;
    }
  }
  std::string out = "n,rho,p,method,runs,solved,#Unsolved,Total,Solving,Prepr.,Ctrs.Gen.,Callback,MIPGAP,#Ctrs\n";
  for (const Key& key : order) {
    const Acc& a = groups[key];
    auto mean = [&](double s) { return a.solved ? fmt(s / a.solved, "%.4f") : std::string("nan"); };
    out += std::to_string(std::get<0>(key)) + ',' + csv_cell(std::get<1>(key)) + ',' + csv_cell(std::get<2>(key)) +
           ',' + csv_cell(std::get<3>(key)) + ',' + std::to_string(a.runs) + ',' + std::to_string(a.solved) + ',' +
           std::to_string(a.runs - a.solved) + ',' + mean(a.total) + ',' + mean(a.solving) + ',' + mean(a.prepr) +
           ',' + mean(a.ctrs_gen) + ',' + mean(a.callback) + ',' + fmt(a.gaps ? 100.0 * a.gap / a.gaps : 0.0, "%.4f") +
           ',' + (a.solved ? fmt(a.ctrs / a.solved, "%.1f") : std::string("nan")) + '\n';
  }
  return out;
}

}  // namespace mtmclp
