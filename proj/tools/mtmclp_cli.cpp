// Command-line front end: solve, generate, bench, plot.
//
// Exit codes: 0 solved to optimality, 2 limit reached with an incumbent,
// 3 input error, 4 capability or size-guard error, 5 limit reached without
// an incumbent, 1 anything else.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtmclp/benchmark.hpp"
#include "mtmclp/errors.hpp"
#include "mtmclp/io.hpp"
#include "mtmclp/rng.hpp"
#include "mtmclp/solvers.hpp"
#include "mtmclp/svg.hpp"

using namespace mtmclp;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitLimit = 2;
constexpr int kExitInput = 3;
constexpr int kExitCapability = 4;
constexpr int kExitNoIncumbent = 5;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("bad number '" + s + "' in " + what);
}

int to_int(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v != static_cast<int>(v) || v < 0) throw InputError("bad count '" + s + "' in " + what);
  return static_cast<int>(v);
}

// "L2", "LInf", "L1", "Lp@3".
NormSpec norm_token(const std::string& s) {
  const auto at = s.find('@');
  if (at == std::string::npos) return parse_norm(s);
  return parse_norm(s.substr(0, at), to_double(s.substr(at + 1), "norm " + s));
}

// RADIUS:COUNT[:NORM]
DiscreteGenSpec discrete_token(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() < 2 || parts.size() > 3) throw InputError("--discrete expects RADIUS:COUNT[:NORM], got '" + s + "'");
  DiscreteGenSpec d;
  d.radius = to_double(parts[0], "--discrete " + s);
  d.count = to_int(parts[1], "--discrete " + s);
  if (parts.size() == 3) d.norm = norm_token(parts[2]);
  return d;
}

// NORM:RADIUS:COUNT
ContinuousTypeSpec continuous_token(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw InputError("--continuous expects NORM:RADIUS:COUNT, got '" + s + "'");
  ContinuousTypeSpec c;
  c.norm = norm_token(parts[0]);
  c.radius = to_double(parts[1], "--continuous " + s);
  c.count = to_int(parts[2], "--continuous " + s);
  return c;
}

struct GenerateArgs {
  std::uint64_t seed = 0;
  std::size_t n = 50;
  std::size_t dim = 2;
  std::string box = "0,1";
  std::vector<std::string> discrete;
  std::vector<std::string> continuous;
  std::string points_csv;
  std::string name;

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "PCG32 seed");
    cmd->add_option("-n,--n", n, "number of demand points");
    cmd->add_option("--dim", dim, "dimension");
    cmd->add_option("--box", box, "coordinate range LO,HI");
    cmd->add_option("--discrete", discrete, "discrete type RADIUS:COUNT[:NORM], sites = demand points");
    cmd->add_option("--continuous", continuous, "continuous type NORM:RADIUS:COUNT (NORM: L1, L2, LInf, Lp@TAU)");
    cmd->add_option("--points", points_csv, "take demand points from a CSV file (x,y[,weight])");
    cmd->add_option("--name", name, "instance name");
  }

  Instance build() const {
    GenerateSpec spec;
    spec.seed = seed;
    spec.n = n;
    spec.dimension = dim;
    const auto b = split(box, ',');
    if (b.size() != 2) throw InputError("--box expects LO,HI");
    spec.lo = to_double(b[0], "--box");
    spec.hi = to_double(b[1], "--box");
    for (const std::string& d : discrete) spec.discrete.push_back(discrete_token(d));
    for (const std::string& c : continuous) spec.continuous.push_back(continuous_token(c));
    spec.name = name;
    if (points_csv.empty()) return generate_instance(spec);

    Instance inst;
    inst.name = name.empty() ? points_csv : name;
    inst.dimension = 2;
    inst.demand = parse_points_csv(read_file(points_csv));
    inst = deduplicated(std::move(inst));
    for (const DiscreteGenSpec& d : spec.discrete) {
      DiscreteTypeSpec t;
      t.sites = inst.points();
      t.radii.assign(t.sites.size(), d.radius);
      t.count = d.count;
      t.norm = d.norm;
      inst.discrete_types.push_back(std::move(t));
    }
    inst.continuous_types = spec.continuous;
    validate(inst);
    return inst;
  }
};

struct SolveArgs {
  std::string method = "bnc";
  std::string order = "discrete-first";
  std::string stage_method = "bnc";
  double time_limit = 3600.0;
  double gap = 1e-6;
  std::string symmetry = "on";
  std::string pool_eps;
  bool no_warm_start = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--method", method, "bnc, bips, seq or brute")->check(CLI::IsMember({"bnc", "bips", "seq", "brute"}));
    cmd->add_option("--order", order, "stage order for seq: discrete-first, continuous-first or e.g. d0>c0,c1");
    cmd->add_option("--stage-method", stage_method, "method used by seq stages")->check(CLI::IsMember({"bnc", "bips"}));
    cmd->add_option("--time-limit", time_limit, "seconds")->check(CLI::PositiveNumber);
    cmd->add_option("--gap", gap, "relative gap tolerance")->check(CLI::NonNegativeNumber);
    cmd->add_option("--symmetry", symmetry, "symmetry-breaking chain")->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--pool-eps", pool_eps,
                    "initial pool epsilons as fractions of rho, comma separated; 'none' disables");
    cmd->add_flag("--no-warm-start", no_warm_start, "do not seed the search with a greedy solution");
  }

  SolveOptions options() const {
    SolveOptions o;
    o.limits.time_limit_seconds = time_limit;
    o.limits.relative_gap = gap;
    o.symmetry = symmetry == "on";
    o.warm_start = !no_warm_start;
    if (pool_eps == "none") {
      o.pool_fractions.clear();
    } else if (!pool_eps.empty()) {
      o.pool_fractions.clear();
      for (const std::string& s : split(pool_eps, ',')) {
        const double v = to_double(s, "--pool-eps");
        if (!(v > 0.0)) throw InputError("--pool-eps values must be positive");
        o.pool_fractions.push_back(v);
      }
    }
    return o;
  }
};

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return kExitSolved;
    case SolveStatus::Feasible:
      return kExitLimit;
    case SolveStatus::NoSolution:
      return kExitNoIncumbent;
  }
  return 1;
}

void print_summary(const SolveReport& r) {
  std::printf("method      %s\n", r.method.c_str());
  std::printf("status      %s\n", to_string(r.status));
  std::printf("objective   %.10g\n", r.solution.objective);
  std::printf("bound       %.10g\n", r.bound);
  std::printf("gap         %.3g\n", r.gap);
  std::printf("nodes       %ld (lp iterations %ld)\n", r.nodes, r.lp_iterations);
  std::printf("constraints %zu\n", r.constraints);
  std::printf("cuts        pool %zu, lazy %zu\n", r.pool_cuts, r.lazy_cuts);
  std::printf("time        total %.3f s (prepr %.3f, ctrs.gen %.3f, solving %.3f, callback %.3f)\n",
              r.times.total, r.times.preprocessing, r.times.constraint_generation, r.times.solving,
              r.times.callback);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solvers for the hybrid discrete/continuous maximal covering location problem"};
  app.require_subcommand(1);

  // solve
  CLI::App* solve = app.add_subcommand("solve", "solve an instance");
  std::string solve_instance, solve_out, solve_svg;
  SolveArgs solve_args;
  GenerateArgs solve_gen;
  solve->add_option("-i,--instance", solve_instance, "instance JSON (omit to generate one from the generator flags)");
  solve->add_option("-o,--out", solve_out, "write the solution document here");
  solve->add_option("--svg", solve_svg, "write an SVG figure here");
  solve_args.attach(solve);
  solve_gen.attach(solve);

  // generate
  CLI::App* generate = app.add_subcommand("generate", "write a random instance (or wrap a CSV point list)");
  GenerateArgs gen_args;
  std::string gen_out;
  gen_args.attach(generate);
  generate->add_option("-o,--out", gen_out, "output instance JSON")->required();

  // bench
  CLI::App* bench = app.add_subcommand("bench", "run methods over instance files");
  std::vector<std::string> bench_files;
  std::string bench_methods = "bnc,bips", bench_rows, bench_agg;
  int bench_jobs = 1;
  SolveArgs bench_args;
  bench->add_option("instances", bench_files, "instance JSON files")->required();
  bench->add_option("--methods", bench_methods, "comma separated: bnc, bips, brute, seq, seq-cf");
  bench->add_option("--jobs", bench_jobs, "concurrent runs")->check(CLI::PositiveNumber);
  bench->add_option("--rows", bench_rows, "per-run CSV output")->required();
  bench->add_option("--aggregate", bench_agg, "aggregate CSV output");
  bench_args.attach(bench);

  // plot
  CLI::App* plot = app.add_subcommand("plot", "draw a solution document as SVG");
  std::string plot_instance, plot_solution, plot_out;
  plot->add_option("-i,--instance", plot_instance, "instance JSON")->required();
  plot->add_option("-s,--solution", plot_solution, "solution JSON")->required();
  plot->add_option("-o,--out", plot_out, "SVG output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*solve) {
      const Instance inst = solve_instance.empty() ? solve_gen.build() : load_instance(solve_instance);
      const SolveOptions opts = solve_args.options();
      SolveReport report;
      if (solve_args.method == "seq") {
        report = solve_sequential(inst, parse_order(solve_args.order, inst), parse_method(solve_args.stage_method), opts);
      } else {
        report = run_method(inst, solve_args.method, opts);
      }
      print_summary(report);
      if (!solve_out.empty()) write_file(solve_out, emit_solution(inst, report));
      if (!solve_svg.empty() && report.status != SolveStatus::NoSolution) {
        write_file(solve_svg, emit_svg(inst, report.solution));
      }
      return exit_code(report.status);
    }
    if (*generate) {
      write_file(gen_out, emit_instance(gen_args.build()));
      return kExitSolved;
    }
    if (*bench) {
      std::vector<Instance> instances;
      for (const std::string& f : bench_files) instances.push_back(load_instance(f));
      BenchmarkOptions opts;
      opts.methods = split(bench_methods, ',');
      opts.solve = bench_args.options();
      opts.jobs = bench_jobs;
      const std::vector<BenchmarkRow> rows = run_benchmark(instances, opts);
      write_file(bench_rows, rows_csv(rows));
      if (!bench_agg.empty()) write_file(bench_agg, aggregate_csv(rows));
      int worst = kExitSolved;
      for (const BenchmarkRow& r : rows) {
        std::printf("%-32s %-7s %-12s obj %-10.6g total %.3f s\n", r.instance.c_str(), r.method.c_str(),
                    r.status.c_str(), r.objective, r.times.total);
        if (!r.solved()) worst = kExitLimit;
      }
      return worst;
    }
    if (*plot) {
      const Instance inst = load_instance(plot_instance);
      const SolutionDocument doc = parse_solution(read_file(plot_solution), inst);
      write_file(plot_out, emit_svg(inst, doc.solution));
      return kExitSolved;
    }
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInput;
  } catch (const CapabilityError& e) {
    std::fprintf(stderr, "capability error: %s\n", e.what());
    return kExitCapability;
  } catch (const CapacityError& e) {
    std::fprintf(stderr, "size guard: %s\n", e.what());
    return kExitCapability;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
