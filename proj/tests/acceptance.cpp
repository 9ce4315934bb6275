// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Tolerances and runtime budgets are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mtmclp/benchmark.hpp"
#include "mtmclp/errors.hpp"
#include "mtmclp/geometry.hpp"
#include "mtmclp/io.hpp"
#include "mtmclp/model.hpp"
#include "mtmclp/rng.hpp"
#include "mtmclp/separation.hpp"
#include "mtmclp/solvers.hpp"
#include "oracle.hpp"

using namespace mtmclp;

namespace {

constexpr double kGeomTol = 1e-9;

// Benchmark grid radii (discrete, continuous).
struct RadiiPair {
  double discrete;
  double continuous;
};
const std::vector<RadiiPair> kBenchRadii = {{0.1, 0.2}, {0.1, 0.5}};
constexpr double kBenchRunLimit = 600.0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
              seconds_since(t0));
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::vector<oracle::P2> pick(const Instance& inst, const std::vector<int>& idx) {
  std::vector<oracle::P2> out;
  for (int i : idx) out.push_back(oracle::as_p2(inst.demand[static_cast<std::size_t>(i)].point));
  return out;
}

// The 50 small planar instances shared by criteria 1, 7 and 8.
std::vector<Instance> small_instances() {
  std::vector<Instance> out;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const std::size_t n = 6 + 2 * (s % 3);
    const int p1 = static_cast<int>(s / 3 % 3);
    const int p2 = 1 + static_cast<int>(s / 9 % 2);
    out.push_back(oracle::random_instance(1000 + s, n, p1, p2, 0.25, 0.2, s % 2 == 1));
  }
  return out;
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  int agree = 0, oracle_agree = 0;
  const auto insts = small_instances();
  for (const Instance& inst : insts) {
    const double a = solve_bnc(inst).solution.objective;
    const double b = solve_bips(inst).solution.objective;
    const double c = brute_force(inst).solution.objective;
    agree += a == b && b == c;
    oracle_agree += c == oracle::optimum(inst);
  }
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = agree == 50 && oracle_agree == 50 && t < 300.0;
  o.detail = fmt("%g/50 exact bnc=bips=brute, %g/50 match independent oracle, %.1f s (budget 300 s)",
                 agree, oracle_agree, t);
  return o;
}

Outcome integrated_vs_sequential() {
  const auto t0 = std::chrono::steady_clock::now();
  int dominated = 0, strict = 0;
  double cov_int = 0, cov_df = 0, cov_cf = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenerateSpec spec;
    spec.seed = seed;
    spec.n = 50;
    spec.discrete.push_back(DiscreteGenSpec{0.2, 2});
    spec.continuous.push_back(ContinuousTypeSpec{NormSpec::l2(), 0.1, 2});
    const Instance inst = generate_instance(spec);
    const double integ = solve_bnc(inst).solution.objective;
    const double df = solve_sequential(inst, discrete_first(inst)).solution.objective;
    const double cf = solve_sequential(inst, continuous_first(inst)).solution.objective;
    dominated += integ >= df && integ >= cf;
    strict += integ > df || integ > cf;
    cov_int += integ;
    cov_df += df;
    cov_cf += cf;
  }
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = dominated == 20 && strict >= 1 && t < 600.0;
  o.detail = fmt("integrated >= both orders on %g/20, strictly better on %g; mean coverage %.1f%% vs ", dominated,
                 strict, cov_int / 20 * 2) +
             fmt("%.1f%% (discrete first) / %.1f%% (continuous first); %.1f s (budget 600 s)", cov_df / 20 * 2,
                 cov_cf / 20 * 2, t);
  return o;
}

Outcome geometry_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  Pcg32 rng(2024);
  double worst_meb = 0.0, worst_contain = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.next_u32() % 8;
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(Point{rng.next_double(), rng.next_double()});
    const EnclosingBall b = min_enclosing_ball(pts, NormSpec::l2());
    std::vector<oracle::P2> p2;
    for (const Point& p : pts) p2.push_back(oracle::as_p2(p));
    worst_meb = std::max(worst_meb, std::fabs(b.radius - oracle::meb_radius(p2)));
    for (const Point& p : pts) {
      worst_contain = std::max(worst_contain, distance(p, b.center, NormSpec::l2()) - b.radius);
    }
  }
  double worst_circle = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const Point a{rng.next_double(), rng.next_double()};
    const Point b{rng.next_double(), rng.next_double()};
    const double rho = 0.05 + 0.5 * rng.next_double();
    for (const Point& x : circle_boundary_intersection(a, b, rho)) {
      worst_circle = std::max({worst_circle, std::fabs(distance(x, a, NormSpec::l2()) - rho),
                               std::fabs(distance(x, b, NormSpec::l2()) - rho)});
    }
  }
  int helly = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 3 + rng.next_u32() % 6;
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(Point{rng.next_double(), rng.next_double()});
    const double rho = 0.2 + 0.3 * rng.next_double();
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    bool triples = true;
    for (int a = 0; a < static_cast<int>(n); ++a) {
      for (int b = a + 1; b < static_cast<int>(n); ++b) {
        for (int c = b + 1; c < static_cast<int>(n); ++c) {
          std::vector<oracle::P2> t{oracle::as_p2(pts[a]), oracle::as_p2(pts[b]), oracle::as_p2(pts[c])};
          triples = triples && oracle::meb_radius(t) <= rho + kGeomTol;
        }
      }
    }
    helly += cluster_feasible(all, pts, rho, NormSpec::l2()).feasible == triples;
  }
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = worst_meb <= kGeomTol && worst_contain <= kGeomTol && worst_circle <= kGeomTol && helly == 100 &&
           t < 60.0;
  o.detail = fmt("max |r - r_brute| %.2e, containment excess %.2e, circle residual %.2e, ", worst_meb,
                 worst_contain, worst_circle) +
             fmt("Helly agreement %g/100 (tol 1e-9, budget 60 s)", helly);
  return o;
}

Outcome separation_soundness() {
  int terminated = 0, clusters_ok = 0;
  std::size_t cuts_checked = 0, cuts_bad = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t n = 8 + s % 7;
    const int p2 = 1 + static_cast<int>(s % 3);
    const Instance inst = oracle::random_instance(5000 + s, n, static_cast<int>(s % 2), p2, 0.2,
                                                  0.15 + 0.01 * static_cast<double>(s % 10), s % 3 == 0);
    SolveOptions opt;
    opt.warm_start = s % 2 == 0;
    const SolveReport r = solve_bnc(inst, opt);
    terminated += r.status == SolveStatus::Optimal;
    const double rho = inst.continuous_types[0].radius;
    bool ok = true;
    for (int k = 0; k < p2; ++k) {
      ok = ok && oracle::meb_radius(pick(inst, r.solution.assignment.cluster(0, static_cast<std::size_t>(k)))) <=
                     rho + kGeomTol;
    }
    clusters_ok += ok;
    for (const Cut& c : r.cuts) {
      ++cuts_checked;
      cuts_bad += !(oracle::meb_radius(pick(inst, c.members)) > rho);
    }
  }
  // Nested sets Q subset of Q': any z in [0,1]^n satisfying the Q row also
  // satisfies the Q' row, i.e. the smaller cut dominates.
  Pcg32 rng(7);
  int nested_ok = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> z(15);
    for (double& v : z) v = rng.next_u32() % 3 != 0 ? 1.0 : rng.next_double();
    std::vector<int> q, qq;
    for (int i = 0; i < 15; ++i) {
      const std::uint32_t r = rng.next_u32() % 3;
      if (r == 0) q.push_back(i);
      if (r <= 1) qq.push_back(i);
    }
    if (q.empty()) {
      q.push_back(0);
      if (qq.empty() || qq[0] != 0) qq.insert(qq.begin(), 0);
    }
    auto satisfied = [&](const std::vector<int>& s) {
      double sum = 0;
      for (int i : s) sum += z[static_cast<std::size_t>(i)];
      return sum <= static_cast<double>(s.size()) - 1 + 1e-12;
    };
    nested_ok += !satisfied(q) || satisfied(qq);
  }
  Outcome o;
  o.pass = terminated == 100 && clusters_ok == 100 && cuts_bad == 0 && nested_ok == 1000;
  o.detail = fmt("%g/100 runs optimal, %g/100 with all clusters feasible, %g cuts verified empty (%g bad), ",
                 terminated, clusters_ok, static_cast<double>(cuts_checked), static_cast<double>(cuts_bad)) +
             fmt("dominance holds on %g/1000 nested checks", nested_ok);
  return o;
}

Outcome bips_structure() {
  Pcg32 rng(99);
  int bound_ok = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng.next_u32() % 30;
    const Instance inst = oracle::random_instance(7000 + rep, n, 0, 1, 0.2, 0.05 + 0.5 * rng.next_double());
    bound_ok += build_bips(inst, 0).size() <= n + n * (n - 1);
  }
  Instance pair;
  pair.demand = {{Point{0, 0}, 1}, {Point{0.3, 0}, 1}};
  pair.continuous_types.push_back(ContinuousTypeSpec{NormSpec::l2(), 0.3, 1});
  const std::size_t b2 = build_bips(pair, 0).size();
  bool rows_ok = true;
  std::string rows;
  for (std::size_t n : {10u, 50u, 100u, 400u}) {
    const Instance inst = oracle::random_instance(n, n, 1, 1, 0.1, 0.05);
    const std::size_t m = build_bips_ip(inst).model.num_constraints();
    rows_ok = rows_ok && m == n + 2;
    rows += (rows.empty() ? "" : ", ") + std::to_string(n) + "->" + std::to_string(m);
  }
  Outcome o;
  o.pass = bound_ok == 100 && b2 == 4 && rows_ok;
  o.detail = fmt("|B| <= n + n(n-1) on %g/100, two points at distance rho give |B| = %g, rows (n->#Ctrs) ",
                 bound_ok, static_cast<double>(b2)) +
             rows;
  return o;
}

Outcome scaled_benchmark() {
  std::vector<Instance> insts;
  for (std::size_t n : {50u, 100u}) {
    for (std::size_t r = 0; r < kBenchRadii.size(); ++r) {
      for (int p1 : {1, 2}) {
        for (int p2 : {1, 2}) {
          GenerateSpec spec;
          spec.seed = 42 + n;
          spec.n = n;
          spec.discrete.push_back(DiscreteGenSpec{kBenchRadii[r].discrete, p1});
          spec.continuous.push_back(ContinuousTypeSpec{NormSpec::l2(), kBenchRadii[r].continuous, p2});
          insts.push_back(generate_instance(spec));
        }
      }
    }
  }
  BenchmarkOptions opt;
  opt.solve.limits.time_limit_seconds = kBenchRunLimit;
  const auto rows = run_benchmark(insts, opt);
  const std::string csv = rows_csv(rows);
  const std::string agg = aggregate_csv(rows);
  std::ofstream("acceptance_bench_rows.csv") << csv;
  std::ofstream("acceptance_bench_aggregate.csv") << agg;

  bool schema = true;
  for (const char* col : {"Total", "Solving", "Prepr.", "Ctrs.Gen.", "Callback", "MIPGAP", "#Ctrs"}) {
    schema = schema && csv.find(col) != std::string::npos && agg.find(col) != std::string::npos;
  }
  schema = schema && agg.find("#Unsolved") != std::string::npos;

  std::size_t solved = 0;
  bool within = true;
  // Summed Total over the p2 = 1 rows per (n, method), and per-row wins.
  std::map<std::size_t, std::pair<double, double>> p2_one;
  std::map<std::size_t, std::pair<int, int>> wins;
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    const BenchmarkRow& bnc = rows[i];
    const BenchmarkRow& bips = rows[i + 1];
    for (const BenchmarkRow* r : {&bnc, &bips}) {
      solved += r->solved();
      within = within && r->times.total <= kBenchRunLimit + 5.0;
    }
    if (insts[i / 2].continuous_types[0].count != 1) continue;
    p2_one[bnc.n].first += bnc.times.total;
    p2_one[bnc.n].second += bips.times.total;
    wins[bnc.n].first += bnc.times.total < bips.times.total;
    ++wins[bnc.n].second;
  }
  bool faster_somewhere = false;
  std::string detail;
  for (const auto& [n, t] : p2_one) {
    faster_somewhere = faster_somewhere || t.first < t.second;
    detail += fmt("n=%g p2=1: bnc %.3f s vs bips %.3f s (bnc faster on ", static_cast<double>(n), t.first, t.second) +
              fmt("%g/%g rows); ", wins[n].first, wins[n].second);
  }
  Outcome o;
  o.pass = schema && within && solved == rows.size() && faster_somewhere;
  o.detail = fmt("%g/%g runs optimal within the %g s limit, schema %s; ", static_cast<double>(solved),
                 static_cast<double>(rows.size()), kBenchRunLimit) +
             (schema ? "ok; " : "missing columns; ") + detail + "radii pairs (0.1,0.2) and (0.1,0.5)";
  return o;
}

Outcome symmetry_neutrality() {
  int same = 0;
  for (const Instance& inst : small_instances()) {
    SolveOptions on, off;
    off.symmetry = false;
    same += solve_bnc(inst, on).solution.objective == solve_bnc(inst, off).solution.objective;
  }
  Outcome o;
  o.pass = same == 50;
  o.detail = fmt("objective unchanged with the chain on and off on %g/50 instances", same);
  return o;
}

Outcome determinism() {
  int identical = 0, total = 0;
  auto both = [&](const Instance& inst) {
    for (const char* m : {"bnc", "bips"}) {
      const std::string a = emit_solution(inst, run_method(inst, m, {}));
      const std::string b = emit_solution(inst, run_method(inst, m, {}));
      identical += a == b;
      ++total;
    }
  };
  const auto insts = small_instances();
  for (std::size_t i = 0; i < insts.size(); i += 5) both(insts[i]);
  GenerateSpec spec;
  spec.seed = 11;
  spec.n = 50;
  spec.discrete.push_back(DiscreteGenSpec{0.2, 2});
  spec.continuous.push_back(ContinuousTypeSpec{NormSpec::l2(), 0.1, 2});
  const bool gen_same = emit_instance(generate_instance(spec)) == emit_instance(generate_instance(spec));
  both(generate_instance(spec));
  Outcome o;
  o.pass = identical == total && gen_same;
  o.detail = fmt("%g/%g repeated solves byte-identical, generator ", identical, total) +
             (gen_same ? "byte-identical" : "differs");
  return o;
}

}  // namespace

int main() {
  report(1, "oracle equivalence", oracle_equivalence);
  report(2, "integrated >= sequential", integrated_vs_sequential);
  report(3, "geometry suite", geometry_suite);
  report(4, "separation soundness and termination", separation_soundness);
  report(5, "BIPS structure", bips_structure);
  report(6, "scaled benchmark", scaled_benchmark);
  report(7, "symmetry breaking neutrality", symmetry_neutrality);
  report(8, "determinism", determinism);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
