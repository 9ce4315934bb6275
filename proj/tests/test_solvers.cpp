#include <doctest.h>

#include <cmath>
#include <vector>

#include "mtmclp/errors.hpp"
#include "mtmclp/separation.hpp"
#include "mtmclp/solvers.hpp"
#include "oracle.hpp"

using namespace mtmclp;

namespace {

Instance continuous_only(std::vector<Point> pts, double rho, int count) {
  Instance inst;
  for (Point& p : pts) inst.demand.push_back(DemandPoint{std::move(p), 1.0});
  inst.continuous_types.push_back(ContinuousTypeSpec{NormSpec::l2(), rho, count});
  return inst;
}

void check_report(const Instance& inst, const SolveReport& r) {
  const EvaluationReport ev = evaluate(inst, r.solution);
  CHECK(ev.valid());
  CHECK(ev.objective == doctest::Approx(r.solution.objective));
  CHECK(r.times.solving + r.times.preprocessing + r.times.constraint_generation <= r.times.total + 0.1);
}

}  // namespace

TEST_CASE("single point, single facility") {
  Instance inst = continuous_only({Point{0.4, 0.4}}, 0.1, 1);
  inst.demand[0].weight = 3.5;
  for (const SolveReport& r : {solve_bnc(inst), solve_bips(inst), brute_force(inst)}) {
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(r.solution.objective == doctest::Approx(3.5));
    check_report(inst, r);
  }
}

TEST_CASE("two points at distance rho share a facility at a crossing") {
  const Instance inst = continuous_only({Point{0, 0}, Point{1, 0}}, 1.0, 1);
  const SolveReport b = solve_bips(inst);
  CHECK(b.solution.objective == 2.0);
  CHECK(solve_bnc(inst).solution.objective == 2.0);
  check_report(inst, b);
}

TEST_CASE("collinear brute force examples") {
  const Instance a = continuous_only({Point{0, 0}, Point{1, 0}, Point{2, 0}}, 0.49, 1);
  CHECK(brute_force(a).solution.objective == 1.0);
  const Instance touch = continuous_only({Point{0, 0}, Point{1, 0}, Point{2, 0}}, 0.5, 1);
  CHECK(brute_force(touch).solution.objective == 2.0);
  const Instance b = continuous_only({Point{0, 0}, Point{0.6, 0}, Point{1.2, 0}}, 0.5, 1);
  CHECK(brute_force(b).solution.objective == 2.0);

  Instance disc;
  disc.demand = {{Point{0, 0}, 2.0}};
  disc.discrete_types.push_back(DiscreteTypeSpec{{Point{0.1, 0}}, {0.2}, 1});
  CHECK(brute_force(disc).solution.objective == 2.0);
  CHECK(solve_bnc(disc).solution.objective == 2.0);
  CHECK(solve_bips(disc).solution.objective == 2.0);
}

TEST_CASE("brute force guard") {
  const Instance big = oracle::random_instance(1, 60, 0, 4, 0.2, 0.3);
  BruteForceOptions opt;
  opt.max_combinations = 1e3;
  CHECK_THROWS_AS(brute_force(big, opt), CapacityError);
}

TEST_CASE("all methods agree with the independent oracle") {
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const std::size_t n = 6 + 2 * (seed % 3);
    const int p1 = static_cast<int>(seed % 3);
    const int p2 = 1 + static_cast<int>(seed / 3 % 2);
    const Instance inst = oracle::random_instance(seed, n, p1, p2, 0.25, 0.2, seed % 2 == 0);
    const double expect = oracle::optimum(inst);
    const SolveReport bnc = solve_bnc(inst);
    const SolveReport bips = solve_bips(inst);
    const SolveReport brute = brute_force(inst);
    CHECK(bnc.status == SolveStatus::Optimal);
    CHECK(bnc.solution.objective == expect);
    CHECK(bips.solution.objective == expect);
    CHECK(brute.solution.objective == expect);
    check_report(inst, bnc);
    check_report(inst, bips);
    check_report(inst, brute);
  }
}

TEST_CASE("preloaded pair and triple cuts give the BIPS optimum without a callback") {
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    const Instance inst = oracle::random_instance(seed, 9, 1, 2, 0.25, 0.2);
    const CutPool triples = three_wise_cuts(inst, 0);
    const IpModel ip = build_incomplete_ip(inst, triples.cuts());
    const milp::BnBResult r = milp::branch_and_bound(ip.model, nullptr, milp::SolveLimits{});
    REQUIRE(r.status == milp::BnBStatus::Optimal);
    const double bips = solve_bips(inst).solution.objective;
    CHECK(r.objective == doctest::Approx(bips));
    CHECK(solve_bnc(inst).solution.objective == bips);
    // Every cluster of the preloaded optimum is feasible.
    CHECK(separate(decode_assignment(inst, ip.layout, r.incumbent), inst).empty());
  }
}

TEST_CASE("options do not change the optimum") {
  for (std::uint64_t seed = 40; seed < 52; ++seed) {
    const Instance inst = oracle::random_instance(seed, 8, 1, 2, 0.25, 0.22);
    const double expect = oracle::optimum(inst);
    SolveOptions off;
    off.symmetry = false;
    off.warm_start = false;
    off.pool_fractions.clear();
    off.pairwise = PairwiseForm::Pairs;
    CHECK(solve_bnc(inst, off).solution.objective == expect);
    SolveOptions on;
    CHECK(solve_bnc(inst, on).solution.objective == expect);
  }
}

TEST_CASE("increasing counts or radii never lowers the optimum") {
  for (std::uint64_t seed = 60; seed < 70; ++seed) {
    const Instance base = oracle::random_instance(seed, 8, 1, 1, 0.2, 0.15);
    Instance more_p = base;
    more_p.continuous_types[0].count = 2;
    Instance more_r = base;
    more_r.continuous_types[0].radius = 0.2;
    const double b = oracle::optimum(base);
    CHECK(solve_bnc(more_p).solution.objective >= b);
    CHECK(solve_bnc(more_r).solution.objective >= b);
  }
}

TEST_CASE("sequential solves never beat the integrated optimum") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Instance inst = oracle::random_instance(seed, 10, 2, 2, 0.2, 0.15);
    const double integrated = solve_bnc(inst).solution.objective;
    const SolveReport df = solve_sequential(inst, discrete_first(inst));
    const SolveReport cf = solve_sequential(inst, continuous_first(inst));
    CHECK(df.solution.objective <= integrated);
    CHECK(cf.solution.objective <= integrated);
    check_report(inst, df);
    check_report(inst, cf);
    // One stage holding every type is the integrated problem.
    CHECK(solve_sequential(inst, parse_order("d0,c0", inst)).solution.objective == integrated);
  }
}

TEST_CASE("stage order parsing") {
  const Instance inst = oracle::random_instance(1, 10, 1, 1);
  const StageOrder o = parse_order("d0>c0", inst);
  REQUIRE(o.size() == 2);
  CHECK(o[0][0] == TypeRef{false, 0});
  CHECK(o[1][0] == TypeRef{true, 0});
  CHECK(format_order(o) == "d0>c0");
  CHECK(parse_order("discrete-first", inst) == discrete_first(inst));
  CHECK_THROWS_AS(parse_order("d3", inst), InputError);
  CHECK_THROWS_AS(parse_order("x0", inst), InputError);
}

TEST_CASE("recovered centers lie within the radius of their cluster") {
  const Instance pair = continuous_only({Point{0, 0}, Point{2, 0}}, 1.0, 1);
  Assignment a = Assignment::empty_for(pair);
  a.continuous_cover[0][0] = {1, 1};
  const auto c = recover_centers(pair, a);
  CHECK(c[0][0][0] == doctest::Approx(1.0));
  CHECK(c[0][0][1] == doctest::Approx(0.0));

  const Instance far = continuous_only({Point{0, 0}, Point{3, 0}}, 1.0, 1);
  Assignment bad = Assignment::empty_for(far);
  bad.continuous_cover[0][0] = {1, 1};
  CHECK_THROWS_AS(recover_centers(far, bad), ContractError);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = oracle::random_instance(seed, 10, 0, 2, 0.2, 0.2);
    const SolveReport r = solve_bnc(inst);
    for (std::size_t k = 0; k < 2; ++k) {
      for (int i : r.solution.assignment.cluster(0, k)) {
        CHECK(distance(inst.demand[static_cast<std::size_t>(i)].point, r.solution.centers[0][k],
                       NormSpec::l2()) <= 0.2 + 1e-9);
      }
    }
  }
}

TEST_CASE("mixed norms and discrete-only instances") {
  Instance inst = oracle::random_instance(5, 12, 1, 1, 0.2, 0.15);
  inst.continuous_types.push_back(ContinuousTypeSpec{NormSpec::lp(3), 0.15, 1});
  const SolveReport r = solve_bnc(inst);
  CHECK(r.status == SolveStatus::Optimal);
  check_report(inst, r);
  CHECK_THROWS_AS(solve_bips(inst), CapabilityError);

  Instance disc = oracle::random_instance(6, 10, 2, 0);
  CHECK(solve_bnc(disc).solution.objective == oracle::optimum(disc));
  CHECK(solve_bips(disc).solution.objective == oracle::optimum(disc));
}

TEST_CASE("solves are deterministic") {
  const Instance inst = oracle::random_instance(77, 10, 1, 2, 0.25, 0.2);
  const SolveReport a = solve_bnc(inst);
  const SolveReport b = solve_bnc(inst);
  CHECK(a.nodes == b.nodes);
  CHECK(a.lp_iterations == b.lp_iterations);
  CHECK(a.solution.centers == b.solution.centers);
  CHECK(a.cuts == b.cuts);
}

TEST_CASE("method names") {
  CHECK(parse_method("bnc") == Method::Bnc);
  CHECK(parse_method("bips") == Method::Bips);
  CHECK(parse_method("seq") == Method::Sequential);
  CHECK(parse_method("brute") == Method::Brute);
  CHECK_THROWS_AS(parse_method("gurobi"), InputError);
}
