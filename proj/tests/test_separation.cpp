#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "mtmclp/errors.hpp"
#include "mtmclp/separation.hpp"
#include "oracle.hpp"

using namespace mtmclp;

namespace {

Instance continuous_only(std::vector<Point> pts, double rho, int count) {
  Instance inst;
  for (Point& p : pts) inst.demand.push_back(DemandPoint{std::move(p), 1.0});
  inst.continuous_types.push_back(ContinuousTypeSpec{NormSpec::l2(), rho, count});
  return inst;
}

bool cut_is_infeasible(const Instance& inst, const Cut& cut) {
  std::vector<oracle::P2> sel;
  for (int i : cut.members) sel.push_back(oracle::as_p2(inst.demand[static_cast<std::size_t>(i)].point));
  return oracle::meb_radius(sel) > inst.continuous_types[static_cast<std::size_t>(cut.type)].radius;
}

Assignment with_cluster(const Instance& inst, std::vector<int> members) {
  Assignment a = Assignment::empty_for(inst);
  for (int i : members) a.continuous_cover[0][0][static_cast<std::size_t>(i)] = 1;
  return a;
}

}  // namespace

TEST_CASE("pairwise cuts at and beyond the diameter") {
  CHECK(two_wise_cuts(continuous_only({Point{0, 0}, Point{1, 0}}, 0.5, 1), 0).empty());
  CHECK(two_wise_cuts(continuous_only({Point{0, 0}, Point{1.01, 0}}, 0.5, 1), 0).size() == 1);
}

TEST_CASE("pairwise cut count matches a distance scan") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = oracle::random_instance(seed, 25, 0, 1, 0.2, 0.1 + 0.02 * seed);
    const double rho = inst.continuous_types[0].radius;
    std::size_t expect = 0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      for (std::size_t l = i + 1; l < inst.size(); ++l) {
        expect += oracle::dist(oracle::as_p2(inst.demand[i].point), oracle::as_p2(inst.demand[l].point)) > 2 * rho;
      }
    }
    CHECK(two_wise_cuts(inst, 0).size() == expect);
  }
}

TEST_CASE("three-wise enumeration") {
  const Instance tri = continuous_only({Point{0, 0}, Point{1, 0}, Point{0.5, std::sqrt(3.0) / 2}}, 0.57, 1);
  const CutPool pool = three_wise_cuts(tri, 0);
  REQUIRE(pool.size() == 1);
  CHECK(pool.cuts()[0].members == std::vector<int>{0, 1, 2});
  CHECK(three_wise_cuts(tri, 0).origin(0) == CutOrigin::ThreeWise);
}

TEST_CASE("separation examples") {
  const Instance spread = continuous_only({Point{0, 0}, Point{3, 0}, Point{6, 0}}, 1.0, 3);
  Assignment single = Assignment::empty_for(spread);
  for (std::size_t k = 0; k < 3; ++k) single.continuous_cover[0][k][k] = 1;
  CHECK(separate(single, spread).empty());

  const auto pair = separate(with_cluster(spread, {0, 1}), spread);
  REQUIRE(pair.size() == 1);
  CHECK(pair[0].members == std::vector<int>{0, 1});

  const Instance tri = continuous_only({Point{0, 0}, Point{1, 0}, Point{0.5, std::sqrt(3.0) / 2}}, 0.57, 1);
  const auto triple = separate(with_cluster(tri, {0, 1, 2}), tri);
  REQUIRE(triple.size() == 1);
  CHECK(triple[0].members == std::vector<int>{0, 1, 2});
}

TEST_CASE("separated cuts are sound and cut off the candidate") {
  Pcg32 rng(61);
  for (int rep = 0; rep < 200; ++rep) {
    const Instance inst = oracle::random_instance(static_cast<std::uint64_t>(rep), 10, 0, 2, 0.2,
                                                  0.1 + 0.2 * rng.next_double());
    Assignment a = Assignment::empty_for(inst);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const std::uint32_t slot = rng.next_u32() % 3;
      if (slot < 2) a.continuous_cover[0][slot][i] = 1;
    }
    const auto cuts = separate(a, inst);
    bool any_infeasible = false;
    for (std::size_t k = 0; k < 2; ++k) {
      std::vector<oracle::P2> sel;
      for (int i : a.cluster(0, k)) sel.push_back(oracle::as_p2(inst.demand[static_cast<std::size_t>(i)].point));
      any_infeasible = any_infeasible || oracle::meb_radius(sel) > inst.continuous_types[0].radius + 1e-9;
    }
    CHECK(cuts.empty() == !any_infeasible);
    for (const Cut& cut : cuts) {
      CHECK(cut_is_infeasible(inst, cut));
      // Violated by some slot of the candidate.
      bool violated = false;
      for (std::size_t k = 0; k < 2; ++k) {
        std::size_t in = 0;
        for (int i : cut.members) in += a.continuous_cover[0][k][static_cast<std::size_t>(i)];
        violated = violated || in == cut.members.size();
      }
      CHECK(violated);
    }
  }
}

TEST_CASE("initial pool") {
  SUBCASE("far apart points give no cuts") {
    const Instance inst = continuous_only({Point{0, 0}, Point{5, 0}, Point{0, 5}}, 0.5, 1);
    const std::vector<double> eps{0.1};
    CHECK(initial_cut_pool(inst, 0, eps).empty());
  }
  SUBCASE("triangle whose pairs fit but whose triple does not") {
    // Equilateral with side 1.9: every pair is within 2, circumradius 1.9 / sqrt(3) > 1.
    const double h = 1.9 * std::sqrt(3.0) / 2;
    const Instance inst = continuous_only({Point{0, 0}, Point{1.9, 0}, Point{0.95, h}}, 1.0, 1);
    const std::vector<oracle::P2> all{{0, 0}, {1.9, 0}, {0.95, h}};
    REQUIRE(oracle::meb_radius(all) > 1.0);
    const std::vector<double> eps{1.05};
    const CutPool pool = initial_cut_pool(inst, 0, eps);
    REQUIRE(pool.size() == 1);
    CHECK(pool.cuts()[0].members == std::vector<int>{0, 1, 2});
  }
  SUBCASE("pool is a subset of the full triple enumeration") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Instance inst = oracle::random_instance(seed, 30, 0, 1, 0.2, 0.12);
      std::vector<double> eps;
      for (double f : default_pool_fractions()) eps.push_back(f * 0.12);
      const CutPool pool = initial_cut_pool(inst, 0, eps);
      const CutPool triples = three_wise_cuts(inst, 0);
      for (const Cut& c : pool.cuts()) {
        CHECK(triples.contains(c));
        CHECK(cut_is_infeasible(inst, c));
      }
    }
  }
}

TEST_CASE("complete linkage respects the diameter threshold") {
  Pcg32 rng(19);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<Point> pts;
    for (int i = 0; i < 25; ++i) pts.push_back(Point{rng.next_double(), rng.next_double()});
    const double thr = 0.1 + 0.3 * rng.next_double();
    const auto clusters = complete_linkage(pts, NormSpec::l2(), thr);
    std::vector<int> seen;
    for (const auto& c : clusters) {
      for (std::size_t a = 0; a < c.size(); ++a) {
        seen.push_back(c[a]);
        for (std::size_t b = a + 1; b < c.size(); ++b) {
          CHECK(distance(pts[c[a]], pts[c[b]], NormSpec::l2()) <= thr + 1e-9);
        }
      }
    }
    std::sort(seen.begin(), seen.end());
    CHECK(seen.size() == pts.size());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  }
}

TEST_CASE("dominance filtering") {
  CutPool pool;
  pool.add(Cut{0, {1, 2}}, CutOrigin::Pairwise);
  pool.add(Cut{0, {1, 2, 3}}, CutOrigin::ThreeWise);
  pool.add(Cut{0, {4, 5}}, CutOrigin::Pairwise);
  CHECK_FALSE(pool.add(Cut{0, {2, 1}}, CutOrigin::Callback));
  pool.add(Cut{1, {1, 2, 3}}, CutOrigin::ThreeWise);
  const CutPool kept = filter_dominated(pool);
  CHECK(kept.size() == 3);
  CHECK(kept.contains(Cut{0, {1, 2}}));
  CHECK(kept.contains(Cut{0, {4, 5}}));
  CHECK(kept.contains(Cut{1, {1, 2, 3}}));
  CHECK_FALSE(kept.contains(Cut{0, {1, 2, 3}}));
  CHECK_THROWS_AS(pool.add(Cut{0, {7}}, CutOrigin::Callback), ContractError);
}

TEST_CASE("a smaller cut dominates its supersets") {
  // Rows sum_{i in Q} z_i <= |Q| - 1 over z in [0,1]^n: the Q' terms beyond Q
  // add at most |Q' - Q|, so satisfying the Q row implies the Q' row.
  Pcg32 rng(83);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> z(12);
    for (double& v : z) v = rng.next_u32() % 3 != 0 ? 1.0 : rng.next_double();
    std::vector<int> q, qq;
    for (int i = 0; i < 12; ++i) {
      const std::uint32_t r = rng.next_u32() % 3;
      if (r == 0) q.push_back(i);
      if (r <= 1) qq.push_back(i);
    }
    if (q.empty()) continue;
    auto satisfied = [&](const std::vector<int>& s) {
      double sum = 0;
      for (int i : s) sum += z[static_cast<std::size_t>(i)];
      return sum <= static_cast<double>(s.size()) - 1 + 1e-12;
    };
    if (satisfied(q)) CHECK(satisfied(qq));
  }
}

TEST_CASE("iterated separation terminates with feasible clusters") {
  Pcg32 rng(97);
  for (int rep = 0; rep < 30; ++rep) {
    const Instance inst = oracle::random_instance(static_cast<std::uint64_t>(rep) + 500, 9, 0, 2, 0.2, 0.2);
    // Start from a greedy-infeasible assignment: everything in slot 0.
    std::set<Cut> cuts;
    const CutPool pairs = two_wise_cuts(inst, 0);
    for (const Cut& c : pairs.cuts()) cuts.insert(c);
    Assignment a = Assignment::empty_for(inst);
    std::vector<int> members;
    for (std::size_t i = 0; i < inst.size(); ++i) members.push_back(static_cast<int>(i));
    int rounds = 0;
    for (;; ++rounds) {
      // Drop members until no known cut is fully contained in the cluster.
      std::vector<int> cluster = members;
      for (const Cut& c : cuts) {
        if (std::includes(cluster.begin(), cluster.end(), c.members.begin(), c.members.end())) {
          cluster.erase(std::find(cluster.begin(), cluster.end(), c.members.back()));
        }
      }
      a = with_cluster(inst, cluster);
      const auto found = separate(a, inst);
      if (found.empty()) break;
      const std::size_t before = cuts.size();
      for (const Cut& c : found) cuts.insert(c);
      REQUIRE(cuts.size() > before);
      REQUIRE(rounds < 1000);
    }
    std::vector<oracle::P2> sel;
    for (int i : a.cluster(0, 0)) sel.push_back(oracle::as_p2(inst.demand[static_cast<std::size_t>(i)].point));
    CHECK(oracle::meb_radius(sel) <= 0.2 + 1e-9);
  }
}
