#include <doctest.h>

#include <cmath>
#include <vector>

#include "mtmclp/errors.hpp"
#include "mtmclp/geometry.hpp"
#include "mtmclp/rng.hpp"
#include "oracle.hpp"

using namespace mtmclp;

namespace {

std::vector<Point> random_points(Pcg32& rng, std::size_t n, std::size_t dim = 2) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c;
    for (std::size_t k = 0; k < dim; ++k) c.push_back(rng.next_double());
    pts.emplace_back(std::move(c));
  }
  return pts;
}

std::vector<oracle::P2> to_p2(const std::vector<Point>& pts) {
  std::vector<oracle::P2> out;
  for (const Point& p : pts) out.push_back(oracle::as_p2(p));
  return out;
}

}  // namespace

TEST_CASE("distance under the basic norms") {
  CHECK(distance({0, 0}, {3, 4}, NormSpec::l2()) == doctest::Approx(5.0));
  CHECK(distance({0, 0}, {1, 1}, NormSpec::l1()) == doctest::Approx(2.0));
  CHECK(distance({0, 0}, {1, 2}, NormSpec::linf()) == doctest::Approx(2.0));
  // (1 + 8)^(1/3) for the l3 norm of (1, 2).
  CHECK(distance({0, 0}, {1, 2}, NormSpec::lp(3)) == doctest::Approx(std::cbrt(9.0)));
  CHECK_THROWS_AS(distance({0, 0}, {0, 0, 0}, NormSpec::l2()), InputError);
}

TEST_CASE("norm parsing folds Lp(1) and Lp(2)") {
  CHECK(NormSpec::lp(1.0) == NormSpec::l1());
  CHECK(NormSpec::lp(2.0) == NormSpec::l2());
  CHECK(parse_norm("Lp", 3.0).kind == NormKind::Lp);
  CHECK_THROWS_AS(parse_norm("Lp", 0.5), InputError);
  CHECK_THROWS_AS(parse_norm("L7"), InputError);
}

TEST_CASE("metric axioms on random triples") {
  Pcg32 rng(11);
  for (const NormSpec& norm : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf(), NormSpec::lp(3)}) {
    for (int rep = 0; rep < 200; ++rep) {
      const auto p = random_points(rng, 3);
      const double ab = distance(p[0], p[1], norm);
      CHECK(ab >= 0.0);
      CHECK(ab == doctest::Approx(distance(p[1], p[0], norm)).epsilon(1e-12));
      CHECK(distance(p[0], p[0], norm) == 0.0);
      CHECK(ab <= distance(p[0], p[2], norm) + distance(p[2], p[1], norm) + 1e-9);
    }
  }
}

TEST_CASE("circle boundary intersections") {
  auto tangent = circle_boundary_intersection({0, 0}, {2, 0}, 1.0);
  REQUIRE(tangent.size() == 1);
  CHECK(tangent[0][0] == doctest::Approx(1.0));
  CHECK(tangent[0][1] == doctest::Approx(0.0));
  CHECK(circle_boundary_intersection({0, 0}, {3, 0}, 1.0).empty());

  // Solving x^2 + y^2 = 1 and (x - 1)^2 + y^2 = 1 gives x = 1/2, y = +-sqrt(3)/2.
  auto two = circle_boundary_intersection({0, 0}, {1, 0}, 1.0);
  REQUIRE(two.size() == 2);
  for (const Point& p : two) {
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(std::fabs(p[1]) == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(std::fabs(p[0] * p[0] + p[1] * p[1] - 1.0) <= 1e-9);
    CHECK(std::fabs((p[0] - 1) * (p[0] - 1) + p[1] * p[1] - 1.0) <= 1e-9);
  }
  CHECK_THROWS_AS(circle_boundary_intersection({0, 0}, {0, 0}, 1.0), InputError);
}

TEST_CASE("circle crossings lie on both circles") {
  Pcg32 rng(5);
  for (int rep = 0; rep < 500; ++rep) {
    const auto p = random_points(rng, 2);
    const double rho = 0.05 + 0.5 * rng.next_double();
    for (const Point& x : circle_boundary_intersection(p[0], p[1], rho)) {
      CHECK(std::fabs(distance(x, p[0], NormSpec::l2()) - rho) <= 1e-9);
      CHECK(std::fabs(distance(x, p[1], NormSpec::l2()) - rho) <= 1e-9);
    }
  }
}

TEST_CASE("enclosing ball examples") {
  const std::vector<Point> single{{5, 5}};
  auto b = min_enclosing_ball(single, NormSpec::l2());
  CHECK(b.radius == 0.0);
  CHECK(b.center == Point{5, 5});

  const std::vector<Point> pair{{0, 0}, {2, 0}};
  b = min_enclosing_ball(pair, NormSpec::l2());
  CHECK(b.radius == doctest::Approx(1.0));
  CHECK(b.center[0] == doctest::Approx(1.0));

  const std::vector<Point> tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  b = min_enclosing_ball(tri, NormSpec::l2());
  CHECK(b.radius == doctest::Approx(oracle::meb_radius(to_p2(tri))).epsilon(1e-12));
  CHECK(b.radius == doctest::Approx(1.0 / std::sqrt(3.0)));

  const std::vector<Point> cube{{0, 0, 0}, {2, 1, 0}, {1, 3, 1}};
  CHECK(min_enclosing_ball(cube, NormSpec::linf()).radius == doctest::Approx(1.5));
  CHECK_THROWS_AS(min_enclosing_ball(cube, NormSpec::l1()), CapabilityError);
  CHECK_THROWS_AS(min_enclosing_ball(tri, NormSpec::lp(3)), CapabilityError);
}

TEST_CASE("L2 enclosing ball is minimal and contains every point") {
  Pcg32 rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.next_u32() % 8;
    const auto pts = random_points(rng, n);
    const auto b = min_enclosing_ball(pts, NormSpec::l2());
    for (const Point& p : pts) CHECK(distance(p, b.center, NormSpec::l2()) <= b.radius + 1e-9);
    CHECK(std::fabs(b.radius - oracle::meb_radius(to_p2(pts))) <= 1e-9);
  }
}

TEST_CASE("L1 and LInf enclosing balls against a grid search") {
  Pcg32 rng(23);
  for (const NormSpec& norm : {NormSpec::l1(), NormSpec::linf()}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto pts = random_points(rng, 2 + rng.next_u32() % 5);
      const auto b = min_enclosing_ball(pts, norm);
      double worst = 0.0;
      for (const Point& p : pts) worst = std::max(worst, distance(p, b.center, norm));
      CHECK(worst <= b.radius + 1e-9);
      // No grid center does noticeably better.
      double grid_best = 1e9;
      for (int i = 0; i <= 200; ++i) {
        for (int j = 0; j <= 200; ++j) {
          const Point c{-0.5 + i / 100.0, -0.5 + j / 100.0};
          double r = 0.0;
          for (const Point& p : pts) r = std::max(r, distance(p, c, norm));
          grid_best = std::min(grid_best, r);
        }
      }
      CHECK(b.radius <= grid_best + 1e-9);
      CHECK(b.radius >= grid_best - 0.011);
    }
  }
}

TEST_CASE("numeric enclosing ball for Lp(3)") {
  Pcg32 rng(29);
  const NormSpec l3 = NormSpec::lp(3);
  for (int rep = 0; rep < 10; ++rep) {
    const auto pts = random_points(rng, 2 + rng.next_u32() % 5);
    const auto b = min_enclosing_ball_numeric(pts, l3);
    double worst = 0.0;
    for (const Point& p : pts) worst = std::max(worst, distance(p, b.center, l3));
    CHECK(worst <= b.radius + 1e-9);
    double grid_best = 1e9;
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j <= 100; ++j) {
        const Point c{i / 100.0, j / 100.0};
        double r = 0.0;
        for (const Point& p : pts) r = std::max(r, distance(p, c, l3));
        grid_best = std::min(grid_best, r);
      }
    }
    CHECK(b.radius <= grid_best + 1e-7);
  }
}

TEST_CASE("cluster feasibility examples") {
  const std::vector<Point> one{{0, 0}};
  const std::vector<int> idx1{0};
  auto c = cluster_feasible(idx1, one, 0.1, NormSpec::l2());
  CHECK(c.feasible);
  REQUIRE(c.center);
  CHECK(*c.center == Point{0, 0});

  const std::vector<Point> two{{0, 0}, {2, 0}};
  const std::vector<int> idx2{0, 1};
  c = cluster_feasible(idx2, two, 0.9, NormSpec::l2());
  CHECK_FALSE(c.feasible);
  REQUIRE(c.witnesses.size() == 1);
  CHECK(c.witnesses[0] == std::vector<int>{0, 1});

  const std::vector<Point> tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  const std::vector<int> idx3{0, 1, 2};
  CHECK(cluster_feasible(idx3, tri, 0.58, NormSpec::l2()).feasible);
  c = cluster_feasible(idx3, tri, 0.57, NormSpec::l2());
  CHECK_FALSE(c.feasible);
  REQUIRE_FALSE(c.witnesses.empty());
  CHECK(c.witnesses[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("cluster feasibility certificates are sound and monotone") {
  Pcg32 rng(31);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 2 + rng.next_u32() % 7;
    const auto pts = random_points(rng, n);
    const double rho = 0.1 + 0.3 * rng.next_double();
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    const auto cert = cluster_feasible(all, pts, rho, NormSpec::l2());
    const auto p2 = to_p2(pts);
    CHECK(cert.feasible == (oracle::meb_radius(p2) <= rho + 1e-9));
    if (cert.feasible) {
      for (const Point& p : pts) CHECK(distance(p, *cert.center, NormSpec::l2()) <= rho + 1e-9);
      // Dropping a point keeps the cluster feasible.
      std::vector<int> sub(all.begin() + 1, all.end());
      CHECK(cluster_feasible(sub, pts, rho, NormSpec::l2()).feasible);
    } else {
      CHECK_FALSE(cert.witnesses.empty());
      for (const auto& w : cert.witnesses) {
        CHECK(w.size() >= 2);
        CHECK(w.size() <= 3);
        std::vector<oracle::P2> sel;
        for (int i : w) sel.push_back(p2[static_cast<std::size_t>(i)]);
        CHECK(oracle::meb_radius(sel) > rho);
      }
    }
  }
}

TEST_CASE("planar clusters are feasible iff every triple is") {
  Pcg32 rng(37);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 3 + rng.next_u32() % 6;
    const auto pts = random_points(rng, n);
    const double rho = 0.2 + 0.3 * rng.next_double();
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    bool triples = true;
    for (int a = 0; a < static_cast<int>(n); ++a) {
      for (int b = a + 1; b < static_cast<int>(n); ++b) {
        for (int c = b + 1; c < static_cast<int>(n); ++c) {
          const std::vector<int> t{a, b, c};
          triples = triples && cluster_feasible(t, pts, rho, NormSpec::l2()).feasible;
        }
      }
    }
    CHECK(cluster_feasible(all, pts, rho, NormSpec::l2()).feasible == triples);
  }
}
