#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "mtmclp/errors.hpp"
#include "mtmclp/geometry.hpp"

namespace mtmclp {
namespace {

// Slack used inside the incremental constructions; much tighter than the
// coverage tolerance so the returned radius stays minimal to ~1e-12.
constexpr double kInnerEps = 1e-12;

struct Circle {
  double x = 0.0;
  double y = 0.0;
  double r = -1.0;
  std::array<int, 3> support{};
  int support_size = 0;

  bool contains(const Point& p) const {
    return std::hypot(p[0] - x, p[1] - y) <= r + kInnerEps;
  }
};

Circle circle_from(const Point& a, int ia) {
  return Circle{a[0], a[1], 0.0, {ia, 0, 0}, 1};
}

Circle circle_from(const Point& a, int ia, const Point& b, int ib) {
  const double cx = (a[0] + b[0]) / 2.0;
  const double cy = (a[1] + b[1]) / 2.0;
  const double r = std::max(std::hypot(a[0] - cx, a[1] - cy), std::hypot(b[0] - cx, b[1] - cy));
  return Circle{cx, cy, r, {ia, ib, 0}, 2};
}

// Circle through three points; collinear triples fall back to the diameter
// circle of the farthest pair.
Circle circle_from(const Point& a, int ia, const Point& b, int ib, const Point& c, int ic) {
  const double bx = b[0] - a[0];
  const double by = b[1] - a[1];
  const double cx = c[0] - a[0];
  const double cy = c[1] - a[1];
  const double det = 2.0 * (bx * cy - by * cx);
  const double scale = std::max({std::fabs(bx), std::fabs(by), std::fabs(cx), std::fabs(cy), 1e-300});
  if (std::fabs(det) <= 1e-14 * scale * scale) {
    Circle best = circle_from(a, ia, b, ib);
    for (const Circle& alt : {circle_from(a, ia, c, ic), circle_from(b, ib, c, ic)}) {
      if (alt.r > best.r) best = alt;
    }
    return best;
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / det;
  const double uy = (bx * c2 - cx * b2) / det;
  const double ox = a[0] + ux;
  const double oy = a[1] + uy;
  const double r = std::max({std::hypot(a[0] - ox, a[1] - oy), std::hypot(b[0] - ox, b[1] - oy),
                             std::hypot(c[0] - ox, c[1] - oy)});
  return Circle{ox, oy, r, {ia, ib, ic}, 3};
}

using CircleObserver = std::function<void(const Circle&)>;

// Incremental move-through construction in input order: every time a point
// falls outside the current disk a new disk is built on a 1-, 2- or 3-point
// support set, so the radius never decreases.
Circle planar_meb(std::span<const Point> pts, const CircleObserver& observe) {
  const int n = static_cast<int>(pts.size());
  Circle c = circle_from(pts[0], 0);
  for (int i = 1; i < n; ++i) {
    if (c.contains(pts[i])) continue;
    c = circle_from(pts[i], i);
    for (int j = 0; j < i; ++j) {
      if (c.contains(pts[j])) continue;
      c = circle_from(pts[i], i, pts[j], j);
      if (observe) observe(c);
      for (int k = 0; k < j; ++k) {
        if (c.contains(pts[k])) continue;
        c = circle_from(pts[i], i, pts[j], j, pts[k], k);
        if (observe) observe(c);
      }
    }
  }
  return c;
}

EnclosingBall finish(Point center, std::span<const Point> pts, const NormSpec& norm,
                     std::vector<int> support) {
  double r = 0.0;
  for (const Point& p : pts) r = std::max(r, distance(p, center, norm));
  std::sort(support.begin(), support.end());
  return EnclosingBall{std::move(center), r, std::move(support)};
}

EnclosingBall planar_l2(std::span<const Point> pts) {
  const Circle c = planar_meb(pts, nullptr);
  std::vector<int> support(c.support.begin(), c.support.begin() + c.support_size);
  return finish(Point{c.x, c.y}, pts, NormSpec::l2(), std::move(support));
}

// --- L2 in general dimension: move-to-front Welzl -------------------------

struct BallD {
  std::vector<double> center;
  double r2 = -1.0;
};

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Smallest ball with every point of `boundary` on its surface, i.e. the
// circumsphere within their affine hull. Returns r2 < 0 when degenerate.
BallD ball_through(std::span<const Point> pts, const std::vector<int>& boundary) {
  BallD out;
  if (boundary.empty()) return out;
  const std::size_t d = pts[0].dim();
  const Point& p0 = pts[boundary[0]];
  out.center.assign(p0.coords().begin(), p0.coords().end());
  if (boundary.size() == 1) {
    out.r2 = 0.0;
    return out;
  }
  const std::size_t k = boundary.size() - 1;
  std::vector<std::vector<double>> v(k, std::vector<double>(d));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t i = 0; i < d; ++i) v[a][i] = pts[boundary[a + 1]][i] - p0[i];
  }
  // Gram system 2 V V^T lambda = |v|^2, augmented.
  std::vector<std::vector<double>> m(k, std::vector<double>(k + 1));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < d; ++i) dot += v[a][i] * v[b][i];
      m[a][b] = 2.0 * dot;
    }
    double nn = 0.0;
    for (std::size_t i = 0; i < d; ++i) nn += v[a][i] * v[a][i];
    m[a][k] = nn;
  }
  double scale = 0.0;
  for (std::size_t a = 0; a < k; ++a) scale = std::max(scale, std::fabs(m[a][a]));
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    }
    if (std::fabs(m[piv][col]) <= 1e-13 * std::max(scale, 1e-300)) return BallD{};
    std::swap(m[piv], m[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c <= k; ++c) m[r][c] -= f * m[col][c];
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    const double lambda = m[a][k] / m[a][a];
    for (std::size_t i = 0; i < d; ++i) out.center[i] += lambda * v[a][i];
  }
  out.r2 = 0.0;
  for (int idx : boundary) out.r2 = std::max(out.r2, sq_dist(out.center, pts[idx].coords()));
  return out;
}

bool ball_contains(const BallD& b, const Point& p) {
  if (b.r2 < 0.0) return false;
  return std::sqrt(sq_dist(b.center, p.coords())) <= std::sqrt(b.r2) + kInnerEps;
}

struct MtfState {
  std::span<const Point> pts;
  std::vector<int> order;  // move-to-front list of point positions
  std::vector<int> boundary;
  BallD ball;
  std::vector<int> support;
  std::size_t max_boundary;
};

void mtf_mb(MtfState& s, std::size_t end) {
  s.ball = ball_through(s.pts, s.boundary);
  s.support = s.boundary;
  if (s.boundary.size() == s.max_boundary) return;
  for (std::size_t i = 0; i < end; ++i) {
    const int idx = s.order[i];
    if (ball_contains(s.ball, s.pts[idx])) continue;
    s.boundary.push_back(idx);
    mtf_mb(s, i);
    s.boundary.pop_back();
    // Move to front.
    std::rotate(s.order.begin(), s.order.begin() + static_cast<std::ptrdiff_t>(i),
                s.order.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  }
}

EnclosingBall general_l2(std::span<const Point> pts) {
  MtfState s{pts, {}, {}, {}, {}, pts[0].dim() + 1};
  s.order.resize(pts.size());
  std::iota(s.order.begin(), s.order.end(), 0);
  mtf_mb(s, pts.size());
  if (s.ball.r2 < 0.0) throw SolverError("degenerate point configuration in enclosing ball");
  return finish(Point{s.ball.center}, pts, NormSpec::l2(), s.support);
}

// --- Box norms --------------------------------------------------------------

struct BoxResult {
  std::vector<double> center;
  double radius = 0.0;
  int lo = 0;
  int hi = 0;
};

// Chebyshev ball of a coordinate-wise transformed point set.
template <class Coord>
BoxResult box_center(std::size_t count, std::size_t dim, Coord coord) {
  BoxResult out;
  out.center.assign(dim, 0.0);
  for (std::size_t axis = 0; axis < dim; ++axis) {
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (std::size_t i = 1; i < count; ++i) {
      if (coord(i, axis) < coord(lo, axis)) lo = i;
      if (coord(i, axis) > coord(hi, axis)) hi = i;
    }
    out.center[axis] = (coord(lo, axis) + coord(hi, axis)) / 2.0;
    const double half = (coord(hi, axis) - coord(lo, axis)) / 2.0;
    if (axis == 0 || half > out.radius) {
      out.radius = half;
      out.lo = static_cast<int>(lo);
      out.hi = static_cast<int>(hi);
    }
  }
  return out;
}

EnclosingBall linf_ball(std::span<const Point> pts) {
  const BoxResult box = box_center(pts.size(), pts[0].dim(),
                                   [&](std::size_t i, std::size_t a) { return pts[i][a]; });
  std::vector<int> support{box.lo};
  if (box.hi != box.lo) support.push_back(box.hi);
  return finish(Point{box.center}, pts, NormSpec::linf(), std::move(support));
}

// L1 in the plane is LInf after a 45-degree rotation (u = x + y, v = x - y).
EnclosingBall l1_planar_ball(std::span<const Point> pts) {
  const BoxResult box = box_center(pts.size(), 2, [&](std::size_t i, std::size_t a) {
    return a == 0 ? pts[i][0] + pts[i][1] : pts[i][0] - pts[i][1];
  });
  const double u = box.center[0];
  const double v = box.center[1];
  std::vector<int> support{box.lo};
  if (box.hi != box.lo) support.push_back(box.hi);
  return finish(Point{(u + v) / 2.0, (u - v) / 2.0}, pts, NormSpec::l1(), std::move(support));
}

// Golden-section minimisation of a convex function on [lo, hi].
template <class F>
double golden_min(double lo, double hi, F f) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 90 && b - a > 1e-15 * std::max(1.0, std::fabs(a)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

void require_nonempty(std::span<const Point> points) {
  if (points.empty()) throw_input("enclosing ball of an empty point set");
  const std::size_t d = points[0].dim();
  for (const Point& p : points) {
    if (p.dim() != d) throw_input("enclosing ball: mixed point dimensions");
  }
}

}  // namespace

EnclosingBall min_enclosing_ball(std::span<const Point> points, const NormSpec& norm) {
  require_nonempty(points);
  const std::size_t d = points[0].dim();
  if (points.size() == 1) return EnclosingBall{points[0], 0.0, {0}};
  if (d == 1) {
    // Every norm coincides with |x| on the line.
    EnclosingBall b = linf_ball(points);
    return b;
  }
  switch (norm.kind) {
    case NormKind::L2:
      return d == 2 ? planar_l2(points) : general_l2(points);
    case NormKind::LInf:
      return linf_ball(points);
    case NormKind::L1:
      if (d == 2) return l1_planar_ball(points);
      throw_capability("L1 enclosing ball is only available in the plane");
    case NormKind::Lp:
      break;
  }
  throw_capability("enclosing ball not available for norm " + norm.to_string());
}

EnclosingBall min_enclosing_ball_numeric(std::span<const Point> points, const NormSpec& norm) {
  require_nonempty(points);
  if (points.size() == 1) return EnclosingBall{points[0], 0.0, {0}};
  if (points[0].dim() != 2) throw_capability("numeric 1-center is only available in the plane");
  double xlo = points[0][0], xhi = xlo, ylo = points[0][1], yhi = ylo;
  for (const Point& p : points) {
    xlo = std::min(xlo, p[0]);
    xhi = std::max(xhi, p[0]);
    ylo = std::min(ylo, p[1]);
    yhi = std::max(yhi, p[1]);
  }
  auto radius_at = [&](double x, double y) {
    const Point c{x, y};
    double r = 0.0;
    for (const Point& p : points) r = std::max(r, distance(p, c, norm));
    return r;
  };
  auto best_y = [&](double x) { return golden_min(ylo, yhi, [&](double y) { return radius_at(x, y); }); };
  const double x = golden_min(xlo, xhi, [&](double xx) { return radius_at(xx, best_y(xx)); });
  const double y = best_y(x);
  return finish(Point{x, y}, points, norm, {});
}

namespace {

double small_set_radius(std::span<const Point> pts, const NormSpec& norm) {
  if (norm.kind == NormKind::Lp) return min_enclosing_ball_numeric(pts, norm).radius;
  return min_enclosing_ball(pts, norm).radius;
}

// Shrinks an infeasible set to an inclusion-minimal infeasible subset; by
// Helly's theorem the result has at most d + 1 members.
std::vector<int> deletion_filter(std::vector<int> members, std::span<const Point> pts,
                                 double rho, const NormSpec& norm) {
  std::vector<Point> scratch;
  for (std::size_t pos = 0; pos < members.size();) {
    if (members.size() <= 2) break;
    scratch.clear();
    for (std::size_t q = 0; q < members.size(); ++q) {
      if (q != pos) scratch.push_back(pts[members[q]]);
    }
    if (small_set_radius(scratch, norm) > rho + kGeomTolerance) {
      members.erase(members.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {
      ++pos;
    }
  }
  return members;
}

}  // namespace

FeasibilityCertificate cluster_feasible(std::span<const int> indices,
                                        std::span<const Point> points, double rho,
                                        const NormSpec& norm) {
  if (indices.empty()) throw_input("cluster_feasible requires a nonempty index set");
  std::vector<Point> pts;
  pts.reserve(indices.size());
  for (int idx : indices) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= points.size()) {
      throw_input("cluster_feasible: index out of range");
    }
    pts.push_back(points[idx]);
  }
  const std::size_t d = pts[0].dim();
  FeasibilityCertificate cert;

  // Support sets seen by the planar incremental construction (local positions).
  std::set<std::vector<int>> seen;
  EnclosingBall ball;
  const bool planar_l2 = norm.kind == NormKind::L2 && d == 2 && pts.size() > 1;
  if (planar_l2) {
    const CircleObserver observe = [&](const Circle& c) {
      if (c.r <= rho + kGeomTolerance) return;
      std::vector<int> s(c.support.begin(), c.support.begin() + c.support_size);
      std::sort(s.begin(), s.end());
      seen.insert(std::move(s));
    };
    const Circle c = planar_meb(pts, observe);
    std::vector<int> support(c.support.begin(), c.support.begin() + c.support_size);
    ball = finish(Point{c.x, c.y}, pts, norm, std::move(support));
  } else if (norm.kind == NormKind::Lp) {
    ball = min_enclosing_ball_numeric(pts, norm);
  } else {
    ball = min_enclosing_ball(pts, norm);
  }

  cert.radius = ball.radius;
  if (ball.radius <= rho + kGeomTolerance) {
    cert.feasible = true;
    cert.center = ball.center;
    return cert;
  }

  // Keep only support sets that are infeasible on their own.
  std::set<std::vector<int>> accepted;
  auto consider = [&](const std::vector<int>& local) {
    if (local.size() < 2 || local.size() > d + 1) return;
    std::vector<Point> sub;
    for (int q : local) sub.push_back(pts[q]);
    if (small_set_radius(sub, norm) > rho + kGeomTolerance) accepted.insert(local);
  };
  for (const auto& s : seen) consider(s);
  if (norm.kind != NormKind::Lp) consider(ball.support);
  if (accepted.empty()) {
    std::vector<int> all(pts.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> minimal = deletion_filter(std::move(all), pts, rho, norm);
    if (minimal.size() <= d + 1) accepted.insert(minimal);
  }
  for (const auto& local : accepted) {
    std::vector<int> w;
    w.reserve(local.size());
    for (int q : local) w.push_back(indices[q]);
    std::sort(w.begin(), w.end());
    cert.witnesses.push_back(std::move(w));
  }
  std::sort(cert.witnesses.begin(), cert.witnesses.end());
  cert.witnesses.erase(std::unique(cert.witnesses.begin(), cert.witnesses.end()),
                       cert.witnesses.end());
  return cert;
}

}  // namespace mtmclp
