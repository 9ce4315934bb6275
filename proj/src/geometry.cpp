#include "mtmclp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mtmclp/errors.hpp"
#include "mtmclp/kernels.hpp"

namespace mtmclp {

bool Point::all_finite() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](double v) { return std::isfinite(v); });
}

NormSpec NormSpec::lp(double tau) {
  if (!(tau >= 1.0)) throw_input("Lp norm requires tau >= 1");
  if (tau == 1.0) return l1();
  if (tau == 2.0) return l2();
  if (std::isinf(tau)) return linf();
  return {NormKind::Lp, tau};
}

std::string NormSpec::to_string() const {
  switch (kind) {
    case NormKind::L1:
      return "L1";
    case NormKind::L2:
      return "L2";
    case NormKind::LInf:
      return "LInf";
    case NormKind::Lp: {
      std::ostringstream os;
      os << "Lp(" << tau << ")";
      return os.str();
    }
  }
  return "?";
}

NormSpec parse_norm(const std::string& kind, std::optional<double> tau) {
  if (kind == "L1") return NormSpec::l1();
  if (kind == "L2") return NormSpec::l2();
  if (kind == "LInf") return NormSpec::linf();
  if (kind == "Lp") {
    if (!tau) throw_input("norm kind Lp requires a tau value");
    return NormSpec::lp(*tau);
  }
  throw_input("unknown norm kind '" + kind + "' (expected L1, L2, LInf or Lp)");
}

bool Ball::contains(const Point& p) const { return within(p, center, radius, norm); }

namespace {

void check_dims(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "dimension mismatch: " << a.dim() << " vs " << b.dim();
    throw_input(os.str());
  }
}

}  // namespace

double distance(const Point& a, const Point& b, const NormSpec& norm) {
  check_dims(a, b);
  const std::size_t d = a.dim();
  switch (norm.kind) {
    case NormKind::L1: {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += std::fabs(a[i] - b[i]);
      return s;
    }
    case NormKind::L2: {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
      }
      return std::sqrt(s);
    }
    case NormKind::LInf: {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s = std::max(s, std::fabs(a[i] - b[i]));
      return s;
    }
    case NormKind::Lp: {
      // Scale by the largest component so pow() stays in range.
      double scale = 0.0;
      for (std::size_t i = 0; i < d; ++i) scale = std::max(scale, std::fabs(a[i] - b[i]));
      if (scale == 0.0) return 0.0;
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += std::pow(std::fabs(a[i] - b[i]) / scale, norm.tau);
      return scale * std::pow(s, 1.0 / norm.tau);
    }
  }
  return 0.0;
}

bool within(const Point& a, const Point& b, double radius, const NormSpec& norm) {
  check_dims(a, b);
  if (a.dim() == 2 && norm.kind != NormKind::Lp) {
    return kernels::within_planar(norm.kind, a[0] - b[0], a[1] - b[1], radius);
  }
  if (norm.kind == NormKind::L2) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const double diff = a[i] - b[i];
      s += diff * diff;
    }
    const double r = radius + kGeomTolerance;
    return s <= r * r;
  }
  return distance(a, b, norm) <= radius + kGeomTolerance;
}

std::vector<Point> circle_boundary_intersection(const Point& c1, const Point& c2,
                                                double rho) {
  check_dims(c1, c2);
  if (c1.dim() != 2) throw_capability("circle_boundary_intersection requires d = 2");
  if (!(rho > 0.0)) throw_input("circle_boundary_intersection requires rho > 0");
  const double dx = c2[0] - c1[0];
  const double dy = c2[1] - c1[1];
  const double dist = std::hypot(dx, dy);
  if (dist == 0.0) throw_input("coincident circle centers have infinitely many crossings");
  const double half = dist / 2.0;
  if (half > rho + kGeomTolerance) return {};
  const double mx = c1[0] + dx / 2.0;
  const double my = c1[1] + dy / 2.0;
  const double h2 = rho * rho - half * half;
  if (h2 <= 0.0 || std::sqrt(std::max(h2, 0.0)) <= kGeomTolerance) {
    return {Point{mx, my}};
  }
  const double h = std::sqrt(h2);
  // Unit normal to the center line.
  const double nx = -dy / dist;
  const double ny = dx / dist;
  return {Point{mx + h * nx, my + h * ny}, Point{mx - h * nx, my - h * ny}};
}

bool separation_supported(const NormSpec& norm, std::size_t dim) {
  switch (norm.kind) {
    case NormKind::L2:
    case NormKind::LInf:
      return dim >= 1;
    case NormKind::L1:
      return dim <= 2;
    case NormKind::Lp:
      return dim == 2;
  }
  return false;
}

}  // namespace mtmclp
