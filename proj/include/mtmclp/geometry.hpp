#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mtmclp {

// Absolute tolerance for closed-ball membership and radius comparisons.
inline constexpr double kGeomTolerance = 1e-9;

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  bool all_finite() const;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

enum class NormKind { L1, L2, LInf, Lp };

struct NormSpec {
  NormKind kind = NormKind::L2;
  double tau = 2.0;  // only meaningful for Lp

  static NormSpec l1() { return {NormKind::L1, 1.0}; }
  static NormSpec l2() { return {NormKind::L2, 2.0}; }
  static NormSpec linf() { return {NormKind::LInf, 0.0}; }
  // Lp(1) and Lp(2) are folded into L1 and L2.
  static NormSpec lp(double tau);

  std::string to_string() const;
  friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

// Throws InputError for an unknown name or tau < 1.
NormSpec parse_norm(const std::string& kind, std::optional<double> tau = {});

struct Ball {
  Point center;
  double radius = 0.0;
  NormSpec norm;

  bool contains(const Point& p) const;
};

struct FeasibilityCertificate {
  bool feasible = false;
  std::optional<Point> center;
  double radius = 0.0;
  // Index subsets (into the caller's point list) with empty common ball
  // intersection. Empty iff feasible.
  std::vector<std::vector<int>> witnesses;
};

struct EnclosingBall {
  Point center;
  double radius = 0.0;
  // Positions (into the input span) of the points defining the ball.
  std::vector<int> support;
};

double distance(const Point& a, const Point& b, const NormSpec& norm);

// Closed-ball membership with kGeomTolerance slack. Planar L1/L2/LInf use the
// same arithmetic as the batched coverage kernels.
bool within(const Point& a, const Point& b, double radius, const NormSpec& norm);

// Boundary crossings of two Euclidean circles of equal radius (d = 2).
std::vector<Point> circle_boundary_intersection(const Point& c1, const Point& c2,
                                                double rho);

// Supported: L2 in any dimension, LInf in any dimension, L1 in the plane.
EnclosingBall min_enclosing_ball(std::span<const Point> points, const NormSpec& norm);

// Numeric minimax 1-center in the plane for any norm (used for Lp(tau)).
EnclosingBall min_enclosing_ball_numeric(std::span<const Point> points,
                                         const NormSpec& norm);

// Whether the rho-balls around the selected points share a common point.
// `indices` select from `points`; witnesses refer to the same index space.
FeasibilityCertificate cluster_feasible(std::span<const int> indices,
                                        std::span<const Point> points, double rho,
                                        const NormSpec& norm);

// True when separation can compute exact enclosing balls for this pair.
bool separation_supported(const NormSpec& norm, std::size_t dim);

}  // namespace mtmclp
