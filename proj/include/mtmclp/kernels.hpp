#pragma once

// Batched planar coverage tests over structure-of-arrays point sets.
//
// Every variant computes exactly the same comparisons as the scalar
// reference (no fused multiply-add), so results are bit-identical across
// instruction sets. The radius passed in is the raw coverage radius; the
// kGeomTolerance slack is applied inside.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mtmclp/geometry.hpp"

namespace mtmclp::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
// Best available instruction set on this CPU (cached after first call).
Isa best_isa();

struct PlanarSoA {
  std::vector<double> xs;
  std::vector<double> ys;

  PlanarSoA() = default;
  explicit PlanarSoA(std::span<const Point> points);
  std::size_t size() const { return xs.size(); }
};

// out[i] = 1 iff point i lies in the closed ball of `radius` around (cx, cy).
// Only L1, L2 and LInf are accepted; returns the number of marked points.
std::size_t mark_within(NormKind norm, const PlanarSoA& points, double cx, double cy,
                        double radius, std::span<std::uint8_t> out, Isa isa);

inline std::size_t mark_within(NormKind norm, const PlanarSoA& points, double cx,
                               double cy, double radius, std::span<std::uint8_t> out) {
  return mark_within(norm, points, cx, cy, radius, out, best_isa());
}

// The scalar predicate every variant reproduces.
bool within_planar(NormKind norm, double dx, double dy, double radius);

namespace detail {
using MarkFn = std::size_t (*)(const double*, const double*, std::size_t, double, double,
                               double, std::uint8_t*);
struct KernelTable {
  MarkFn l1;
  MarkFn l2;
  MarkFn linf;
};
const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
const KernelTable* neon_table();
}  // namespace detail

}  // namespace mtmclp::kernels
