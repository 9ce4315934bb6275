#include <cmath>

#include "mtmclp/kernels.hpp"

namespace mtmclp::kernels {

bool within_planar(NormKind norm, double dx, double dy, double radius) {
  const double r = radius + kGeomTolerance;
  switch (norm) {
    case NormKind::L1:
      return std::fabs(dx) + std::fabs(dy) <= r;
    case NormKind::LInf:
      return std::fmax(std::fabs(dx), std::fabs(dy)) <= r;
    default: {
      const double sx = dx * dx;
      const double sy = dy * dy;
      return sx + sy <= r * r;
    }
  }
}

namespace {

template <NormKind kNorm>
std::size_t mark_scalar(const double* xs, const double* ys, std::size_t n, double cx,
                        double cy, double radius, std::uint8_t* out) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool hit = within_planar(kNorm, xs[i] - cx, ys[i] - cy, radius);
    out[i] = hit ? 1 : 0;
    count += hit;
  }
  return count;
}

}  // namespace

namespace detail {

const KernelTable& scalar_table() {
  static const KernelTable table{mark_scalar<NormKind::L1>, mark_scalar<NormKind::L2>,
                                 mark_scalar<NormKind::LInf>};
  return table;
}

}  // namespace detail
}  // namespace mtmclp::kernels
