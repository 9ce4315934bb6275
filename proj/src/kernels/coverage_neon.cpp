#include <arm_neon.h>

#include "mtmclp/kernels.hpp"

namespace mtmclp::kernels {
namespace {

template <NormKind kNorm>
std::size_t mark_neon(const double* xs, const double* ys, std::size_t n, double cx,
                      double cy, double radius, std::uint8_t* out) {
  const double r = radius + kGeomTolerance;
  const float64x2_t vcx = vdupq_n_f64(cx);
  const float64x2_t vcy = vdupq_n_f64(cy);
  const float64x2_t vr = vdupq_n_f64(kNorm == NormKind::L2 ? r * r : r);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(xs + i), vcx);
    const float64x2_t dy = vsubq_f64(vld1q_f64(ys + i), vcy);
    float64x2_t lhs;
    if constexpr (kNorm == NormKind::L1) {
      lhs = vaddq_f64(vabsq_f64(dx), vabsq_f64(dy));
    } else if constexpr (kNorm == NormKind::LInf) {
      lhs = vmaxq_f64(vabsq_f64(dx), vabsq_f64(dy));
    } else {
      lhs = vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy));
    }
    const uint64x2_t le = vcleq_f64(lhs, vr);
    const std::uint8_t h0 = vgetq_lane_u64(le, 0) ? 1 : 0;
    const std::uint8_t h1 = vgetq_lane_u64(le, 1) ? 1 : 0;
    out[i] = h0;
    out[i + 1] = h1;
    count += h0 + h1;
  }
  for (; i < n; ++i) {
    const bool hit = within_planar(kNorm, xs[i] - cx, ys[i] - cy, radius);
    out[i] = hit ? 1 : 0;
    count += hit;
  }
  return count;
}

}  // namespace

namespace detail {

const KernelTable* neon_table() {
  static const KernelTable table{mark_neon<NormKind::L1>, mark_neon<NormKind::L2>,
                                 mark_neon<NormKind::LInf>};
  return &table;
}

}  // namespace detail
}  // namespace mtmclp::kernels
