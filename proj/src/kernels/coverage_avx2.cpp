// Compiled with -mavx2 only; reached solely through the runtime dispatcher
// after a CPUID check.
#include <immintrin.h>

#include "mtmclp/kernels.hpp"

namespace mtmclp::kernels {
namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

template <NormKind kNorm>
std::size_t mark_avx2(const double* xs, const double* ys, std::size_t n, double cx,
                      double cy, double radius, std::uint8_t* out) {
  const double r = radius + kGeomTolerance;
  const __m256d vcx = _mm256_set1_pd(cx);
  const __m256d vcy = _mm256_set1_pd(cy);
  const __m256d vr = _mm256_set1_pd(kNorm == NormKind::L2 ? r * r : r);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vcx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vcy);
    __m256d lhs;
    if constexpr (kNorm == NormKind::L1) {
      lhs = _mm256_add_pd(abs_pd(dx), abs_pd(dy));
    } else if constexpr (kNorm == NormKind::LInf) {
      lhs = _mm256_max_pd(abs_pd(dx), abs_pd(dy));
    } else {
      lhs = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    }
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(lhs, vr, _CMP_LE_OQ));
    for (int lane = 0; lane < 4; ++lane) {
      const std::uint8_t hit = (mask >> lane) & 1;
      out[i + lane] = hit;
      count += hit;
    }
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

const KernelTable* avx2_table() {
  static const KernelTable table{mark_avx2<NormKind::L1>, mark_avx2<NormKind::L2>,
                                 mark_avx2<NormKind::LInf>};
  return &table;
}

}  // namespace detail
}  // namespace mtmclp::kernels
