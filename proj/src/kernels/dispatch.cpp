#include <cstdlib>
#include <cstring>

#include "mtmclp/errors.hpp"
#include "mtmclp/kernels.hpp"

namespace mtmclp::kernels {

namespace detail {
#ifndef MTMCLP_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif
#ifndef MTMCLP_HAVE_NEON
const KernelTable* neon_table() { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(MTMCLP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const detail::KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return &detail::scalar_table();
    case Isa::Avx2:
      return cpu_has_avx2() ? detail::avx2_table() : nullptr;
    case Isa::Neon:
      return detail::neon_table();
  }
  return nullptr;
}

Isa detect_best() {
  // MTMCLP_FORCE_SCALAR pins the reference path, e.g. for A/B timing.
  if (const char* env = std::getenv("MTMCLP_FORCE_SCALAR"); env && std::strcmp(env, "0") != 0) {
    return Isa::Scalar;
  }
  if (table_for(Isa::Avx2) != nullptr) return Isa::Avx2;
  if (table_for(Isa::Neon) != nullptr) return Isa::Neon;
  return Isa::Scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) { return table_for(isa) != nullptr; }

Isa best_isa() {
  static const Isa best = detect_best();
  return best;
}

PlanarSoA::PlanarSoA(std::span<const Point> points) {
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const Point& p : points) {
    if (p.dim() != 2) throw_contract("PlanarSoA requires two-dimensional points");
    xs.push_back(p[0]);
    ys.push_back(p[1]);
  }
}

std::size_t mark_within(NormKind norm, const PlanarSoA& points, double cx, double cy,
                        double radius, std::span<std::uint8_t> out, Isa isa) {
  if (out.size() < points.size()) throw_contract("mark_within: output span too small");
  const detail::KernelTable* table = table_for(isa);
  if (table == nullptr) throw_capability("instruction set not available on this CPU");
  detail::MarkFn fn = nullptr;
  switch (norm) {
    case NormKind::L1:
      fn = table->l1;
      break;
    case NormKind::L2:
      fn = table->l2;
      break;
    case NormKind::LInf:
      fn = table->linf;
      break;
    case NormKind::Lp:
      throw_capability("batched coverage supports L1, L2 and LInf only");
  }
  return fn(points.xs.data(), points.ys.data(), points.size(), cx, cy, radius, out.data());
}

}  // namespace mtmclp::kernels
