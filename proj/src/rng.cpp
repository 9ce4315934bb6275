#include "mtmclp/rng.hpp"

#include "mtmclp/errors.hpp"

namespace mtmclp {

Pcg32::Pcg32(std::uint64_t seed, std::uint64_t stream) {
  inc_ = (stream << 1u) | 1u;
  next_u32();
  state_ += seed;
  next_u32();
}

std::uint32_t Pcg32::next_u32() {
  const std::uint64_t old = state_;
  state_ = old * 6364136223846793005ULL + inc_;
  const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  const auto rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
}

double Pcg32::next_double() {
  const std::uint64_t hi = next_u32() >> 5;  // 27 bits
  const std::uint64_t lo = next_u32() >> 6;  // 26 bits
  return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

Instance generate_instance(const GenerateSpec& spec) {
  if (spec.n < 1) throw_input("generate: n must be at least 1");
  if (spec.dimension < 1) throw_input("generate: dimension must be at least 1");
  if (!(spec.hi > spec.lo)) throw_input("generate: box must satisfy lo < hi");
  Instance inst;
  inst.name = spec.name.empty() ? "random-n" + std::to_string(spec.n) + "-d" +
                                      std::to_string(spec.dimension) + "-s" + std::to_string(spec.seed)
                                : spec.name;
  inst.seed = spec.seed;
  inst.dimension = spec.dimension;
  Pcg32 rng(spec.seed);
  for (std::size_t i = 0; i < spec.n; ++i) {
    std::vector<double> c(spec.dimension);
    for (double& v : c) v = rng.uniform(spec.lo, spec.hi);
    inst.demand.push_back(DemandPoint{Point(std::move(c)), 1.0});
  }
  inst = deduplicated(std::move(inst));
  for (const DiscreteGenSpec& d : spec.discrete) {
    DiscreteTypeSpec t;
    t.sites = inst.points();
    t.radii.assign(t.sites.size(), d.radius);
    t.count = d.count;
    t.norm = d.norm;
    inst.discrete_types.push_back(std::move(t));
  }
  inst.continuous_types = spec.continuous;
  validate(inst);
  return inst;
}

}  // namespace mtmclp
