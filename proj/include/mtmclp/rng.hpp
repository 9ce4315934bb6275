#pragma once

// PCG32 (O'Neill's pcg32: 64-bit LCG state, XSH-RR output) and the seeded
// instance generator built on it.

#include <cstdint>
#include <string>
#include <vector>

#include "mtmclp/model.hpp"

namespace mtmclp {

class Pcg32 {
 public:
  static constexpr std::uint64_t kDefaultStream = 54;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = kDefaultStream);

  std::uint32_t next_u32();
  // Uniform in [0, 1) with 53 random bits.
  double next_double();
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

struct DiscreteGenSpec {
  double radius = 0.2;
  int count = 1;
  NormSpec norm = NormSpec::l2();
};

struct GenerateSpec {
  std::uint64_t seed = 0;
  std::size_t n = 50;
  std::size_t dimension = 2;
  double lo = 0.0;
  double hi = 1.0;
  // Discrete types use the demand points themselves as candidate sites.
  std::vector<DiscreteGenSpec> discrete;
  std::vector<ContinuousTypeSpec> continuous;
  std::string name;  // defaults to "random-n<n>-d<d>-s<seed>"
};

// Unit-weight points drawn uniformly from [lo, hi]^d, coordinates in order.
Instance generate_instance(const GenerateSpec& spec);

}  // namespace mtmclp
