#pragma once

#include <cmath>
#include <cstdint>

// Reproducibility is an interface guarantee here, so the generator is part
// of the contract, not an implementation detail:
//
//   * pcg32 (PCG-XSH-RR 64/32, O'Neill): 64-bit LCG state, 32-bit output.
//   * next_u64 = (first draw << 32) | second draw.
//   * uniform doubles take the top 53 bits of next_u64.
//   * substream(seed, i) seeds stream i with the splitmix64 finalizer
//     applied to seed + (i+1) * 0x9e3779b97f4a7c15.
//   * standard normal variates via Marsaglia polar rejection.
//
// Identical seeds give identical values on every platform and thread count.

namespace mbistat::rng {

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Pcg32 {
public:
  Pcg32(std::uint64_t init_state, std::uint64_t init_seq) {
    state_ = 0u;
    inc_ = (init_seq << 1u) | 1u;
    next_u32();
    state_ += init_state;
    next_u32();
  }

  std::uint32_t next_u32() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const std::uint32_t xorshifted =
        static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

// Independent generator for experiment i of a seeded run.
inline Pcg32 substream(std::uint64_t seed, std::uint64_t i) {
  const std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
  const std::uint64_t init_state = splitmix64_mix(seed + (i + 1) * golden);
  const std::uint64_t init_seq =
      splitmix64_mix((seed ^ 0xda3e39cb94b95bdbULL) + (i + 1) * golden);
  return Pcg32(init_state, init_seq);
}

// Marsaglia polar method; caches the spare deviate.
class NormalSampler {
public:
  explicit NormalSampler(Pcg32 gen) : gen_(gen) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * gen_.next_double() - 1.0;
      v = 2.0 * gen_.next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

private:
  Pcg32 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace mbistat::rng
