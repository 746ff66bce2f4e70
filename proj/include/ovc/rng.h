#pragma once

// PCG32 (XSH-RR 64/32) — small, fast, and with explicitly seedable
// independent streams. Every stochastic routine in this project takes one of
// these instead of <random> engines+distributions so that results are
// bit-reproducible across platforms and completely determined by
// (seed, stream): trial i of a Monte Carlo run always uses stream i.

#include <cstdint>

namespace ovc {

class Pcg32 {
 public:
  Pcg32() : Pcg32(0x853C49E6748FEA9BULL, 0xDA3E39CB94B95BDBULL) {}

  Pcg32(std::uint64_t seed, std::uint64_t stream) {
    state_ = 0;
    inc_ = (stream << 1u) | 1u;
    next();
    state_ += seed;
    next();
  }

  std::uint32_t next() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  // Unbiased bounded draw in [0, n): standard rejection threshold method.
  std::uint32_t bounded(std::uint32_t n) {
    const std::uint32_t threshold = (-n) % n;
    for (;;) {
      const std::uint32_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  std::uint8_t byte() { return static_cast<std::uint8_t>(next() >> 24); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    const std::uint64_t hi = next();
    const std::uint64_t lo = next();
    return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

}  // namespace ovc
