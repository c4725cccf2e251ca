#pragma once

#include <array>
#include <cstdint>

#include "antsim/types.hpp"

namespace antsim {

// Philox 4x32-10 counter-based generator (Salmon et al., SC'11).
// A (counter, key) pair maps to 128 independent output bits, so every draw in
// a run is keyed directly by (seed, round, ant, purpose, task) and can be
// evaluated in any order, or in parallel, with identical results.
struct Philox4x32 {
  static constexpr std::uint32_t kMulA = 0xD2511F53u;
  static constexpr std::uint32_t kMulB = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
  static constexpr std::uint32_t kWeylB = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        key[0] += kWeylA;
        key[1] += kWeylB;
      }
      const std::uint64_t prodA = std::uint64_t(kMulA) * ctr[0];
      const std::uint64_t prodB = std::uint64_t(kMulB) * ctr[2];
      ctr = {std::uint32_t(prodB >> 32) ^ ctr[1] ^ key[0], std::uint32_t(prodB),
             std::uint32_t(prodA >> 32) ^ ctr[3] ^ key[1], std::uint32_t(prodA)};
    }
    return ctr;
  }
};

// Purpose tags keep the streams for different decisions independent.
enum class Draw : std::uint32_t {
  kFeedback = 0,
  kPause = 1,
  kLeave = 2,
  kJoinChoice = 3,
  kInit = 4,
  kSequentialPick = 5,
  kCommonFeedback = 6,
  kAdversaryFlip = 7,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Deterministic derivation from (seed, round, ant, purpose, task) to draws.
class RandomnessContext {
 public:
  RandomnessContext() = default;
  explicit RandomnessContext(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits(std::uint64_t round, std::uint32_t ant, Draw purpose,
                     std::uint32_t task = 0) const {
    const auto out = Philox4x32::block(
        {std::uint32_t(round), std::uint32_t(round >> 32), ant,
         (std::uint32_t(purpose) << 24) | (task & 0x00FFFFFFu)},
        {std::uint32_t(seed_), std::uint32_t(seed_ >> 32)});
    return (std::uint64_t(out[0]) << 32) | out[1];
  }

  // Uniform in [0, 1) on the 2^-53 grid.
  double uniform01(std::uint64_t round, std::uint32_t ant, Draw purpose,
                   std::uint32_t task = 0) const {
    return double(bits(round, ant, purpose, task) >> 11) * 0x1.0p-53;
  }

  bool bernoulli(std::uint64_t round, std::uint32_t ant, Draw purpose, double p,
                 std::uint32_t task = 0) const {
    return uniform01(round, ant, purpose, task) < p;
  }

  // Uniform in [0, m), m >= 1. Fixed-point multiply; bias is 2^-64.
  std::uint32_t pick(std::uint64_t round, std::uint32_t ant, Draw purpose,
                     std::uint32_t m) const {
    return std::uint32_t(
        (unsigned __int128)bits(round, ant, purpose) * m >> 64);
  }

 private:
  std::uint64_t seed_ = 0;
};

// View bound to one (round, ant); what an agent's step function sees.
class AgentRng {
 public:
  AgentRng(const RandomnessContext& ctx, std::uint64_t round, std::uint32_t ant)
      : ctx_(&ctx), round_(round), ant_(ant) {}

  bool bernoulli(Draw purpose, double p) const {
    return ctx_->bernoulli(round_, ant_, purpose, p);
  }
  std::uint32_t pick(Draw purpose, std::uint32_t m) const {
    return ctx_->pick(round_, ant_, purpose, m);
  }

 private:
  const RandomnessContext* ctx_;
  std::uint64_t round_;
  std::uint32_t ant_;
};

}  // namespace antsim
