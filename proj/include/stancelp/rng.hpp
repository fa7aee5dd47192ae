#pragma once

#include <cstdint>
#include <initializer_list>

namespace stancelp {

// Counter-keyed random streams: the stream for a key tuple such as
// (seed, horizon, replicate) is fixed regardless of which thread draws it.
// Engine is xoshiro256** seeded through SplitMix64.
class KeyedRng {
 public:
  explicit KeyedRng(std::initializer_list<std::uint64_t> key);

  std::uint64_t Next();
  // Uniform integer in [0, bound); bound > 0. Rejection sampling keeps it
  // exactly uniform and platform-independent.
  std::uint64_t Below(std::uint64_t bound);
  // Uniform double in [0, 1) with 53 random bits.
  double Uniform();
  // Standard normal via Box-Muller (no cached second value).
  double Normal();

 private:
  std::uint64_t s_[4];
};

std::uint64_t SplitMix64(std::uint64_t* state);

}  // namespace stancelp
