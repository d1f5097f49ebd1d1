// Deterministic random source shared by every generator.
//
// The generator is SplitMix64 (Steele, Lea & Flood), defined by:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// Unit draws take the top 53 bits: (next_u64() >> 11) * 2^-53, which is exact
// in IEEE double and always in [0, 1).

#pragma once

#include <cstdint>
#include <vector>

namespace tunesmith {

class RandomSource {
 public:
  explicit RandomSource(uint64_t seed);

  /// Replays a fixed list of unit values, cycling when exhausted. Lets tests
  /// force particular branches of a generator.
  static RandomSource replay(std::vector<double> units);

  uint64_t next_u64();

  /// Uniform in [0, 1).
  double next_unit();

  /// Uniform integer in [lo, hi], computed as lo + floor(u * (hi - lo + 1)).
  int uniform_int(int lo, int hi);

  /// True with probability percent / 100 (u * 100 < percent).
  bool chance_percent(double percent);

  /// Independent stream derived from this source's seed and a stream tag.
  /// Forking does not consume draws from the parent.
  RandomSource fork(uint64_t stream) const;

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  uint64_t state_;
  std::vector<double> script_;
  size_t script_pos_ = 0;
};

/// One SplitMix64 finalization step, exposed for seed derivation.
uint64_t mix64(uint64_t value);

}  // namespace tunesmith
