#pragma once

#include <cstdint>
#include <span>

namespace knapsack {

// Seeded deterministic generator (SplitMix64 stream). Experiments derive
// independent substreams from (seed, stream indices) so results are
// reproducible and independent of thread scheduling: substream(i) always
// yields the same stream for the same parent seed, and construction is
// cheap enough for one generator per Monte Carlo trial.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  Rng substream(std::uint64_t a, std::uint64_t b = 0) const;

  // Uniform on [lo, hi). Requires hi > lo.
  double uniform(double lo, double hi);
  double uniform01();

  // Uniform integer in [0, n). Requires n > 0.
  std::uint64_t below(std::uint64_t n);

  // Index sampled proportionally to probs (nonnegative, not all zero).
  std::size_t categorical(std::span<const double> probs);

  std::uint64_t bits();

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

// SplitMix64 step; used for substream seed derivation.
std::uint64_t mix64(std::uint64_t x);

}  // namespace knapsack
