#include "knapsack/rng.hpp"

#include <stdexcept>

namespace knapsack {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t finalize(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) { return finalize(x + kGolden); }

Rng::Rng(std::uint64_t seed) : seed_(seed), state_(mix64(seed)) {}

Rng Rng::substream(std::uint64_t a, std::uint64_t b) const {
  return Rng(mix64(seed_ ^ mix64(a ^ mix64(b))));
}

std::uint64_t Rng::bits() {
  // SplitMix64: counter plus finalizer. Construction is a single mix, so
  // per-trial generators are cheap enough for hot Monte Carlo loops.
  state_ += kGolden;
  return finalize(state_);
}

double Rng::uniform(double lo, double hi) {
  if (!(hi > lo)) throw std::domain_error("uniform: empty interval");
  return lo + (hi - lo) * uniform01();
}

double Rng::uniform01() {
  // 53-bit mantissa in [0, 1).
  return static_cast<double>(bits() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::domain_error("below: n must be positive");
  std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n; rejection keeps it unbiased
  for (;;) {
    std::uint64_t r = bits();
    if (r >= threshold) return r % n;
  }
}

std::size_t Rng::categorical(std::span<const double> probs) {
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::domain_error("categorical: negative mass");
    total += p;
  }
  if (!(total > 0.0)) throw std::domain_error("categorical: all mass zero");
  double u = uniform01() * total;
  double cum = 0.0;
  std::size_t last_positive = 0;
  bool seen = false;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = i;
    seen = true;
    cum += probs[i];
    if (u < cum) return i;
  }
  // Rounding pushed u past the accumulated total; return the last bucket.
  if (!seen) throw std::domain_error("categorical: all mass zero");
  return last_positive;
}

}  // namespace knapsack
