#pragma once

#include "knapsack/model.hpp"
#include "knapsack/rng.hpp"
#include "knapsack/stable.hpp"
#include "knapsack/transcript.hpp"

namespace knapsack {

// Same ids and weights, values floored to integer multiples of delta:
// v'(i) = floor(v(i)/delta). delta <= 0 -> domain_error.
Instance round_values(const Instance& instance, double delta);

struct FprasRun {
  Solution solution;
  Transcript transcript;
};

// Polynomial-time variant: samples the rounding unit delta (stage
// "round_delta") from [fopt*eps'/n, 2*fopt*eps'/n] with eps' = eps/5, floors
// the values, then runs stable_knapsack on the rounded instance with the DP
// candidate solver at eps/5. The returned ids index the original instance.
FprasRun fpras(const Instance& instance, double eps, Rng& rng);

// Test hook: the same path with delta injected instead of sampled (still
// recorded in the transcript).
FprasRun fpras_with_delta(const Instance& instance, double eps, double delta,
                          Rng& rng);

Solution replay_fpras(const Instance& instance, double eps,
                      const Transcript& transcript);

// The delta sampling interval [lo, 2*lo).
double fpras_delta_lo(const Instance& normalized_instance, double eps);

}  // namespace knapsack
