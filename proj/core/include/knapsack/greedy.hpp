#pragma once

#include "knapsack/model.hpp"
#include "knapsack/order.hpp"
#include "knapsack/rng.hpp"
#include "knapsack/transcript.hpp"

namespace knapsack {

// Deterministic greedy: maximal efficiency-ordered prefix within the weight
// limit. High approximation quality, unbounded average sensitivity.
Solution plain_greedy(const Instance& instance);

// S(W): maximal efficiency-ordered prefix of total weight <= W on the
// normalized scale. W outside [0, 1] -> domain_error.
Solution greedy_prefix(const Instance& instance, double W);

struct GreedyRun {
  Solution solution;
  Transcript transcript;
};

// Greedy with the weight limit sampled from [1-eps, 1] instead of fixed at 1.
// The draw is recorded under stage "greedy_W". eps outside (0,1) ->
// domain_error.
GreedyRun modified_greedy(const Instance& instance, double eps, Rng& rng);

Solution replay_modified_greedy(const Instance& instance, double eps,
                                const Transcript& transcript);

}  // namespace knapsack
