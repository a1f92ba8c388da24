#include "knapsack/greedy.hpp"

#include <stdexcept>

namespace knapsack {

Solution plain_greedy(const Instance& instance) {
  return GreedyOrder(instance).prefix_solution(instance.weight_limit());
}

Solution greedy_prefix(const Instance& instance, double W) {
  if (!approx_ge(W, 0.0) || !approx_le(W, 1.0))
    throw std::domain_error("greedy_prefix: W must lie in [0, 1]");
  return GreedyOrder(instance).prefix_solution(W * instance.weight_limit());
}

GreedyRun modified_greedy(const Instance& instance, double eps, Rng& rng) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("modified_greedy: eps must lie in (0, 1)");
  GreedyRun run;
  double W = rng.uniform(1.0 - eps, 1.0);
  run.transcript.record(stage::greedy_W, W);
  run.solution = greedy_prefix(instance, W);
  return run;
}

Solution replay_modified_greedy(const Instance& instance, double eps,
                                const Transcript& transcript) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("modified_greedy: eps must lie in (0, 1)");
  TranscriptReader reader(transcript);
  double W = reader.next_real(stage::greedy_W);
  return greedy_prefix(instance, W);
}

}  // namespace knapsack
