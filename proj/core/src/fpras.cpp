#include "knapsack/fpras.hpp"

#include <cmath>
#include <stdexcept>

#include "knapsack/oracles.hpp"

namespace knapsack {

Instance round_values(const Instance& instance, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("round_values: delta must be positive");
  std::vector<Item> rounded = instance.items();
  for (Item& it : rounded) it.value = std::floor(it.value / delta);
  return Instance(std::move(rounded), instance.weight_limit());
}

double fpras_delta_lo(const Instance& normalized_instance, double eps) {
  double eps_round = eps / 5.0;
  return fopt(normalized_instance) * eps_round /
         static_cast<double>(normalized_instance.size());
}

namespace {

FprasRun run_with_delta(const Instance& norm, double eps, double delta,
                        Rng& rng) {
  FprasRun run;
  run.transcript.record(stage::round_delta, delta);
  Instance rounded = round_values(norm, delta);
  StableConfig config;
  config.solver = CandidateSolver::dp;
  StableRun inner = stable_knapsack(rounded, eps / 5.0, rng, config);
  run.solution = std::move(inner.solution);
  run.transcript.append(inner.transcript);
  return run;
}

}  // namespace

FprasRun fpras(const Instance& instance, double eps, Rng& rng) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("fpras: eps must lie in (0, 1)");
  Instance norm = instance.normalized();
  if (norm.empty() || !(fopt(norm) > 0.0)) return {};
  double lo = fpras_delta_lo(norm, eps);
  double delta = rng.uniform(lo, 2.0 * lo);
  return run_with_delta(norm, eps, delta, rng);
}

FprasRun fpras_with_delta(const Instance& instance, double eps, double delta,
                          Rng& rng) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("fpras: eps must lie in (0, 1)");
  Instance norm = instance.normalized();
  if (norm.empty() || !(fopt(norm) > 0.0)) return {};
  return run_with_delta(norm, eps, delta, rng);
}

Solution replay_fpras(const Instance& instance, double eps,
                      const Transcript& transcript) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("fpras: eps must lie in (0, 1)");
  Instance norm = instance.normalized();
  if (norm.empty() || !(fopt(norm) > 0.0)) return {};
  TranscriptReader reader(transcript);
  double delta = reader.next_real(stage::round_delta);
  Instance rounded = round_values(norm, delta);
  // Hand the remaining stages to the inner replay.
  Transcript tail;
  const auto& entries = transcript.entries();
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].is_real())
      tail.record(entries[i].stage, entries[i].real());
    else
      tail.record(entries[i].stage, entries[i].integer());
  }
  StableConfig config;
  config.solver = CandidateSolver::dp;
  return replay_stable_knapsack(rounded, eps / 5.0, tail, config);
}

}  // namespace knapsack
