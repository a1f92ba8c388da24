#include "knapsack/dynamic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "knapsack/coupling.hpp"
#include "knapsack/fpras.hpp"
#include "knapsack/oracles.hpp"
#include "knapsack/stable.hpp"

namespace knapsack {

namespace {

// Stage draws of the previous step, kept with their distributions so the
// next step can sample from the conditional side of each maximal coupling.
struct StageState {
  bool present = false;       // previous step was non-degenerate
  bool has_delta = false;     // fpras family only
  UniformInterval delta_interval;
  double delta = 0.0;
  UniformInterval c_interval;
  double c = 0.0;
  std::vector<double> probs;
  std::size_t t = 0;
  double W = 0.0;
};

struct StepOutcome {
  Solution solution;
  Transcript transcript;
  StageState state;
};

// One chain step: sample this instance's stage draws conditionally on the
// previous step's (one-way transport), falling back to fresh draws where the
// previous stage is absent. Marginals equal the static algorithm's law.
StepOutcome advance(const Instance& current, double eps, StreamFamily family,
                    const StageState& prev, Rng& rng) {
  StepOutcome out;
  const bool use_delta = (family == StreamFamily::fpras);
  const double stable_eps = use_delta ? eps / 5.0 : eps;

  if (current.empty() || !(fopt(current) > 0.0)) return out;

  Instance rounded;  // fpras family solves the rounded instance
  const Instance* stage_instance = &current;
  StableConfig config;

  if (use_delta) {
    double lo = fpras_delta_lo(current, eps);
    UniformInterval iv{lo, 2.0 * lo};
    double delta;
    if (prev.present && prev.has_delta)
      delta = conditional_maximal_uniform(iv, prev.delta_interval, prev.delta,
                                          rng);
    else
      delta = rng.uniform(iv.lo, iv.hi);
    out.transcript.record(stage::round_delta, delta);
    out.state.has_delta = true;
    out.state.delta_interval = iv;
    out.state.delta = delta;
    rounded = round_values(current, delta);
    stage_instance = &rounded;
    config.solver = CandidateSolver::dp;
  }

  StablePrep prep = stable_prep(*stage_instance, stable_eps);
  if (prep.degenerate()) {
    // Cannot happen for the fpras rounding (the max-value item survives),
    // but degrade gracefully: empty output, no further stages.
    out.state = StageState{};
    return out;
  }

  UniformInterval c_iv{prep.c_lo(), prep.c_hi()};
  double c;
  if (prev.present)
    c = conditional_maximal_uniform(c_iv, prev.c_interval, prev.c, rng);
  else
    c = rng.uniform(c_iv.lo, c_iv.hi);
  out.transcript.record(stage::threshold_c, c);

  StableParts parts = stable_parts(prep, c, config);
  std::size_t t;
  if (prev.present)
    t = conditional_maximal_categorical(parts.probs, prev.probs, prev.t, rng);
  else
    t = rng.categorical(parts.probs);
  out.transcript.record(stage::exp_mech_t, static_cast<std::int64_t>(t));

  // The greedy draw's law never depends on the instance; the identity
  // coupling carries it across steps.
  double W = prev.present ? prev.W : rng.uniform(prep.W_lo(), 1.0);
  out.transcript.record(stage::greedy_W, W);

  out.solution = stable_finish(parts, t, W);
  out.state.present = true;
  out.state.c_interval = c_iv;
  out.state.c = c;
  out.state.probs = parts.probs;
  out.state.t = t;
  out.state.W = W;
  return out;
}

std::vector<ItemId> resolve_order(const Instance& full,
                                  const StreamOptions& options, Rng& rng) {
  std::vector<ItemId> ids;
  ids.reserve(full.size());
  for (const Item& it : full.items()) ids.push_back(it.id);
  if (!options.order) {
    // Fisher-Yates with the injected generator.
    for (std::size_t i = ids.size(); i > 1; --i)
      std::swap(ids[i - 1], ids[rng.below(i)]);
    return ids;
  }
  std::vector<ItemId> order = *options.order;
  std::vector<ItemId> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != ids)
    throw std::domain_error(
        "stream order is not a permutation of the instance ids");
  return order;
}

StreamFamily resolve_family(const Instance& full, const StreamOptions& options) {
  if (options.family) return *options.family;
  return full.size() <= 16 ? StreamFamily::stable_exact : StreamFamily::fpras;
}

Instance subset_instance(const Instance& norm,
                         const std::vector<ItemId>& ids_sorted) {
  std::vector<Item> items;
  items.reserve(ids_sorted.size());
  for (const Item& it : norm.items())
    if (std::binary_search(ids_sorted.begin(), ids_sorted.end(), it.id))
      items.push_back(it);
  return Instance(std::move(items), 1.0);
}

RecourseReport run_chain(const Instance& full, double eps, Rng& rng,
                         const StreamOptions& options, bool incremental) {
  if (full.empty()) throw std::domain_error("stream: empty instance");
  RecourseReport report;
  report.order = resolve_order(full, options, rng);
  report.family = resolve_family(full, options);
  Instance norm = full.normalized();
  const std::size_t n = full.size();

  // Current item set: grows along `order` for the incremental chain,
  // shrinks for the decremental one (which starts from the full set).
  std::vector<ItemId> current_ids;
  if (!incremental) {
    current_ids.assign(report.order.begin(), report.order.end());
    std::sort(current_ids.begin(), current_ids.end());
  }

  StageState state;
  Solution previous_solution;
  if (!incremental) {
    StepOutcome start = advance(norm, eps, report.family, StageState{}, rng);
    state = start.state;
    previous_solution = start.solution;
  }

  for (std::size_t k = 0; k < n; ++k) {
    ItemId changed = report.order[k];
    if (incremental) {
      current_ids.insert(
          std::lower_bound(current_ids.begin(), current_ids.end(), changed),
          changed);
    } else {
      current_ids.erase(
          std::lower_bound(current_ids.begin(), current_ids.end(), changed));
    }
    Instance current = subset_instance(norm, current_ids);

    auto t0 = std::chrono::steady_clock::now();
    StepOutcome outcome = advance(current, eps, report.family, state, rng);
    auto t1 = std::chrono::steady_clock::now();

    StreamStep step;
    step.step = k + 1;
    step.changed_id = changed;
    step.hamming = hamming_distance(previous_solution, outcome.solution);
    step.value = value_of(norm, outcome.solution);
    if (current.size() <= options.brute_force_reference_cap) {
      step.reference_opt = brute_force_opt(current).value;
      step.reference_exact = true;
    } else {
      step.reference_opt = fopt(current);
      step.reference_exact = false;
    }
    step.wall_time_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    step.solution = outcome.solution;
    step.transcript = std::move(outcome.transcript);
    report.per_step.push_back(std::move(step));

    previous_solution = report.per_step.back().solution;
    state = std::move(outcome.state);
  }

  double total = 0.0;
  for (const StreamStep& s : report.per_step)
    total += static_cast<double>(s.hamming);
  report.amortized_recourse = total / static_cast<double>(n);
  return report;
}

}  // namespace

RecourseReport stream_simulate(const Instance& full_instance, double eps,
                               Rng& rng, const StreamOptions& options) {
  return run_chain(full_instance, eps, rng, options, true);
}

RecourseReport decremental_simulate(const Instance& full_instance, double eps,
                                    Rng& rng, const StreamOptions& options) {
  return run_chain(full_instance, eps, rng, options, false);
}

}  // namespace knapsack
