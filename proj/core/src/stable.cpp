#include "knapsack/stable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "knapsack/oracles.hpp"

namespace knapsack {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Per-window running best during subset enumeration: min weight, then
// lexicographically smallest id set.
struct WindowBest {
  bool present = false;
  double weight = 0.0;
  std::vector<ItemId> ids;

  void offer(double w, const std::vector<ItemId>& candidate) {
    if (!present || w < weight - tolerance()) {
      present = true;
      weight = w;
      ids = candidate;
    } else if (w <= weight + tolerance() &&
               std::lexicographical_compare(candidate.begin(), candidate.end(),
                                            ids.begin(), ids.end())) {
      weight = std::min(weight, w);
      ids = candidate;
    }
  }
};

// Enumerates every feasible subset of `items` once and bins it by value
// window; windows beyond l are ignored.
struct WindowEnumeration {
  const std::vector<Item>& items;
  double weight_cap;
  double c;
  std::int64_t l;
  std::vector<WindowBest>& bests;
  std::vector<ItemId> current;

  void descend(std::size_t index, double value, double weight) {
    if (index == items.size()) {
      std::int64_t t = value_window(value, c);
      if (t >= 0 && t <= l) bests[static_cast<std::size_t>(t)].offer(weight, current);
      return;
    }
    const Item& it = items[index];
    if (approx_le(weight + it.weight, weight_cap)) {
      current.push_back(it.id);
      descend(index + 1, value + it.value, weight + it.weight);
      current.pop_back();
    }
    descend(index + 1, value, weight);
  }
};

std::vector<WindowBest> enumerate_windows(const Instance& large_only, double c,
                                          std::int64_t l) {
  std::vector<WindowBest> bests(static_cast<std::size_t>(l + 1));
  WindowEnumeration walk{large_only.items(), large_only.weight_limit(), c, l,
                         bests, {}};
  walk.current.reserve(large_only.size());
  walk.descend(0, 0.0, 0.0);
  return bests;
}

// DP-side window solve over a shared value table.
std::optional<Solution> window_from_table(const ValueTable& table,
                                          const Instance& large_only,
                                          std::int64_t t, double c) {
  double lo = static_cast<double>(t) * c - tolerance();
  double hi = static_cast<double>(t + 1) * c - tolerance();
  std::int64_t s_lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(lo)));
  std::int64_t s_hi = std::min(table.value_cap(),
                               static_cast<std::int64_t>(std::ceil(hi)) - 1);
  double best_weight = kUnreachable;
  for (std::int64_t s = s_lo; s <= s_hi; ++s) {
    double w = table.min_weight(s);
    if (w == kUnreachable || !approx_le(w, large_only.weight_limit())) continue;
    best_weight = std::min(best_weight, w);
  }
  if (best_weight == kUnreachable) return std::nullopt;
  std::optional<Solution> best;
  for (std::int64_t s = s_lo; s <= s_hi; ++s) {
    double w = table.min_weight(s);
    if (w == kUnreachable || w > best_weight + tolerance()) continue;
    Solution candidate = table.reconstruct(s);
    if (!best || candidate < *best) best = std::move(candidate);
  }
  return best;
}

std::int64_t dp_value_cap(const Instance& large_only, double c,
                          std::int64_t l) {
  long double total = 0.0;
  for (const Item& it : large_only.items()) total += it.value;
  double window_top = static_cast<double>(l + 1) * c - tolerance();
  double capped = std::min(std::ceil(window_top) - 1.0,
                           static_cast<double>(total));
  capped = std::min(capped, 9.0e18);  // keep the cast defined; the table
                                      // size guard rejects it anyway
  return std::max<std::int64_t>(static_cast<std::int64_t>(capped), 0);
}

}  // namespace

std::vector<ItemId> large_items(const Instance& instance, double c) {
  if (!(c > 0.0)) throw std::domain_error("large_items: c must be positive");
  std::vector<ItemId> ids;
  for (const Item& it : instance.items())
    if (approx_ge(it.value, c)) ids.push_back(it.id);
  return ids;
}

std::int64_t value_window(double v, double c) {
  double window = std::floor((v + tolerance()) / c);
  if (window >= 9.2e18)
    throw std::domain_error("value_window: index overflows");
  return static_cast<std::int64_t>(window);
}

std::optional<Solution> candidate_exact(const Instance& large_only,
                                        std::int64_t t, double c,
                                        std::size_t cap) {
  if (!(c > 0.0)) throw std::domain_error("candidate_exact: c must be positive");
  if (t < 0) throw std::domain_error("candidate_exact: negative window index");
  if (large_only.size() > cap)
    throw std::length_error("candidate_exact: " +
                            std::to_string(large_only.size()) +
                            " items exceed the cap " + std::to_string(cap));
  // No subset can reach a window above the total value.
  if (t > 0 && t > value_window(large_only.total_value(), c))
    return std::nullopt;
  auto bests = enumerate_windows(large_only, c, t);
  const WindowBest& best = bests[static_cast<std::size_t>(t)];
  if (!best.present) return std::nullopt;
  return Solution(best.ids);
}

std::optional<Solution> candidate_dp(const Instance& large_only,
                                     std::int64_t t, double c) {
  if (!(c > 0.0)) throw std::domain_error("candidate_dp: c must be positive");
  if (t < 0) throw std::domain_error("candidate_dp: negative window index");
  ValueTable table = integer_value_opt(large_only, dp_value_cap(large_only, c, t));
  return window_from_table(table, large_only, t, c);
}

std::vector<double> CandidateTable::scores() const {
  std::vector<double> out(entries.size(), kNegInf);
  for (std::size_t t = 0; t < entries.size(); ++t)
    if (entries[t]) out[t] = entries[t]->score;
  return out;
}

std::vector<double> exponential_mechanism_probs(std::span<const double> scores,
                                                double d) {
  if (!(d > 0.0))
    throw std::domain_error("exponential_mechanism: d must be positive");
  double max_score = kNegInf;
  for (double s : scores) max_score = std::max(max_score, s);
  if (max_score == kNegInf)
    throw std::domain_error("exponential_mechanism: no finite score");
  std::vector<double> probs(scores.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] == kNegInf) continue;
    probs[i] = std::exp((scores[i] - max_score) / d);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

std::size_t exponential_mechanism(std::span<const double> scores, double d,
                                  Rng& rng) {
  std::vector<double> probs = exponential_mechanism_probs(scores, d);
  return rng.categorical(probs);
}

double stable_internal_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("stable_knapsack: eps must lie in (0, 1)");
  return std::min(0.05, eps / 12.0);
}

StablePrep stable_prep(const Instance& instance, double eps) {
  StablePrep prep;
  prep.eps_int = stable_internal_eps(eps);
  prep.norm = instance.normalized();
  prep.fopt_value = fopt(prep.norm);
  return prep;
}

StableParts stable_parts(const StablePrep& prep, double c,
                         const StableConfig& config) {
  if (!(c > 0.0)) throw std::domain_error("stable_parts: c must be positive");
  StableParts parts;
  parts.prep = &prep;
  parts.c = c;

  parts.large = large_items(prep.norm, c);
  std::vector<Item> large_items_vec, small_items_vec;
  for (const Item& it : prep.norm.items()) {
    if (std::binary_search(parts.large.begin(), parts.large.end(), it.id))
      large_items_vec.push_back(it);
    else
      small_items_vec.push_back(it);
  }
  Instance large_only(std::move(large_items_vec), 1.0);
  parts.smalls = GreedyOrder(Instance(std::move(small_items_vec), 1.0));

  CandidateTable& table = parts.table;
  table.c = c;
  table.l = static_cast<std::int64_t>(std::floor(prep.fopt_value / c));
  table.entries.resize(static_cast<std::size_t>(table.l + 1));

  if (config.solver == CandidateSolver::exact) {
    if (large_only.size() > config.exact_cap)
      throw std::length_error("stable_knapsack: |L| = " +
                              std::to_string(large_only.size()) +
                              " exceeds the exact candidate cap " +
                              std::to_string(config.exact_cap));
    auto bests = enumerate_windows(large_only, c, table.l);
    for (std::int64_t t = 0; t <= table.l; ++t) {
      WindowBest& b = bests[static_cast<std::size_t>(t)];
      if (b.present)
        table.entries[static_cast<std::size_t>(t)] =
            CandidateEntry{Solution(std::move(b.ids)), 0.0, 0.0};
    }
  } else {
    ValueTable value_table =
        integer_value_opt(large_only, dp_value_cap(large_only, c, table.l));
    for (std::int64_t t = 0; t <= table.l; ++t) {
      auto best = window_from_table(value_table, large_only, t, c);
      if (best)
        table.entries[static_cast<std::size_t>(t)] =
            CandidateEntry{std::move(*best), 0.0, 0.0};
    }
  }

  for (std::int64_t t = 0; t <= table.l; ++t) {
    auto& entry = table.entries[static_cast<std::size_t>(t)];
    if (!entry) continue;
    // Recompute the weight canonically (ascending-id summation) so both
    // candidate solvers agree bit for bit.
    entry->weight = weight_of(prep.norm, entry->set);
    double residual = std::max(0.0, 1.0 - entry->weight);
    entry->score = static_cast<double>(t) * c +
                   parts.smalls.fractional_value(residual);
  }

  parts.d = c / (10.0 * std::log(1.0 / prep.eps_int));
  parts.probs = exponential_mechanism_probs(table.scores(), parts.d);
  return parts;
}

Solution stable_finish(const StableParts& parts, std::size_t t_index,
                       double W) {
  if (t_index >= parts.table.entries.size() ||
      !parts.table.entries[t_index])
    throw std::domain_error("stable_finish: window " +
                            std::to_string(t_index) + " has no candidate");
  const CandidateEntry& entry = *parts.table.entries[t_index];
  double residual = std::max(0.0, 1.0 - entry.weight);
  Solution small_part = parts.smalls.prefix_solution(W * residual);
  return solution_union(entry.set, small_part);
}

StableRun stable_knapsack(const Instance& instance, double eps, Rng& rng,
                          const StableConfig& config) {
  StablePrep prep = stable_prep(instance, eps);
  if (prep.degenerate()) return {};

  StableRun run;
  double c = rng.uniform(prep.c_lo(), prep.c_hi());
  run.transcript.record(stage::threshold_c, c);

  StableParts parts = stable_parts(prep, c, config);
  auto t_index = rng.categorical(parts.probs);
  run.transcript.record(stage::exp_mech_t, static_cast<std::int64_t>(t_index));

  double W = rng.uniform(prep.W_lo(), 1.0);
  run.transcript.record(stage::greedy_W, W);

  run.solution = stable_finish(parts, t_index, W);
  return run;
}

Solution replay_stable_knapsack(const Instance& instance, double eps,
                                const Transcript& transcript,
                                const StableConfig& config) {
  StablePrep prep = stable_prep(instance, eps);
  if (prep.degenerate()) return {};
  TranscriptReader reader(transcript);
  double c = reader.next_real(stage::threshold_c);
  StableParts parts = stable_parts(prep, c, config);
  auto t_index = static_cast<std::size_t>(reader.next_int(stage::exp_mech_t));
  double W = reader.next_real(stage::greedy_W);
  return stable_finish(parts, t_index, W);
}

}  // namespace knapsack
