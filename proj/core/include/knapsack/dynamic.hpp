#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knapsack/model.hpp"
#include "knapsack/rng.hpp"
#include "knapsack/transcript.hpp"

namespace knapsack {

// Per-step algorithm for the dynamic simulation. The exact candidate search
// is exponential in the number of large items, so long streams default to
// the rounded-value (fpras) path; small streams default to the exact one.
enum class StreamFamily { stable_exact, fpras };

struct StreamStep {
  std::size_t step = 0;  // 1-based
  ItemId changed_id = 0;
  std::size_t hamming = 0;   // |X_{k-1} symmetric-difference X_k|
  double value = 0.0;        // value of X_k on the current item set
  double reference_opt = 0.0;
  bool reference_exact = false;  // brute force vs fractional reference
  double wall_time_ms = 0.0;
  Solution solution;      // X_k
  Transcript transcript;  // stage draws behind X_k (replayable)
};

struct RecourseReport {
  std::vector<StreamStep> per_step;
  double amortized_recourse = 0.0;  // (1/n) * sum of hamming
  std::vector<ItemId> order;
  StreamFamily family = StreamFamily::stable_exact;
};

struct StreamOptions {
  // Arrival (or deletion) order; defaults to a uniformly random permutation
  // drawn from the rng. Must be a permutation of the instance's ids.
  std::optional<std::vector<ItemId>> order;
  std::optional<StreamFamily> family;  // default: exact for n <= 16
  std::size_t brute_force_reference_cap = 18;
};

// Incremental random-order simulation. X_0 = empty; at step k the solution
// on the first k items is sampled by extending step k-1's stage draws
// through the conditional (one-way) direction of each stage coupling, so
// X_k's marginal equals the static algorithm's law on that prefix.
RecourseReport stream_simulate(const Instance& full_instance, double eps,
                               Rng& rng, const StreamOptions& options = {});

// Mirror image: starts from the full instance and deletes items one by one.
RecourseReport decremental_simulate(const Instance& full_instance, double eps,
                                    Rng& rng,
                                    const StreamOptions& options = {});

std::string report_to_json(const RecourseReport& report);
std::string report_to_csv(const RecourseReport& report);

}  // namespace knapsack
