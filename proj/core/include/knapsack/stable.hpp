#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "knapsack/model.hpp"
#include "knapsack/order.hpp"
#include "knapsack/rng.hpp"
#include "knapsack/transcript.hpp"

namespace knapsack {

// Ids of items with value >= c (shared tolerance), ascending.
std::vector<ItemId> large_items(const Instance& instance, double c);

// Value-window index of v for threshold c: the unique t with
// t*c <= v < (t+1)*c under the shared half-open tolerance rule.
std::int64_t value_window(double v, double c);

// Reference oracle: min-weight subset A of the (large-item-restricted)
// instance with value in window t and weight within the weight limit;
// absent when no subset qualifies. Ties by lexicographically smallest id
// set. Item count above `cap` -> length_error.
std::optional<Solution> candidate_exact(const Instance& large_only,
                                        std::int64_t t, double c,
                                        std::size_t cap = 20);

// Same contract via the min-weight-per-value dynamic program; requires
// nonnegative integer item values (domain_error otherwise). Polynomial in
// the item count and the value cap.
std::optional<Solution> candidate_dp(const Instance& large_only,
                                     std::int64_t t, double c);

enum class CandidateSolver { exact, dp };

struct CandidateEntry {
  Solution set;     // A_t
  double weight;    // w(A_t), canonical ascending-id summation
  double score;     // x_t = t*c + fopt(smalls, 1 - w(A_t))
};

struct CandidateTable {
  double c = 0.0;
  std::int64_t l = 0;  // floor(fopt / c)
  std::vector<std::optional<CandidateEntry>> entries;  // size l+1

  // x_t per window; -infinity for absent entries.
  std::vector<double> scores() const;
};

// Exponential-mechanism distribution over indices: p_t proportional to
// exp(score_t / d), stabilized by subtracting the max finite score;
// -infinity scores get probability 0.
std::vector<double> exponential_mechanism_probs(std::span<const double> scores,
                                                double d);
// Samples an index from that distribution. All scores -infinity ->
// domain_error; d must be positive.
std::size_t exponential_mechanism(std::span<const double> scores, double d,
                                  Rng& rng);

// eps actually used internally by stable_knapsack: min(0.05, eps/12).
double stable_internal_eps(double eps);

struct StableConfig {
  CandidateSolver solver = CandidateSolver::exact;
  std::size_t exact_cap = 20;  // max |L| for the exact candidate search
};

// Deterministic pieces of one stable_knapsack run, split at the random
// draws so couplings and the incremental simulator can drive the stages
// themselves.
struct StablePrep {
  Instance norm;  // weights rescaled to limit 1
  double eps_int = 0.0;
  double fopt_value = 0.0;

  bool degenerate() const { return !(fopt_value > 0.0); }
  double c_lo() const { return eps_int * fopt_value; }
  double c_hi() const { return 2.0 * eps_int * fopt_value; }
  double W_lo() const { return 1.0 - eps_int; }
};

struct StableParts {
  const StablePrep* prep = nullptr;
  double c = 0.0;
  std::vector<ItemId> large;
  GreedyOrder smalls;  // norm items outside L, efficiency order
  CandidateTable table;
  double d = 0.0;
  std::vector<double> probs;  // exponential mechanism over 0..l
};

StablePrep stable_prep(const Instance& instance, double eps);
StableParts stable_parts(const StablePrep& prep, double c,
                         const StableConfig& config);
Solution stable_finish(const StableParts& parts, std::size_t t_index,
                       double W);

struct StableRun {
  Solution solution;
  Transcript transcript;
};

// StableOnAverageKnapsack: threshold sampling (stage "threshold_c"),
// candidate table + exponential mechanism (stage "exp_mech_t"), and the
// modified greedy on the remaining small items (stage "greedy_W").
// fopt == 0 degenerates to the empty solution with an empty transcript.
StableRun stable_knapsack(const Instance& instance, double eps, Rng& rng,
                          const StableConfig& config = {});

Solution replay_stable_knapsack(const Instance& instance, double eps,
                                const Transcript& transcript,
                                const StableConfig& config = {});

}  // namespace knapsack
