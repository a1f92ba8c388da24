#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "knapsack/model.hpp"
#include "knapsack/rng.hpp"
#include "knapsack/stable.hpp"

namespace knapsack {

enum class AlgorithmFamily {
  plain_greedy,
  modified_greedy,
  stable_knapsack,
  fpras,
  simple_stable,
  brute_force_opt,
};

bool family_is_deterministic(AlgorithmFamily family);
const char* family_name(AlgorithmFamily family);

// One run of the family on the instance (rng unused for deterministic
// families).
Solution run_family(AlgorithmFamily family, const Instance& instance,
                    double eps, Rng& rng, const StableConfig& config = {});

// Finite output distribution: unique solutions with probability mass.
struct EmpiricalDistribution {
  std::vector<std::pair<Solution, double>> support;
};

EmpiricalDistribution empirical_distribution(
    const std::function<Solution(Rng&)>& algorithm, std::size_t trials,
    Rng& rng);
EmpiricalDistribution empirical_distribution(AlgorithmFamily family,
                                             const Instance& instance,
                                             double eps, std::size_t trials,
                                             Rng& rng,
                                             const StableConfig& config = {});

enum class SensitivityMethod { exact, coupled_mc, exact_emd };

struct DeletionEstimate {
  ItemId id = 0;
  double estimate = 0.0;
  double ci_halfwidth = 0.0;  // 1.96 * stderr of the per-deletion mean
};

struct SensitivityReport {
  std::vector<DeletionEstimate> per_deletion;
  double average = 0.0;          // mean of per-deletion estimates
  double average_stderr = 0.0;   // stderr of `average`
  double average_ci_halfwidth = 0.0;  // 1.96 * average_stderr
  std::size_t trials = 0;
  SensitivityMethod method = SensitivityMethod::exact;
};

// Exact average sensitivity of a deterministic algorithm: per deletion the
// Hamming distance between the outputs on V and V \ {i}. Empty instance ->
// domain_error.
SensitivityReport deterministic_sensitivity(
    const std::function<Solution(const Instance&)>& algorithm,
    const Instance& instance);

struct CoupledPair {
  Solution base;
  Solution deleted;
};

// One coupled draw of (output on V, output on V \ {deleted_id}) whose
// marginals each equal the family's independent-run law. Stage couplings
// mirror the analysis transport: the greedy weight draw is shared
// identically, the threshold (and the fpras rounding unit) are maximally
// coupled, and the exponential-mechanism index is maximally coupled
// conditioned on a shared threshold.
CoupledPair coupled_run(AlgorithmFamily family, const Instance& instance,
                        ItemId deleted_id, double eps,
                        std::uint64_t shared_seed,
                        const StableConfig& config = {});

struct McOptions {
  unsigned threads = 1;
  // modified_greedy runs through an O(log n) binary-search shortcut by
  // default; forcing the generic path materializes coupled solutions
  // (used to cross-check the shortcut).
  bool force_generic_coupling = false;
};

// Monte Carlo upper-bound estimator of average sensitivity: the expected
// Hamming distance under coupled_run's coupling, per deletion and averaged.
// Any coupling upper-bounds the earth mover's distance. Deterministic given
// the rng seed and independent of the thread count.
SensitivityReport mc_sensitivity_upper(AlgorithmFamily family,
                                       const Instance& instance, double eps,
                                       std::size_t trials, Rng& rng,
                                       const StableConfig& config = {},
                                       const McOptions& options = {});

// Exact earth mover's distance between two finite distributions with
// Hamming ground cost (transportation problem). Masses must be nonnegative
// and sum to 1 (domain_error otherwise).
double emd_exact(const EmpiricalDistribution& P,
                 const EmpiricalDistribution& Q);

// Per-deletion exact emd between empirical output distributions (trials
// independent runs per side). Converges to the true average sensitivity as
// trials grow; unlike the coupled estimator it is not a one-sided bound.
SensitivityReport emd_sensitivity(AlgorithmFamily family,
                                  const Instance& instance, double eps,
                                  std::size_t trials, Rng& rng,
                                  const StableConfig& config = {});

std::string report_to_json(const SensitivityReport& report);
std::string report_to_csv(const SensitivityReport& report);

}  // namespace knapsack
