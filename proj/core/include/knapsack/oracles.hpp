#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "knapsack/model.hpp"
#include "knapsack/order.hpp"

namespace knapsack {

// Optimal value of the fractional relaxation, by the greedy fill along the
// efficiency order. Uses the instance's weight limit unless an override is
// given (same scale as the weights). Negative override -> domain_error.
FractionalFill fractional_opt(const Instance& instance,
                              std::optional<double> weight_limit_override = {});
double fopt(const Instance& instance,
            std::optional<double> weight_limit_override = {});

struct BruteForceResult {
  double value = 0.0;
  Solution solution;
};

// Exhaustive integral optimum. Max value, ties broken by the
// lexicographically smallest id set. Item count above `cap` -> length_error.
BruteForceResult brute_force_opt(const Instance& instance, std::size_t cap = 24);

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Min-weight-per-value-sum table for instances with nonnegative integer
// values: min_weight(s) is the minimum total weight of a subset with value
// exactly s (kUnreachable if none), and reconstruct(s) is that subset with
// the lexicographically smallest id set among (tolerance-)minimal ones.
class ValueTable {
 public:
  ValueTable(const Instance& instance, std::int64_t value_cap);

  std::int64_t value_cap() const { return value_cap_; }
  double min_weight(std::int64_t value_sum) const;
  Solution reconstruct(std::int64_t value_sum) const;

 private:
  double cell(std::size_t row, std::int64_t s) const {
    return suffix_[row * static_cast<std::size_t>(value_cap_ + 1) +
                   static_cast<std::size_t>(s)];
  }

  std::int64_t value_cap_ = 0;
  std::vector<Item> items_;             // ascending id
  std::vector<std::int64_t> values_;    // integer values of items_
  std::vector<double> suffix_;          // (n+1) x (cap+1) min-weight DP
};

// Builds the DP table. Values must be nonnegative integers (domain_error
// otherwise). value_cap defaults to the total value of all items.
ValueTable integer_value_opt(const Instance& instance,
                             std::optional<std::int64_t> value_cap = {});

}  // namespace knapsack
