#pragma once

#include <cstddef>
#include <vector>

#include "knapsack/model.hpp"

namespace knapsack {

// Greedy fill of a weight cap along the efficiency order: full items up to
// break_index, plus `fraction` of the item at break_index. break_index ==
// item count when everything fits (fraction 0).
struct FractionalFill {
  double value = 0.0;
  std::size_t break_index = 0;
  double fraction = 0.0;
};

// Items arranged in non-increasing order of efficiency v(i)/w(i), ties by
// ascending id, with cumulative weight/value sums. This ordering is the
// backbone of the fractional oracle and every greedy variant.
class GreedyOrder {
 public:
  GreedyOrder() = default;
  explicit GreedyOrder(const Instance& instance);
  // Items must already be in efficiency order (used by the incremental
  // stream maintenance); validated in debug builds only.
  static GreedyOrder from_sorted(std::vector<Item> sorted);

  const std::vector<Item>& items() const { return items_; }
  std::vector<ItemId> ids() const;
  std::size_t size() const { return items_.size(); }

  // Largest t with w(1)+...+w(t) <= cap (shared tolerance).
  std::size_t prefix_count(double weight_cap) const;
  Solution prefix_solution(double weight_cap) const;
  double prefix_value(std::size_t count) const { return cum_value_[count]; }
  double prefix_weight(std::size_t count) const { return cum_weight_[count]; }

  FractionalFill fractional_fill(double weight_cap) const;
  double fractional_value(double weight_cap) const {
    return fractional_fill(weight_cap).value;
  }

 private:
  void build_sums();

  std::vector<Item> items_;
  std::vector<double> cum_weight_;  // size n+1, cum_weight_[t] = first t items
  std::vector<double> cum_value_;
};

}  // namespace knapsack
