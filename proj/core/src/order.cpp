#include "knapsack/order.hpp"

#include <algorithm>
#include <cassert>

namespace knapsack {

namespace {

bool more_efficient(const Item& a, const Item& b) {
  // Cross-multiplied to avoid division; weights are positive.
  return a.value * b.weight > b.value * a.weight;
}

}  // namespace

GreedyOrder::GreedyOrder(const Instance& instance) : items_(instance.items()) {
  // Stable on the canonical (ascending id) order, so efficiency ties break
  // by ascending id.
  std::stable_sort(items_.begin(), items_.end(), more_efficient);
  build_sums();
}

GreedyOrder GreedyOrder::from_sorted(std::vector<Item> sorted) {
#ifndef NDEBUG
  for (std::size_t i = 1; i < sorted.size(); ++i)
    assert(!more_efficient(sorted[i], sorted[i - 1]));
#endif
  GreedyOrder order;
  order.items_ = std::move(sorted);
  order.build_sums();
  return order;
}

void GreedyOrder::build_sums() {
  cum_weight_.assign(items_.size() + 1, 0.0);
  cum_value_.assign(items_.size() + 1, 0.0);
  for (std::size_t i = 0; i < items_.size(); ++i) {
    cum_weight_[i + 1] = cum_weight_[i] + items_[i].weight;
    cum_value_[i + 1] = cum_value_[i] + items_[i].value;
  }
}

std::vector<ItemId> GreedyOrder::ids() const {
  std::vector<ItemId> out;
  out.reserve(items_.size());
  for (const Item& it : items_) out.push_back(it.id);
  return out;
}

std::size_t GreedyOrder::prefix_count(double weight_cap) const {
  // Weights are positive, so cum_weight_ is strictly increasing.
  double cap = weight_cap + tolerance();
  auto it = std::upper_bound(cum_weight_.begin(), cum_weight_.end(), cap);
  return static_cast<std::size_t>(it - cum_weight_.begin()) - 1;
}

Solution GreedyOrder::prefix_solution(double weight_cap) const {
  std::size_t t = prefix_count(weight_cap);
  std::vector<ItemId> ids;
  ids.reserve(t);
  for (std::size_t i = 0; i < t; ++i) ids.push_back(items_[i].id);
  return Solution(std::move(ids));
}

FractionalFill GreedyOrder::fractional_fill(double weight_cap) const {
  FractionalFill fill;
  if (weight_cap <= 0.0) {
    fill.break_index = items_.empty() ? 0 : 0;
    return fill;
  }
  std::size_t t = prefix_count(weight_cap);
  fill.value = cum_value_[t];
  fill.break_index = t;
  if (t < items_.size()) {
    double remaining = weight_cap - cum_weight_[t];
    if (remaining > 0.0) {
      double frac = remaining / items_[t].weight;
      if (frac > 1.0) frac = 1.0;  // only via tolerance slack
      fill.fraction = frac;
      fill.value += frac * items_[t].value;
    }
  }
  return fill;
}

}  // namespace knapsack
