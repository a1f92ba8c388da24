#include "knapsack/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace knapsack {

FractionalFill fractional_opt(const Instance& instance,
                              std::optional<double> weight_limit_override) {
  double cap = instance.weight_limit();
  if (weight_limit_override) {
    if (*weight_limit_override < 0.0)
      throw std::domain_error("fractional_opt: negative weight limit");
    cap = *weight_limit_override;
  }
  return GreedyOrder(instance).fractional_fill(cap);
}

double fopt(const Instance& instance,
            std::optional<double> weight_limit_override) {
  return fractional_opt(instance, weight_limit_override).value;
}

namespace {

struct BruteForceSearch {
  const std::vector<Item>& items;
  double limit;
  std::vector<ItemId> current;
  double best_value = 0.0;
  std::vector<ItemId> best_ids;  // empty set is feasible with value 0

  void visit(double value) {
    if (value > best_value + tolerance()) {
      best_value = value;
      best_ids = current;
    } else if (value >= best_value - tolerance() &&
               std::lexicographical_compare(current.begin(), current.end(),
                                            best_ids.begin(), best_ids.end())) {
      best_ids = current;
    }
  }

  void descend(std::size_t index, double value, double weight) {
    if (index == items.size()) {
      visit(value);
      return;
    }
    const Item& it = items[index];
    if (approx_le(weight + it.weight, limit)) {
      current.push_back(it.id);
      descend(index + 1, value + it.value, weight + it.weight);
      current.pop_back();
    }
    descend(index + 1, value, weight);
  }
};

}  // namespace

BruteForceResult brute_force_opt(const Instance& instance, std::size_t cap) {
  if (instance.size() > cap)
    throw std::length_error("brute_force_opt: instance has " +
                            std::to_string(instance.size()) +
                            " items, cap is " + std::to_string(cap));
  BruteForceSearch search{instance.items(), instance.weight_limit(), {}, 0.0, {}};
  search.current.reserve(instance.size());
  search.descend(0, 0.0, 0.0);
  return {search.best_value, Solution(std::move(search.best_ids))};
}

ValueTable::ValueTable(const Instance& instance, std::int64_t value_cap)
    : value_cap_(value_cap), items_(instance.items()) {
  if (value_cap_ < 0) throw std::domain_error("value cap must be nonnegative");
  values_.reserve(items_.size());
  for (const Item& it : items_) {
    double rounded = std::floor(it.value);
    if (rounded != it.value || it.value < 0.0)
      throw std::domain_error("item " + std::to_string(it.id) +
                              ": value is not a nonnegative integer");
    values_.push_back(static_cast<std::int64_t>(rounded));
  }
  const std::size_t n = items_.size();
  const std::size_t width = static_cast<std::size_t>(value_cap_ + 1);
  if (width > (std::size_t{1} << 25) / (n + 1))
    throw std::length_error("value table too large: " + std::to_string(n) +
                            " items x cap " + std::to_string(value_cap_));
  suffix_.assign((n + 1) * width, kUnreachable);
  suffix_[n * width] = 0.0;  // no items, value 0, weight 0
  for (std::size_t row = n; row-- > 0;) {
    const double w = items_[row].weight;
    const std::int64_t v = values_[row];
    for (std::int64_t s = 0; s <= value_cap_; ++s) {
      double skip = cell(row + 1, s);
      double take = kUnreachable;
      if (v <= s) {
        double rest = cell(row + 1, s - v);
        if (rest != kUnreachable) take = w + rest;
      }
      suffix_[row * width + static_cast<std::size_t>(s)] = std::min(skip, take);
    }
  }
}

double ValueTable::min_weight(std::int64_t value_sum) const {
  if (value_sum < 0 || value_sum > value_cap_)
    throw std::domain_error("value sum out of table range");
  return cell(0, value_sum);
}

Solution ValueTable::reconstruct(std::int64_t value_sum) const {
  if (min_weight(value_sum) == kUnreachable)
    throw std::domain_error("value sum " + std::to_string(value_sum) +
                            " is unreachable");
  // Include-first walk in ascending id order: taking the earliest item
  // whenever doing so stays (tolerance-)minimal yields the lexicographically
  // smallest minimal set.
  std::vector<ItemId> ids;
  std::int64_t s = value_sum;
  for (std::size_t row = 0; row < items_.size(); ++row) {
    if (values_[row] > s) continue;
    double rest = cell(row + 1, s - values_[row]);
    if (rest == kUnreachable) continue;
    double take = items_[row].weight + rest;
    double skip = cell(row + 1, s);
    if (take <= skip + tolerance()) {
      ids.push_back(items_[row].id);
      s -= values_[row];
    }
  }
  return Solution(std::move(ids));
}

ValueTable integer_value_opt(const Instance& instance,
                             std::optional<std::int64_t> value_cap) {
  std::int64_t cap;
  if (value_cap) {
    cap = *value_cap;
  } else {
    long double total = 0.0;
    for (const Item& it : instance.items()) total += it.value;
    if (total > 1e15)
      throw std::length_error("total item value too large for the DP table");
    cap = static_cast<std::int64_t>(total);
  }
  return ValueTable(instance, cap);
}

}  // namespace knapsack
