#include "knapsack/simple.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace knapsack {

namespace {

constexpr std::size_t kLargeSetCap = 30;

// Max-weight subset of the large items with total weight <= 1 and
// cardinality <= max_size; ties by lexicographically smallest id set.
struct LargeSearch {
  const std::vector<Item>& items;
  std::size_t max_size;
  std::vector<ItemId> current;
  double best_weight = 0.0;
  std::vector<ItemId> best_ids;

  void visit(double weight) {
    if (weight > best_weight + tolerance()) {
      best_weight = weight;
      best_ids = current;
    } else if (weight >= best_weight - tolerance() &&
               std::lexicographical_compare(current.begin(), current.end(),
                                            best_ids.begin(),
                                            best_ids.end())) {
      best_ids = current;
    }
  }

  void descend(std::size_t index, double weight) {
    visit(weight);
    if (index == items.size() || current.size() == max_size) return;
    for (std::size_t i = index; i < items.size(); ++i) {
      if (!approx_le(weight + items[i].weight, 1.0)) continue;
      current.push_back(items[i].id);
      descend(i + 1, weight + items[i].weight);
      current.pop_back();
    }
  }
};

}  // namespace

Solution simple_stable(const Instance& instance, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("simple_stable: eps must lie in (0, 1)");
  for (const Item& it : instance.items())
    if (!approx_eq(it.value, it.weight))
      throw std::domain_error("simple_stable: item " + std::to_string(it.id) +
                              " has value != weight");

  Instance norm = instance.normalized();
  std::vector<Item> large, small;
  for (const Item& it : norm.items())
    (approx_ge(it.weight, eps) ? large : small).push_back(it);
  if (large.size() > kLargeSetCap)
    throw std::length_error("simple_stable: " + std::to_string(large.size()) +
                            " large items exceed the cap " +
                            std::to_string(kLargeSetCap));

  auto max_size = static_cast<std::size_t>(std::floor(1.0 / eps + tolerance()));
  LargeSearch search{large, max_size, {}, 0.0, {}};
  search.current.reserve(std::min(large.size(), max_size));
  search.descend(0, 0.0);

  // Reuse the searched weight for the leftover capacity; recompute
  // canonically so the residual matches weight_of exactly.
  Solution big(std::move(search.best_ids));
  double used = weight_of(norm, big);

  // Small items in ascending weight order (ties by id): maximal prefix that
  // fits the leftover capacity. This ordering is what keeps per-deletion
  // churn at |A \triangle A^i| <= 2.
  std::stable_sort(small.begin(), small.end(),
                   [](const Item& a, const Item& b) { return a.weight < b.weight; });
  std::vector<ItemId> prefix;
  double cap = 1.0 - used;
  double cum = 0.0;
  for (const Item& it : small) {
    if (!approx_le(cum + it.weight, cap)) break;
    cum += it.weight;
    prefix.push_back(it.id);
  }
  return solution_union(big, Solution(std::move(prefix)));
}

}  // namespace knapsack
