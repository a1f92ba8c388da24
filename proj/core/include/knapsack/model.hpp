#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace knapsack {

using ItemId = std::int64_t;

// Shared absolute tolerance for comparisons of weights/values against limits.
// Default 1e-9; the environment variable STABLE_KNAPSACK_TOLERANCE overrides it
// at process start, and set_tolerance() overrides it at runtime (testing hook).
double tolerance();
void set_tolerance(double tol);

inline bool approx_le(double a, double b) { return a <= b + tolerance(); }
inline bool approx_ge(double a, double b) { return a >= b - tolerance(); }
// Strict half-open companions: approx_lt(a, b) == !approx_ge(a, b).
inline bool approx_lt(double a, double b) { return a < b - tolerance(); }
inline bool approx_eq(double a, double b) {
  double d = a - b;
  return d <= tolerance() && d >= -tolerance();
}

struct Item {
  ItemId id = 0;
  double value = 0.0;   // >= 0
  double weight = 0.0;  // > 0, <= owning instance's weight limit
};

// An item set with a weight limit. Items are stored with strictly increasing
// ids (the canonical order); construction validates all invariants.
// Immutable after construction.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<Item> items, double weight_limit);

  const std::vector<Item>& items() const { return items_; }
  double weight_limit() const { return weight_limit_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  bool contains(ItemId id) const { return find(id) != nullptr; }
  const Item* find(ItemId id) const;
  // Throws std::domain_error if the id is unknown.
  const Item& item(ItemId id) const;

  // The instance with one item deleted; all other items unchanged.
  Instance without(ItemId id) const;

  // Weights and limit rescaled so the weight limit is 1. Values untouched.
  Instance normalized() const;

  double total_weight() const;
  double total_value() const;

 private:
  std::vector<Item> items_;
  double weight_limit_ = 1.0;
};

inline Instance delete_item(const Instance& instance, ItemId id) {
  return instance.without(id);
}

// A subset of item ids, kept sorted ascending. Which instance the ids refer
// to is contextual; value_of/weight_of validate membership.
class Solution {
 public:
  Solution() = default;
  explicit Solution(std::vector<ItemId> ids);

  const std::vector<ItemId>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(ItemId id) const;

  friend bool operator==(const Solution&, const Solution&) = default;
  // Lexicographic on the sorted id sequence; the tie-break order used
  // throughout ("smallest" solution = lexicographically smallest ids).
  friend auto operator<=>(const Solution& a, const Solution& b) {
    return a.ids_ <=> b.ids_;
  }

 private:
  std::vector<ItemId> ids_;
};

// |A symmetric-difference B| (Hamming distance between indicator vectors).
std::size_t hamming_distance(const Solution& a, const Solution& b);
Solution solution_union(const Solution& a, const Solution& b);

struct SolutionHash {
  std::size_t operator()(const Solution& s) const;
};

// Sum of values / weights of the solution's items. Unknown id -> domain_error.
double value_of(const Instance& instance, const Solution& solution);
double weight_of(const Instance& instance, const Solution& solution);

// Total weight within the weight limit (shared tolerance).
bool is_feasible(const Instance& instance, const Solution& solution);

}  // namespace knapsack
