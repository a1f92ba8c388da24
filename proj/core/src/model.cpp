#include "knapsack/model.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace knapsack {

namespace {

double initial_tolerance() {
  if (const char* env = std::getenv("STABLE_KNAPSACK_TOLERANCE")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
  }
  return 1e-9;
}

std::atomic<double>& tolerance_slot() {
  static std::atomic<double> slot{initial_tolerance()};
  return slot;
}

}  // namespace

double tolerance() { return tolerance_slot().load(std::memory_order_relaxed); }

void set_tolerance(double tol) {
  if (!(tol > 0.0)) throw std::domain_error("tolerance must be positive");
  tolerance_slot().store(tol, std::memory_order_relaxed);
}

Instance::Instance(std::vector<Item> items, double weight_limit)
    : items_(std::move(items)), weight_limit_(weight_limit) {
  if (!(weight_limit_ > 0.0))
    throw std::domain_error("weight limit must be positive");
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const Item& it = items_[i];
    if (!(it.weight > 0.0))
      throw std::domain_error("item " + std::to_string(it.id) +
                              ": weight must be positive");
    if (it.value < 0.0)
      throw std::domain_error("item " + std::to_string(it.id) +
                              ": value must be nonnegative");
    if (!approx_le(it.weight, weight_limit_))
      throw std::domain_error("item " + std::to_string(it.id) +
                              ": weight exceeds the weight limit");
    if (i > 0 && items_[i - 1].id >= it.id)
      throw std::domain_error("item ids must be strictly increasing");
  }
}

const Item* Instance::find(ItemId id) const {
  auto it = std::lower_bound(
      items_.begin(), items_.end(), id,
      [](const Item& a, ItemId b) { return a.id < b; });
  if (it == items_.end() || it->id != id) return nullptr;
  return &*it;
}

const Item& Instance::item(ItemId id) const {
  const Item* it = find(id);
  if (it == nullptr)
    throw std::domain_error("unknown item id " + std::to_string(id));
  return *it;
}

Instance Instance::without(ItemId id) const {
  if (!contains(id))
    throw std::domain_error("unknown item id " + std::to_string(id));
  std::vector<Item> rest;
  rest.reserve(items_.size() - 1);
  for (const Item& it : items_)
    if (it.id != id) rest.push_back(it);
  return Instance(std::move(rest), weight_limit_);
}

Instance Instance::normalized() const {
  std::vector<Item> scaled = items_;
  // Clamp: a weight at the tolerance edge of the limit may divide to just
  // above 1, which would fail the constructor's invariant check.
  for (Item& it : scaled) it.weight = std::min(it.weight / weight_limit_, 1.0);
  return Instance(std::move(scaled), 1.0);
}

double Instance::total_weight() const {
  double w = 0.0;
  for (const Item& it : items_) w += it.weight;
  return w;
}

double Instance::total_value() const {
  double v = 0.0;
  for (const Item& it : items_) v += it.value;
  return v;
}

Solution::Solution(std::vector<ItemId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
    throw std::domain_error("solution contains a duplicate id");
}

bool Solution::contains(ItemId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::size_t hamming_distance(const Solution& a, const Solution& b) {
  const auto& x = a.ids();
  const auto& y = b.ids();
  std::size_t i = 0, j = 0, diff = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) {
      ++i;
      ++j;
    } else if (x[i] < y[j]) {
      ++i;
      ++diff;
    } else {
      ++j;
      ++diff;
    }
  }
  return diff + (x.size() - i) + (y.size() - j);
}

Solution solution_union(const Solution& a, const Solution& b) {
  std::vector<ItemId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.ids().begin(), a.ids().end(), b.ids().begin(),
                 b.ids().end(), std::back_inserter(out));
  return Solution(std::move(out));
}

std::size_t SolutionHash::operator()(const Solution& s) const {
  // FNV-1a over the id bytes.
  std::uint64_t h = 1469598103934665603ull;
  for (ItemId id : s.ids()) {
    auto u = static_cast<std::uint64_t>(id);
    for (int k = 0; k < 8; ++k) {
      h ^= (u >> (8 * k)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h);
}

namespace {

double accumulate_over(const Instance& instance, const Solution& solution,
                       double Item::* field) {
  double total = 0.0;
  for (ItemId id : solution.ids()) total += instance.item(id).*field;
  return total;
}

}  // namespace

double value_of(const Instance& instance, const Solution& solution) {
  return accumulate_over(instance, solution, &Item::value);
}

double weight_of(const Instance& instance, const Solution& solution) {
  return accumulate_over(instance, solution, &Item::weight);
}

bool is_feasible(const Instance& instance, const Solution& solution) {
  return approx_le(weight_of(instance, solution), instance.weight_limit());
}

}  // namespace knapsack
