#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "knapsack/instances.hpp"
#include "knapsack/oracles.hpp"
#include "test_helpers.hpp"

using namespace knapsack;
using test::dyadic_instance;
using test::ids;
using test::make_instance;

namespace {

// Independent LP oracle for dyadic instances (all values/weights multiples
// of 1/1024, limit 1): a basic optimum of the fractional relaxation has at
// most one fractional variable, so enumerate (subset, fractional item)
// pairs and compare the rational objectives exactly.
long double lp_oracle_dyadic(const Instance& inst) {
  const auto& items = inst.items();
  const std::size_t n = items.size();
  REQUIRE(n <= 12);
  std::vector<std::int64_t> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = static_cast<std::int64_t>(items[i].weight * 1024.0 + 0.5);
    b[i] = static_cast<std::int64_t>(items[i].value * 1024.0 + 0.5);
  }
  const std::int64_t W = 1024;
  __int128 best_num = 0, best_den = 1;
  auto offer = [&](__int128 num, __int128 den) {
    if (num * best_den > best_num * den) {
      best_num = num;
      best_den = den;
    }
  };
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::int64_t A = 0, B = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        A += a[i];
        B += b[i];
      }
    if (A > W) continue;
    offer(B, 1024);
    std::int64_t R = W - A;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (1u << j)) continue;
      std::int64_t take = std::min(a[j], R);
      offer(static_cast<__int128>(B) * a[j] + static_cast<__int128>(b[j]) * take,
            static_cast<__int128>(1024) * a[j]);
    }
  }
  return static_cast<long double>(best_num) / static_cast<long double>(best_den);
}

// Subset-enumeration oracle for the min-weight-per-value DP.
struct EnumEntry {
  double weight;
  std::vector<ItemId> ids;
};

std::map<std::int64_t, EnumEntry> enumerate_value_table(const Instance& inst) {
  const auto& items = inst.items();
  std::map<std::int64_t, EnumEntry> best;
  const std::size_t n = items.size();
  REQUIRE(n <= 16);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double w = 0.0;
    std::int64_t v = 0;
    std::vector<ItemId> set;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        w += items[i].weight;
        v += static_cast<std::int64_t>(items[i].value);
        set.push_back(items[i].id);
      }
    auto it = best.find(v);
    if (it == best.end() || w < it->second.weight ||
        (w == it->second.weight &&
         std::lexicographical_compare(set.begin(), set.end(),
                                      it->second.ids.begin(),
                                      it->second.ids.end())))
      best[v] = {w, set};
  }
  return best;
}

}  // namespace

TEST_CASE("fractional_opt greedy fill examples") {
  Instance inst = make_instance({{4.0, 0.4}, {3.0, 0.4}, {2.0, 0.4}});
  FractionalFill fill = fractional_opt(inst);
  CHECK(fill.value == doctest::Approx(8.0));
  CHECK(fill.break_index == 2);
  CHECK(fill.fraction == doctest::Approx(0.5));

  CHECK(fopt(inst, 0.0) == 0.0);
  CHECK(fopt(make_instance({{5.0, 1.0}})) == doctest::Approx(5.0));
  CHECK(fopt(Instance{}) == 0.0);
  CHECK_THROWS_AS(fractional_opt(inst, -0.25), std::domain_error);
}

TEST_CASE("fractional_opt matches the exact LP oracle on dyadic instances") {
  Rng rng(20240517);
  for (int round = 0; round < 120; ++round) {
    Rng sub = rng.substream(round);
    Instance inst = dyadic_instance(1 + sub.below(8), sub);
    long double expect = lp_oracle_dyadic(inst);
    CHECK(fopt(inst) ==
          doctest::Approx(static_cast<double>(expect)).epsilon(1e-9));
  }
}

TEST_CASE("fractional_opt scaling bound (W <= 1)") {
  Rng rng(7);
  for (int round = 0; round < 60; ++round) {
    Rng sub = rng.substream(round);
    Instance inst = dyadic_instance(1 + sub.below(12), sub);
    double W = sub.uniform(0.0, 1.0);
    CHECK(fopt(inst, W) >= W * fopt(inst) - 1e-9);
  }
}

TEST_CASE("fopt sandwich and deletion-sum bounds") {
  Rng rng(11);
  for (int round = 0; round < 60; ++round) {
    Rng sub = rng.substream(round);
    Instance inst = dyadic_instance(1 + sub.below(14), sub);
    double f = fopt(inst);
    double opt = brute_force_opt(inst).value;
    CHECK(opt <= f + 1e-9);
    CHECK(f <= 2.0 * opt + 1e-9);
    double drop_sum = 0.0;
    for (const Item& it : inst.items())
      drop_sum += f - fopt(inst.without(it.id));
    CHECK(drop_sum <= f + 1e-6);
  }
}

TEST_CASE("brute_force_opt examples") {
  Instance lb = gen_lowerbound_k(3);
  BruteForceResult best = brute_force_opt(lb);
  CHECK(best.value == doctest::Approx(3.0));
  CHECK(best.solution == ids({1, 2, 3}));

  BruteForceResult empty = brute_force_opt(Instance{});
  CHECK(empty.value == 0.0);
  CHECK(empty.solution.empty());

  Instance three = make_instance({{2.0, 0.6}, {2.0, 0.6}, {3.0, 1.0}});
  CHECK(brute_force_opt(three).value == doctest::Approx(3.0));
  CHECK(brute_force_opt(three).solution == ids({3}));

  Instance big = test::uniform_instance(25, 1);
  CHECK_THROWS_AS(brute_force_opt(big), std::length_error);
}

TEST_CASE("brute_force_opt breaks ties lexicographically") {
  Instance tie = make_instance({{1.0, 0.6}, {1.0, 0.6}});
  CHECK(brute_force_opt(tie).solution == ids({1}));
}

TEST_CASE("integer_value_opt examples") {
  Instance inst = make_instance({{2.0, 0.5}, {3.0, 0.7}}, 2.0);
  ValueTable table = integer_value_opt(inst);
  CHECK(table.value_cap() == 5);
  CHECK(table.min_weight(0) == 0.0);
  CHECK(table.min_weight(1) == kUnreachable);
  CHECK(table.min_weight(2) == doctest::Approx(0.5));
  CHECK(table.min_weight(3) == doctest::Approx(0.7));
  CHECK(table.min_weight(4) == kUnreachable);
  CHECK(table.min_weight(5) == doctest::Approx(1.2));
  CHECK(table.reconstruct(5) == ids({1, 2}));
  CHECK(table.reconstruct(0).empty());

  ValueTable nothing = integer_value_opt(Instance{});
  CHECK(nothing.min_weight(0) == 0.0);

  Instance dup = make_instance({{1.0, 0.2}, {1.0, 0.1}});
  ValueTable dup_table = integer_value_opt(dup);
  CHECK(dup_table.min_weight(1) == doctest::Approx(0.1));
  CHECK(dup_table.reconstruct(1) == ids({2}));

  CHECK_THROWS_AS(integer_value_opt(make_instance({{1.5, 0.2}})),
                  std::domain_error);
}

TEST_CASE("integer_value_opt agrees with subset enumeration") {
  Rng rng(99);
  for (int round = 0; round < 40; ++round) {
    Rng sub = rng.substream(round);
    std::size_t n = 1 + sub.below(10);
    std::vector<Item> items;
    for (std::size_t i = 0; i < n; ++i)
      items.push_back({static_cast<ItemId>(i + 1),
                       static_cast<double>(sub.below(9)),
                       static_cast<double>(1 + sub.below(1024)) / 1024.0});
    Instance inst(std::move(items), 1.0);
    ValueTable table = integer_value_opt(inst);
    auto oracle = enumerate_value_table(inst);
    for (std::int64_t s = 0; s <= table.value_cap(); ++s) {
      auto it = oracle.find(s);
      if (it == oracle.end()) {
        CHECK(table.min_weight(s) == kUnreachable);
        continue;
      }
      CHECK(table.min_weight(s) == doctest::Approx(it->second.weight));
      CHECK(table.reconstruct(s).ids() == it->second.ids);
    }
  }
}
