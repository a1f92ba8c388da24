#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "knapsack/model.hpp"

namespace knapsack {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// k items of (weight 1/k, value 1/k) followed by k items of
// (weight 1/k^2, value 1/k^3), limit 1, ids 1..2k. The plain greedy's
// average sensitivity on it is exactly (k+1)/2. k < 2 -> domain_error.
Instance gen_prop2(std::int64_t k);

// k items of (weight 1/k, value 1) and k-1 items of
// (weight 1/(k-1), value (2k-1)/(2k-2)), limit 1. The unique optimum is the
// first block; one deletion flips it to the second.
Instance gen_lowerbound_k(std::int64_t k);
// Same with k = floor(eps^-1 / 8).
Instance gen_lowerbound(double eps);

struct DistSpec {
  enum class Kind { uniform, pareto } kind = Kind::uniform;
  double lo = 0.0;  // uniform bounds
  double hi = 1.0;
  double alpha = 1.0;  // pareto shape

  static DistSpec Uniform(double lo, double hi) {
    return {Kind::uniform, lo, hi, 1.0};
  }
  static DistSpec Pareto(double alpha) { return {Kind::pareto, 0.0, 1.0, alpha}; }
};

// Reproducible random instance with limit 1 and ids 1..n. Weights are
// clamped into (0, 1]; `simple` forces v(i) = w(i). Invalid distribution
// parameters -> domain_error.
Instance gen_random(std::size_t n, DistSpec value_dist, DistSpec weight_dist,
                    std::uint64_t seed, bool simple = false);

// On-disk format: {"weight_limit": number,
//                  "items": [{"id": int, "value": num, "weight": num}...]},
// ids strictly increasing, doubles at round-trip precision.
Instance parse_instance(const std::string& json_text);
std::string instance_to_json(const Instance& instance);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance,
                    const std::filesystem::path& path);

}  // namespace knapsack
