#pragma once

#include "knapsack/model.hpp"

namespace knapsack {

// Deterministic stable algorithm for the simple knapsack (v(i) = w(i),
// tolerance-checked; violation -> domain_error). Large items (weight >= eps
// after normalization) are solved by brute force over subsets of size at
// most floor(1/eps); the rest are filled in ascending weight order into the
// leftover capacity. |L| above 30 -> length_error.
Solution simple_stable(const Instance& instance, double eps);

}  // namespace knapsack
