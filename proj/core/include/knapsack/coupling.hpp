#pragma once

#include <cstddef>
#include <span>

#include "knapsack/rng.hpp"

namespace knapsack {

struct UniformInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct CoupledReals {
  double x1 = 0.0;
  double x2 = 0.0;
  bool shared = false;
};

struct CoupledIndices {
  std::size_t i = 0;
  std::size_t j = 0;
  bool shared = false;
};

// Mass of the pointwise minimum of the two uniform densities; equals the
// probability of coalescence under the maximal coupling.
double uniform_overlap_mass(UniformInterval a, UniformInterval b);
// Sum of min(p_k, q_k).
double categorical_overlap_mass(std::span<const double> p,
                                std::span<const double> q);

// Maximal coupling of Uniform[a] and Uniform[b]: marginals exact, P(x1 = x2)
// equal to the overlap mass. Degenerate intervals -> domain_error.
CoupledReals maximal_coupling_uniform(UniformInterval a, UniformInterval b,
                                      Rng& rng);

// Conditional (one-way) form: given x2 distributed Uniform[given], returns
// x1 such that (x1, x2) is the maximal coupling and x1 is exactly
// Uniform[target]. This is the transport an incremental simulator can apply
// to last step's draw without knowing this step's in advance.
double conditional_maximal_uniform(UniformInterval target,
                                   UniformInterval given, double given_draw,
                                   Rng& rng);

// Maximal coupling of two categorical distributions (vectors of nonnegative
// mass summing to 1 within 1e-6; negative mass -> domain_error). Shorter
// vectors are treated as zero-padded.
CoupledIndices maximal_coupling_categorical(std::span<const double> p,
                                            std::span<const double> q,
                                            Rng& rng);

std::size_t conditional_maximal_categorical(std::span<const double> p,
                                            std::span<const double> q,
                                            std::size_t given_draw, Rng& rng);

}  // namespace knapsack
