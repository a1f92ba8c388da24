#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace knapsack {

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double gamma_q(double a, double x);

// Upper tail P[X >= stat] for X ~ chi-squared(df).
double chi_squared_pvalue(double stat, double df);

struct ChiSquareResult {
  double stat = 0.0;
  double df = 0.0;
  double pvalue = 1.0;
};

// Goodness of fit of observed counts against expected probabilities.
// Cells with expected count below min_expected are pooled into one.
ChiSquareResult chi_square_goodness(std::span<const std::uint64_t> counts,
                                    std::span<const double> probs,
                                    double min_expected = 5.0);

// Two-sample homogeneity test on parallel count vectors (same cells).
// Cells with combined count below min_combined are pooled.
ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> a,
                                      std::span<const std::uint64_t> b,
                                      double min_combined = 10.0);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;  // trailing underscore: stderr is a <cstdio> macro
  std::size_t count = 0;
};

MeanStderr mean_stderr(std::span<const double> samples);

}  // namespace knapsack
