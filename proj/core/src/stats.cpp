#include "knapsack/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace knapsack {

namespace {

// Lower regularized incomplete gamma by series expansion; converges fast
// for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by Lentz's continued fraction;
// converges fast for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_squared_pvalue(double stat, double df) {
  if (stat <= 0.0) return 1.0;
  return gamma_q(df / 2.0, stat / 2.0);
}

namespace {

struct Cell {
  double observed_a = 0.0;
  double observed_b = 0.0;  // unused in goodness-of-fit
  double expected_a = 0.0;
  double expected_b = 0.0;
};

ChiSquareResult finish(const std::vector<Cell>& cells, bool two_sample,
                       double extra_df_loss) {
  ChiSquareResult r;
  for (const Cell& c : cells) {
    if (c.expected_a > 0.0) {
      double d = c.observed_a - c.expected_a;
      r.stat += d * d / c.expected_a;
    }
    if (two_sample && c.expected_b > 0.0) {
      double d = c.observed_b - c.expected_b;
      r.stat += d * d / c.expected_b;
    }
  }
  r.df = static_cast<double>(cells.size()) - 1.0 - extra_df_loss;
  if (r.df < 1.0) r.df = 1.0;
  r.pvalue = chi_squared_pvalue(r.stat, r.df);
  return r;
}

}  // namespace

ChiSquareResult chi_square_goodness(std::span<const std::uint64_t> counts,
                                    std::span<const double> probs,
                                    double min_expected) {
  if (counts.size() != probs.size())
    throw std::domain_error("chi_square_goodness: size mismatch");
  double n = 0.0;
  for (auto c : counts) n += static_cast<double>(c);
  std::vector<Cell> cells;
  Cell pooled;
  bool has_pooled = false;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    double expected = probs[i] * n;
    if (expected < min_expected) {
      pooled.observed_a += static_cast<double>(counts[i]);
      pooled.expected_a += expected;
      has_pooled = true;
    } else {
      cells.push_back({static_cast<double>(counts[i]), 0.0, expected, 0.0});
    }
  }
  if (has_pooled && pooled.expected_a > 0.0) cells.push_back(pooled);
  if (cells.size() < 2) {
    // Everything in one cell: no evidence against the null.
    return {0.0, 1.0, 1.0};
  }
  return finish(cells, false, 0.0);
}

ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> a,
                                      std::span<const std::uint64_t> b,
                                      double min_combined) {
  if (a.size() != b.size())
    throw std::domain_error("chi_square_two_sample: size mismatch");
  double na = 0.0, nb = 0.0;
  for (auto c : a) na += static_cast<double>(c);
  for (auto c : b) nb += static_cast<double>(c);
  double n = na + nb;
  if (!(na > 0.0) || !(nb > 0.0))
    throw std::domain_error("chi_square_two_sample: empty sample");
  std::vector<Cell> cells;
  Cell pooled;
  bool has_pooled = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double combined = static_cast<double>(a[i]) + static_cast<double>(b[i]);
    Cell cell{static_cast<double>(a[i]), static_cast<double>(b[i]),
              combined * na / n, combined * nb / n};
    if (combined < min_combined) {
      pooled.observed_a += cell.observed_a;
      pooled.observed_b += cell.observed_b;
      pooled.expected_a += cell.expected_a;
      pooled.expected_b += cell.expected_b;
      has_pooled = true;
    } else {
      cells.push_back(cell);
    }
  }
  if (has_pooled && pooled.expected_a + pooled.expected_b > 0.0)
    cells.push_back(pooled);
  if (cells.size() < 2) return {0.0, 1.0, 1.0};
  return finish(cells, true, 0.0);
}

MeanStderr mean_stderr(std::span<const double> samples) {
  MeanStderr out;
  out.count = samples.size();
  if (samples.empty()) return out;
  double sum = 0.0;
  for (double v : samples) sum += v;
  out.mean = sum / static_cast<double>(samples.size());
  if (samples.size() < 2) return out;
  double ss = 0.0;
  for (double v : samples) {
    double d = v - out.mean;
    ss += d * d;
  }
  double var = ss / static_cast<double>(samples.size() - 1);
  out.stderr_ = std::sqrt(var / static_cast<double>(samples.size()));
  return out;
}

}  // namespace knapsack
