#include "knapsack/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace knapsack {

namespace {

void check_interval(UniformInterval iv, const char* who) {
  if (!(iv.hi > iv.lo))
    throw std::domain_error(std::string(who) + ": degenerate interval");
}

double density(UniformInterval iv, double x) {
  if (x < iv.lo || x >= iv.hi) return 0.0;
  return 1.0 / (iv.hi - iv.lo);
}

struct Segment {
  double lo, hi, height;
  double mass() const { return (hi - lo) * height; }
};

// Piecewise-constant residual density (f_target - f_other)_+ over the
// target interval; at most three segments.
std::vector<Segment> positive_part(UniformInterval target,
                                   UniformInterval other) {
  double ht = 1.0 / (target.hi - target.lo);
  double ho = 1.0 / (other.hi - other.lo);
  double ilo = std::max(target.lo, other.lo);
  double ihi = std::min(target.hi, other.hi);
  std::vector<Segment> segments;
  auto add = [&](double lo, double hi, double height) {
    if (hi > lo && height > 0.0) segments.push_back({lo, hi, height});
  };
  if (ilo >= ihi) {
    add(target.lo, target.hi, ht);
    return segments;
  }
  add(target.lo, ilo, ht);
  add(ilo, ihi, ht - ho);
  add(ihi, target.hi, ht);
  return segments;
}

double sample_segments(const std::vector<Segment>& segments, Rng& rng) {
  double total = 0.0;
  for (const Segment& s : segments) total += s.mass();
  double u = rng.uniform01() * total;
  for (const Segment& s : segments) {
    if (u < s.mass()) return s.lo + (u / s.height);
    u -= s.mass();
  }
  return segments.back().hi;  // rounding spill
}

void check_masses(std::span<const double> p, const char* who) {
  double total = 0.0;
  for (double v : p) {
    if (v < 0.0) throw std::domain_error(std::string(who) + ": negative mass");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw std::domain_error(std::string(who) + ": masses do not sum to 1");
}

double mass_at(std::span<const double> p, std::size_t i) {
  return i < p.size() ? p[i] : 0.0;
}

std::size_t sample_masses(std::span<const double> weights, double total,
                          Rng& rng) {
  double u = rng.uniform01() * total;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last = i;
    u -= weights[i];
    if (u < 0.0) return i;
  }
  return last;
}

}  // namespace

double uniform_overlap_mass(UniformInterval a, UniformInterval b) {
  check_interval(a, "uniform_overlap_mass");
  check_interval(b, "uniform_overlap_mass");
  double len = std::min(a.hi, b.hi) - std::max(a.lo, b.lo);
  if (len <= 0.0) return 0.0;
  return len * std::min(1.0 / (a.hi - a.lo), 1.0 / (b.hi - b.lo));
}

double categorical_overlap_mass(std::span<const double> p,
                                std::span<const double> q) {
  check_masses(p, "categorical_overlap_mass");
  check_masses(q, "categorical_overlap_mass");
  double total = 0.0;
  for (std::size_t i = 0; i < std::max(p.size(), q.size()); ++i)
    total += std::min(mass_at(p, i), mass_at(q, i));
  return total;
}

CoupledReals maximal_coupling_uniform(UniformInterval a, UniformInterval b,
                                      Rng& rng) {
  check_interval(a, "maximal_coupling_uniform");
  check_interval(b, "maximal_coupling_uniform");
  double omega = uniform_overlap_mass(a, b);
  if (rng.uniform01() < omega) {
    // Draw from the overlap (the min density is constant there).
    double x = rng.uniform(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
    return {x, x, true};
  }
  auto ra = positive_part(a, b);
  auto rb = positive_part(b, a);
  if (ra.empty() || rb.empty()) {
    // Identical intervals and a rounding-edge miss: coalesce anyway.
    double x = rng.uniform(a.lo, a.hi);
    return {x, x, true};
  }
  return {sample_segments(ra, rng), sample_segments(rb, rng), false};
}

double conditional_maximal_uniform(UniformInterval target,
                                   UniformInterval given, double given_draw,
                                   Rng& rng) {
  check_interval(target, "conditional_maximal_uniform");
  check_interval(given, "conditional_maximal_uniform");
  double ft = density(target, given_draw);
  double fg = density(given, given_draw);
  if (fg > 0.0 && ft > 0.0 && rng.uniform01() < std::min(ft / fg, 1.0))
    return given_draw;
  auto residual = positive_part(target, given);
  if (residual.empty()) return given_draw;  // identical intervals
  return sample_segments(residual, rng);
}

CoupledIndices maximal_coupling_categorical(std::span<const double> p,
                                            std::span<const double> q,
                                            Rng& rng) {
  check_masses(p, "maximal_coupling_categorical");
  check_masses(q, "maximal_coupling_categorical");
  std::size_t n = std::max(p.size(), q.size());
  std::vector<double> shared(n), rp(n), rq(n);
  double omega = 0.0, gp = 0.0, gq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double pi = mass_at(p, i), qi = mass_at(q, i);
    shared[i] = std::min(pi, qi);
    rp[i] = pi - shared[i];
    rq[i] = qi - shared[i];
    omega += shared[i];
    gp += rp[i];
    gq += rq[i];
  }
  if (rng.uniform01() < omega || gp <= 0.0 || gq <= 0.0) {
    std::size_t i = sample_masses(shared, omega, rng);
    return {i, i, true};
  }
  return {sample_masses(rp, gp, rng), sample_masses(rq, gq, rng), false};
}

std::size_t conditional_maximal_categorical(std::span<const double> p,
                                            std::span<const double> q,
                                            std::size_t given_draw, Rng& rng) {
  check_masses(p, "conditional_maximal_categorical");
  check_masses(q, "conditional_maximal_categorical");
  double pj = mass_at(p, given_draw);
  double qj = mass_at(q, given_draw);
  if (qj <= 0.0)
    throw std::domain_error(
        "conditional_maximal_categorical: conditioning draw has zero mass");
  if (rng.uniform01() < std::min(pj / qj, 1.0)) return given_draw;
  std::size_t n = std::max(p.size(), q.size());
  std::vector<double> rp(n);
  double gp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rp[i] = std::max(0.0, mass_at(p, i) - mass_at(q, i));
    gp += rp[i];
  }
  if (gp <= 0.0) return given_draw;  // p == q
  return sample_masses(rp, gp, rng);
}

}  // namespace knapsack
