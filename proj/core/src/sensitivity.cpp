#include "knapsack/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "knapsack/coupling.hpp"
#include "knapsack/fpras.hpp"
#include "knapsack/greedy.hpp"
#include "knapsack/oracles.hpp"
#include "knapsack/simple.hpp"
#include "knapsack/stats.hpp"

namespace knapsack {

bool family_is_deterministic(AlgorithmFamily family) {
  switch (family) {
    case AlgorithmFamily::plain_greedy:
    case AlgorithmFamily::simple_stable:
    case AlgorithmFamily::brute_force_opt:
      return true;
    default:
      return false;
  }
}

const char* family_name(AlgorithmFamily family) {
  switch (family) {
    case AlgorithmFamily::plain_greedy: return "greedy";
    case AlgorithmFamily::modified_greedy: return "modified-greedy";
    case AlgorithmFamily::stable_knapsack: return "stable";
    case AlgorithmFamily::fpras: return "fpras";
    case AlgorithmFamily::simple_stable: return "simple";
    case AlgorithmFamily::brute_force_opt: return "brute-force";
  }
  return "?";
}

Solution run_family(AlgorithmFamily family, const Instance& instance,
                    double eps, Rng& rng, const StableConfig& config) {
  switch (family) {
    case AlgorithmFamily::plain_greedy:
      return plain_greedy(instance);
    case AlgorithmFamily::modified_greedy:
      return modified_greedy(instance, eps, rng).solution;
    case AlgorithmFamily::stable_knapsack:
      return stable_knapsack(instance, eps, rng, config).solution;
    case AlgorithmFamily::fpras:
      return fpras(instance, eps, rng).solution;
    case AlgorithmFamily::simple_stable:
      return simple_stable(instance, eps);
    case AlgorithmFamily::brute_force_opt:
      return brute_force_opt(instance).solution;
  }
  throw std::domain_error("unknown algorithm family");
}

EmpiricalDistribution empirical_distribution(
    const std::function<Solution(Rng&)>& algorithm, std::size_t trials,
    Rng& rng) {
  if (trials == 0) throw std::domain_error("empirical_distribution: no trials");
  std::map<Solution, std::uint64_t> counts;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng sub = rng.substream(trial);
    ++counts[algorithm(sub)];
  }
  EmpiricalDistribution dist;
  dist.support.reserve(counts.size());
  for (auto& [solution, count] : counts)
    dist.support.emplace_back(solution, static_cast<double>(count) /
                                            static_cast<double>(trials));
  return dist;
}

EmpiricalDistribution empirical_distribution(AlgorithmFamily family,
                                             const Instance& instance,
                                             double eps, std::size_t trials,
                                             Rng& rng,
                                             const StableConfig& config) {
  return empirical_distribution(
      [&](Rng& sub) { return run_family(family, instance, eps, sub, config); },
      trials, rng);
}

SensitivityReport deterministic_sensitivity(
    const std::function<Solution(const Instance&)>& algorithm,
    const Instance& instance) {
  if (instance.empty())
    throw std::domain_error(
        "deterministic_sensitivity: empty instance (average over no "
        "deletions)");
  Solution base = algorithm(instance);
  SensitivityReport report;
  report.method = SensitivityMethod::exact;
  report.trials = 1;
  std::vector<double> estimates;
  for (const Item& it : instance.items()) {
    Solution deleted = algorithm(instance.without(it.id));
    double d = static_cast<double>(hamming_distance(base, deleted));
    report.per_deletion.push_back({it.id, d, 0.0});
    estimates.push_back(d);
  }
  report.average = mean_stderr(estimates).mean;
  return report;
}

namespace {

// Coupled stable_knapsack: maximal coupling on c, conditional maximal
// coupling on the mechanism index given a shared c, identical greedy draw.
CoupledPair coupled_stable(const Instance& base, const Instance& deleted,
                           double eps, Rng& rng, const StableConfig& config) {
  StablePrep prep1 = stable_prep(base, eps);
  StablePrep prep2 = stable_prep(deleted, eps);
  CoupledPair pair;
  // fopt is monotone under deletion, so a degenerate base side implies a
  // degenerate deleted side.
  if (prep1.degenerate()) return pair;
  if (prep2.degenerate()) {
    Rng sub = rng.substream(1);
    pair.base = stable_knapsack(base, eps, sub, config).solution;
    return pair;
  }

  auto c = maximal_coupling_uniform({prep1.c_lo(), prep1.c_hi()},
                                    {prep2.c_lo(), prep2.c_hi()}, rng);
  StableParts parts1 = stable_parts(prep1, c.x1, config);
  StableParts parts2 = stable_parts(prep2, c.x2, config);

  std::size_t t1, t2;
  if (c.shared) {
    auto t = maximal_coupling_categorical(parts1.probs, parts2.probs, rng);
    t1 = t.i;
    t2 = t.j;
  } else {
    t1 = rng.categorical(parts1.probs);
    t2 = rng.categorical(parts2.probs);
  }

  double W = rng.uniform(prep1.W_lo(), 1.0);
  pair.base = stable_finish(parts1, t1, W);
  pair.deleted = stable_finish(parts2, t2, W);
  return pair;
}

CoupledPair coupled_fpras(const Instance& base, const Instance& deleted,
                          double eps, Rng& rng) {
  Instance norm1 = base.normalized();
  Instance norm2 = deleted.normalized();
  CoupledPair pair;
  if (norm1.empty() || !(fopt(norm1) > 0.0)) return pair;
  if (norm2.empty() || !(fopt(norm2) > 0.0)) {
    Rng sub = rng.substream(1);
    pair.base = fpras(base, eps, sub).solution;
    return pair;
  }

  double lo1 = fpras_delta_lo(norm1, eps);
  double lo2 = fpras_delta_lo(norm2, eps);
  auto delta =
      maximal_coupling_uniform({lo1, 2.0 * lo1}, {lo2, 2.0 * lo2}, rng);

  StableConfig config;
  config.solver = CandidateSolver::dp;
  double inner_eps = eps / 5.0;
  StablePrep prep1 = stable_prep(round_values(norm1, delta.x1), inner_eps);
  StablePrep prep2 = stable_prep(round_values(norm2, delta.x2), inner_eps);

  CoupledReals c;
  if (delta.shared) {
    c = maximal_coupling_uniform({prep1.c_lo(), prep1.c_hi()},
                                 {prep2.c_lo(), prep2.c_hi()}, rng);
  } else {
    c.x1 = rng.uniform(prep1.c_lo(), prep1.c_hi());
    c.x2 = rng.uniform(prep2.c_lo(), prep2.c_hi());
    c.shared = false;
  }
  StableParts parts1 = stable_parts(prep1, c.x1, config);
  StableParts parts2 = stable_parts(prep2, c.x2, config);

  std::size_t t1, t2;
  if (c.shared) {
    auto t = maximal_coupling_categorical(parts1.probs, parts2.probs, rng);
    t1 = t.i;
    t2 = t.j;
  } else {
    t1 = rng.categorical(parts1.probs);
    t2 = rng.categorical(parts2.probs);
  }

  double W = rng.uniform(prep1.W_lo(), 1.0);
  pair.base = stable_finish(parts1, t1, W);
  pair.deleted = stable_finish(parts2, t2, W);
  return pair;
}

}  // namespace

CoupledPair coupled_run(AlgorithmFamily family, const Instance& instance,
                        ItemId deleted_id, double eps,
                        std::uint64_t shared_seed, const StableConfig& config) {
  if (!instance.contains(deleted_id))
    throw std::domain_error("coupled_run: unknown item id " +
                            std::to_string(deleted_id));
  Instance deleted = instance.without(deleted_id);
  Rng rng(shared_seed);
  switch (family) {
    case AlgorithmFamily::plain_greedy:
      return {plain_greedy(instance), plain_greedy(deleted)};
    case AlgorithmFamily::simple_stable:
      return {simple_stable(instance, eps), simple_stable(deleted, eps)};
    case AlgorithmFamily::brute_force_opt:
      return {brute_force_opt(instance).solution,
              brute_force_opt(deleted).solution};
    case AlgorithmFamily::modified_greedy: {
      // Identical weight-limit draw on both sides; the W laws agree.
      double W = rng.uniform(1.0 - eps, 1.0);
      return {greedy_prefix(instance, W), greedy_prefix(deleted, W)};
    }
    case AlgorithmFamily::stable_knapsack:
      return coupled_stable(instance, deleted, eps, rng, config);
    case AlgorithmFamily::fpras:
      return coupled_fpras(instance, deleted, eps, rng);
  }
  throw std::domain_error("unknown algorithm family");
}

namespace {

// O(log n) coupled-trial distance for modified_greedy: both prefixes are
// binary searches over the same cumulative weights, and the symmetric
// difference follows from the two break indices alone.
struct FastGreedyCoupling {
  std::vector<double> cum;  // size n+1, raw weights in efficiency order
  std::vector<std::size_t> sorted_pos_of_item;  // instance order -> position
  double limit;

  explicit FastGreedyCoupling(const Instance& instance)
      : limit(instance.weight_limit()) {
    GreedyOrder order(instance);
    cum.assign(order.size() + 1, 0.0);
    for (std::size_t i = 0; i < order.size(); ++i)
      cum[i + 1] = cum[i] + order.items()[i].weight;
    std::map<ItemId, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i)
      pos[order.items()[i].id] = i;
    for (const Item& it : instance.items())
      sorted_pos_of_item.push_back(pos[it.id]);
  }

  std::size_t base_count(double cap) const {
    auto it = std::upper_bound(cum.begin(), cum.end(), cap);
    return static_cast<std::size_t>(it - cum.begin()) - 1;
  }

  // Prefix count when the item at sorted position p is removed.
  std::size_t deleted_count(double cap, std::size_t p) const {
    double wp = cum[p + 1] - cum[p];
    std::size_t lo = 0, hi = cum.size() - 2;  // counts 0..n-1
    // cum'(j) = cum[j] for j <= p, cum[j+1] - wp beyond.
    auto cum_del = [&](std::size_t j) {
      return j <= p ? cum[j] : cum[j + 1] - wp;
    };
    if (cum_del(hi) <= cap) return hi;
    while (lo < hi) {
      std::size_t mid = (lo + hi + 1) / 2;
      if (cum_del(mid) <= cap)
        lo = mid;
      else
        hi = mid - 1;
    }
    return lo;
  }

  std::size_t coupled_distance(double W, std::size_t item_index) const {
    double cap = W * limit + tolerance();
    std::size_t p = sorted_pos_of_item[item_index];
    auto t = static_cast<std::int64_t>(base_count(cap));
    auto ti = static_cast<std::int64_t>(deleted_count(cap, p));
    auto sp = static_cast<std::int64_t>(p);
    if (t < sp) return 0;
    if (t == sp) return static_cast<std::size_t>(ti - t);
    return static_cast<std::size_t>(ti - t + 2);  // ti >= t - 1 when p < t
  }
};

void run_chunk(std::size_t begin, std::size_t end,
               const std::function<void(std::size_t)>& body) {
  for (std::size_t i = begin; i < end; ++i) body(i);
}

void parallel_over(std::size_t n, unsigned threads,
                   const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n <= 1) {
    run_chunk(0, n, body);
    return;
  }
  unsigned use = std::min<unsigned>(threads, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  std::size_t chunk = (n + use - 1) / use;
  for (unsigned t = 0; t < use; ++t) {
    std::size_t begin = t * chunk;
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(run_chunk, begin, end, std::cref(body));
  }
  for (auto& th : pool) th.join();
}

}  // namespace

SensitivityReport mc_sensitivity_upper(AlgorithmFamily family,
                                       const Instance& instance, double eps,
                                       std::size_t trials, Rng& rng,
                                       const StableConfig& config,
                                       const McOptions& options) {
  if (instance.empty())
    throw std::domain_error("mc_sensitivity_upper: empty instance");
  if (trials == 0)
    throw std::domain_error("mc_sensitivity_upper: trials must be positive");

  const std::size_t n = instance.size();
  const unsigned threads = options.threads;
  SensitivityReport report;
  report.method = SensitivityMethod::coupled_mc;
  report.trials = trials;
  report.per_deletion.resize(n);

  const std::uint64_t master = rng.seed();
  const bool fast_greedy = (family == AlgorithmFamily::modified_greedy) &&
                           !options.force_generic_coupling;
  FastGreedyCoupling fast(fast_greedy ? instance : Instance{});
  if (!(eps > 0.0 && eps < 1.0) &&
      family != AlgorithmFamily::plain_greedy &&
      family != AlgorithmFamily::brute_force_opt)
    throw std::domain_error("mc_sensitivity_upper: eps must lie in (0, 1)");

  parallel_over(n, threads, [&](std::size_t index) {
    ItemId id = instance.items()[index].id;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      std::uint64_t seed = mix64(master ^ mix64(index + 1) ^
                                 mix64((trial + 1) << 20));
      double d;
      if (fast_greedy) {
        Rng trial_rng(seed);
        double W = trial_rng.uniform(1.0 - eps, 1.0);
        d = static_cast<double>(fast.coupled_distance(W, index));
      } else {
        CoupledPair pair = coupled_run(family, instance, id, eps, seed, config);
        d = static_cast<double>(hamming_distance(pair.base, pair.deleted));
      }
      sum += d;
      sumsq += d * d;
    }
    double mean = sum / static_cast<double>(trials);
    double ci = 0.0;
    if (trials > 1) {
      double var = (sumsq - sum * mean) / static_cast<double>(trials - 1);
      if (var < 0.0) var = 0.0;
      ci = 1.96 * std::sqrt(var / static_cast<double>(trials));
    }
    report.per_deletion[index] = {id, mean, ci};
  });

  double total = 0.0, var_of_mean = 0.0;
  for (const auto& est : report.per_deletion) {
    total += est.estimate;
    double se = est.ci_halfwidth / 1.96;
    var_of_mean += se * se;
  }
  report.average = total / static_cast<double>(n);
  report.average_stderr = std::sqrt(var_of_mean) / static_cast<double>(n);
  report.average_ci_halfwidth = 1.96 * report.average_stderr;
  return report;
}

SensitivityReport emd_sensitivity(AlgorithmFamily family,
                                  const Instance& instance, double eps,
                                  std::size_t trials, Rng& rng,
                                  const StableConfig& config) {
  if (instance.empty())
    throw std::domain_error("emd_sensitivity: empty instance");
  SensitivityReport report;
  report.method = SensitivityMethod::exact_emd;
  report.trials = trials;
  Rng base_rng = rng.substream(0);
  EmpiricalDistribution base =
      empirical_distribution(family, instance, eps, trials, base_rng, config);
  std::vector<double> estimates;
  for (std::size_t index = 0; index < instance.size(); ++index) {
    ItemId id = instance.items()[index].id;
    Rng del_rng = rng.substream(index + 1);
    EmpiricalDistribution del = empirical_distribution(
        family, instance.without(id), eps, trials, del_rng, config);
    double d = emd_exact(base, del);
    report.per_deletion.push_back({id, d, 0.0});
    estimates.push_back(d);
  }
  report.average = mean_stderr(estimates).mean;
  return report;
}

namespace {

void validate_distribution(const EmpiricalDistribution& dist,
                           const char* who) {
  double total = 0.0;
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    const auto& [solution, mass] = dist.support[i];
    if (mass < 0.0)
      throw std::domain_error(std::string(who) + ": negative mass");
    total += mass;
    for (std::size_t j = i + 1; j < dist.support.size(); ++j)
      if (dist.support[j].first == solution)
        throw std::domain_error(std::string(who) + ": duplicate support point");
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw std::domain_error(std::string(who) + ": masses do not sum to 1");
}

}  // namespace

double emd_exact(const EmpiricalDistribution& P,
                 const EmpiricalDistribution& Q) {
  validate_distribution(P, "emd_exact");
  validate_distribution(Q, "emd_exact");
  const std::size_t m = P.support.size();
  const std::size_t k = Q.support.size();
  if (m == 0 || k == 0) throw std::domain_error("emd_exact: empty support");

  std::vector<double> cost(m * k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j)
      cost[i * k + j] = static_cast<double>(
          hamming_distance(P.support[i].first, Q.support[j].first));

  // Successive shortest paths with Johnson potentials. Nodes: 0..m-1 the
  // P side, m..m+k-1 the Q side, m+k the source, m+k+1 the sink.
  const std::size_t source = m + k, sink = m + k + 1, nodes = m + k + 2;
  std::vector<double> used_p(m, 0.0), used_q(k, 0.0), flow(m * k, 0.0);
  std::vector<double> potential(nodes, 0.0);
  const double inf = std::numeric_limits<double>::infinity();
  double remaining = 1.0;
  double total_cost = 0.0;

  while (remaining > 1e-12) {
    std::vector<double> dist(nodes, inf);
    std::vector<int> parent(nodes, -1);
    std::vector<bool> done(nodes, false);
    dist[source] = 0.0;
    for (;;) {
      std::size_t u = nodes;
      double best = inf;
      for (std::size_t v = 0; v < nodes; ++v)
        if (!done[v] && dist[v] < best) best = dist[v], u = v;
      if (u == nodes) break;
      done[u] = true;
      auto relax = [&](std::size_t v, double edge_cost) {
        double nd = dist[u] + edge_cost + potential[u] - potential[v];
        if (nd < dist[v] - 1e-15) {
          dist[v] = nd;
          parent[v] = static_cast<int>(u);
        }
      };
      if (u == source) {
        for (std::size_t i = 0; i < m; ++i)
          if (P.support[i].second - used_p[i] > 1e-15) relax(i, 0.0);
      } else if (u < m) {
        for (std::size_t j = 0; j < k; ++j) relax(m + j, cost[u * k + j]);
      } else if (u < m + k) {
        std::size_t j = u - m;
        if (Q.support[j].second - used_q[j] > 1e-15) relax(sink, 0.0);
        for (std::size_t i = 0; i < m; ++i)
          if (flow[i * k + j] > 1e-15) relax(i, -cost[i * k + j]);
      }
    }
    if (dist[sink] == inf)
      throw std::domain_error("emd_exact: supplies and demands do not match");
    for (std::size_t v = 0; v < nodes; ++v)
      if (dist[v] < inf) potential[v] += dist[v];

    // Bottleneck along the path.
    double push = remaining;
    for (std::size_t v = sink; v != source;) {
      auto u = static_cast<std::size_t>(parent[v]);
      if (u == source)
        push = std::min(push, P.support[v].second - used_p[v]);
      else if (v == sink)
        push = std::min(push, Q.support[u - m].second - used_q[u - m]);
      else if (v < m)  // backward arc Q->P
        push = std::min(push, flow[v * k + (u - m)]);
      v = u;
    }
    for (std::size_t v = sink; v != source;) {
      auto u = static_cast<std::size_t>(parent[v]);
      if (u == source) {
        used_p[v] += push;
      } else if (v == sink) {
        used_q[u - m] += push;
      } else if (u < m) {  // forward arc P->Q
        flow[u * k + (v - m)] += push;
        total_cost += push * cost[u * k + (v - m)];
      } else {  // backward arc Q->P
        flow[v * k + (u - m)] -= push;
        total_cost -= push * cost[v * k + (u - m)];
      }
      v = u;
    }
    remaining -= push;
  }
  return total_cost;
}

}  // namespace knapsack
