#include "knapsack/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "knapsack/rng.hpp"

namespace knapsack {

Instance gen_prop2(std::int64_t k) {
  if (k < 2) throw std::domain_error("gen_prop2: k must be at least 2");
  auto kd = static_cast<double>(k);
  std::vector<Item> items;
  items.reserve(static_cast<std::size_t>(2 * k));
  for (std::int64_t i = 1; i <= k; ++i)
    items.push_back({i, 1.0 / kd, 1.0 / kd});
  for (std::int64_t i = k + 1; i <= 2 * k; ++i)
    items.push_back({i, 1.0 / (kd * kd * kd), 1.0 / (kd * kd)});
  return Instance(std::move(items), 1.0);
}

Instance gen_lowerbound_k(std::int64_t k) {
  if (k < 2) throw std::domain_error("gen_lowerbound: k must be at least 2");
  auto kd = static_cast<double>(k);
  std::vector<Item> items;
  items.reserve(static_cast<std::size_t>(2 * k - 1));
  for (std::int64_t i = 1; i <= k; ++i) items.push_back({i, 1.0, 1.0 / kd});
  double v2 = (2.0 * kd - 1.0) / (2.0 * kd - 2.0);
  for (std::int64_t i = k + 1; i <= 2 * k - 1; ++i)
    items.push_back({i, v2, 1.0 / (kd - 1.0)});
  return Instance(std::move(items), 1.0);
}

Instance gen_lowerbound(double eps) {
  if (!(eps > 0.0)) throw std::domain_error("gen_lowerbound: eps must be positive");
  auto k = static_cast<std::int64_t>(std::floor(1.0 / eps / 8.0));
  return gen_lowerbound_k(k);
}

namespace {

double draw_from(const DistSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case DistSpec::Kind::uniform:
      if (!(spec.hi > spec.lo))
        throw std::domain_error("gen_random: empty uniform range");
      return rng.uniform(spec.lo, spec.hi);
    case DistSpec::Kind::pareto: {
      if (!(spec.alpha > 0.0))
        throw std::domain_error("gen_random: pareto alpha must be positive");
      // Lomax form: heavy tail with support starting at 0.
      double u = rng.uniform01();
      return std::pow(1.0 - u, -1.0 / spec.alpha) - 1.0;
    }
  }
  throw std::domain_error("gen_random: unknown distribution");
}

}  // namespace

Instance gen_random(std::size_t n, DistSpec value_dist, DistSpec weight_dist,
                    std::uint64_t seed, bool simple) {
  Rng rng(seed);
  std::vector<Item> items;
  items.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double weight = std::clamp(draw_from(weight_dist, rng), 1e-6, 1.0);
    double value = simple ? weight : std::max(0.0, draw_from(value_dist, rng));
    items.push_back({static_cast<ItemId>(i + 1), value, weight});
  }
  return Instance(std::move(items), 1.0);
}

Instance parse_instance(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance JSON: expected an object");
  if (!doc.contains("weight_limit"))
    throw ParseError("instance JSON: missing weight_limit");
  if (!doc.contains("items") || !doc["items"].is_array())
    throw ParseError("instance JSON: missing items array");
  double limit;
  std::vector<Item> items;
  try {
    limit = doc["weight_limit"].get<double>();
    for (const auto& entry : doc["items"]) {
      Item it;
      it.id = entry.at("id").get<ItemId>();
      it.value = entry.at("value").get<double>();
      it.weight = entry.at("weight").get<double>();
      items.push_back(it);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
  try {
    return Instance(std::move(items), limit);
  } catch (const std::domain_error& e) {
    // Invariant violations in a file are input errors, with the id context
    // the constructor already provides.
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
}

std::string instance_to_json(const Instance& instance) {
  nlohmann::json items = nlohmann::json::array();
  for (const Item& it : instance.items())
    items.push_back({{"id", it.id}, {"value", it.value}, {"weight", it.weight}});
  nlohmann::json doc{{"weight_limit", instance.weight_limit()},
                     {"items", std::move(items)}};
  return doc.dump(2) + "\n";
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_instance(const Instance& instance,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_json(instance);
}

}  // namespace knapsack
