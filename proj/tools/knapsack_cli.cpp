// Command-line front end: solve one instance, measure average sensitivity,
// simulate incremental/decremental item streams, and generate instances.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "knapsack/dynamic.hpp"
#include "knapsack/fpras.hpp"
#include "knapsack/greedy.hpp"
#include "knapsack/instances.hpp"
#include "knapsack/oracles.hpp"
#include "knapsack/sensitivity.hpp"
#include "knapsack/simple.hpp"
#include "knapsack/stable.hpp"

namespace {

using namespace knapsack;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitInternal = 4;

AlgorithmFamily parse_family(const std::string& name) {
  if (name == "greedy") return AlgorithmFamily::plain_greedy;
  if (name == "modified-greedy") return AlgorithmFamily::modified_greedy;
  if (name == "stable") return AlgorithmFamily::stable_knapsack;
  if (name == "fpras") return AlgorithmFamily::fpras;
  if (name == "simple") return AlgorithmFamily::simple_stable;
  throw CLI::ValidationError("--alg", "unknown algorithm " + name);
}

std::uint64_t default_seed() {
  std::random_device entropy;
  return (static_cast<std::uint64_t>(entropy()) << 32) ^ entropy();
}

json transcript_json(const Transcript& transcript) {
  json out = json::array();
  for (const TranscriptEntry& e : transcript.entries()) {
    if (e.is_real())
      out.push_back({{"stage", e.stage}, {"draw", e.real()}});
    else
      out.push_back({{"stage", e.stage}, {"draw", e.integer()}});
  }
  return out;
}

void emit(const std::string& text, const std::optional<std::string>& out_path) {
  if (!out_path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*out_path);
  if (!out) throw std::runtime_error("cannot write " + *out_path);
  out << text;
}

DistSpec parse_dist(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "uniform") {
    auto comma = args.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("dist", "uniform needs lo,hi");
    return DistSpec::Uniform(std::stod(args.substr(0, comma)),
                             std::stod(args.substr(comma + 1)));
  }
  if (kind == "pareto") {
    if (args.empty()) throw CLI::ValidationError("dist", "pareto needs alpha");
    return DistSpec::Pareto(std::stod(args));
  }
  throw CLI::ValidationError("dist", "unknown distribution " + text);
}

struct SolveArgs {
  std::string instance_path;
  std::string alg = "stable";
  double eps = 0.25;
  std::optional<std::uint64_t> seed;
  bool as_json = false;
};

int run_solve(const SolveArgs& args) {
  Instance instance = read_instance(args.instance_path);
  std::uint64_t seed = args.seed.value_or(default_seed());
  Rng rng(seed);
  AlgorithmFamily family = parse_family(args.alg);

  Solution solution;
  Transcript transcript;
  switch (family) {
    case AlgorithmFamily::plain_greedy:
      solution = plain_greedy(instance);
      break;
    case AlgorithmFamily::modified_greedy: {
      GreedyRun run = modified_greedy(instance, args.eps, rng);
      solution = run.solution;
      transcript = run.transcript;
      break;
    }
    case AlgorithmFamily::stable_knapsack: {
      StableRun run = stable_knapsack(instance, args.eps, rng);
      solution = run.solution;
      transcript = run.transcript;
      break;
    }
    case AlgorithmFamily::fpras: {
      FprasRun run = fpras(instance, args.eps, rng);
      solution = run.solution;
      transcript = run.transcript;
      break;
    }
    case AlgorithmFamily::simple_stable:
      solution = simple_stable(instance, args.eps);
      break;
    default:
      throw std::domain_error("unsupported algorithm");
  }

  double value = value_of(instance, solution);
  double weight = weight_of(instance, solution);
  bool randomized = !family_is_deterministic(family);
  if (args.as_json) {
    json doc{{"schema_version", 1},
             {"algorithm", args.alg},
             {"eps", args.eps},
             {"seed", seed},
             {"solution",
              {{"ids", solution.ids()}, {"value", value}, {"weight", weight}}}};
    if (randomized) doc["transcript"] = transcript_json(transcript);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "algorithm: " << args.alg << "\n";
    if (randomized) std::cout << "seed: " << seed << "\n";
    std::cout << "ids:";
    for (ItemId id : solution.ids()) std::cout << ' ' << id;
    std::cout << "\nvalue: " << value << "\nweight: " << weight << "\n";
    if (randomized) {
      std::cout << "transcript:";
      for (const TranscriptEntry& e : transcript.entries()) {
        std::cout << ' ' << e.stage << '=';
        if (e.is_real())
          std::cout << e.real();
        else
          std::cout << e.integer();
      }
      std::cout << "\n";
    }
  }
  return kExitOk;
}

struct SensitivityArgs {
  std::string instance_path;
  std::string alg = "stable";
  double eps = 0.25;
  std::size_t trials = 10000;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::optional<std::string> out;
  unsigned threads = 1;
};

int run_sensitivity(const SensitivityArgs& args) {
  Instance instance = read_instance(args.instance_path);
  std::uint64_t seed = args.seed.value_or(default_seed());
  AlgorithmFamily family = parse_family(args.alg);

  SensitivityReport report;
  if (family_is_deterministic(family)) {
    // Deterministic algorithms route to the exact per-deletion measurement.
    report = deterministic_sensitivity(
        [&](const Instance& v) {
          Rng unused(0);
          return run_family(family, v, args.eps, unused);
        },
        instance);
  } else {
    Rng rng(seed);
    McOptions options;
    options.threads = args.threads;
    report = mc_sensitivity_upper(family, instance, args.eps, args.trials, rng,
                                  {}, options);
  }

  if (args.format == "csv") {
    std::string csv = "# algorithm " + args.alg + ", eps " +
                      std::to_string(args.eps) + ", seed " +
                      std::to_string(seed) + "\n" + report_to_csv(report);
    emit(csv, args.out);
  } else {
    json doc = json::parse(report_to_json(report));
    doc["algorithm"] = args.alg;
    doc["eps"] = args.eps;
    doc["seed"] = seed;
    emit(doc.dump(2) + "\n", args.out);
  }
  return kExitOk;
}

struct StreamArgs {
  std::string instance_path;
  double eps = 0.25;
  std::optional<std::uint64_t> seed;
  std::string mode = "incr";
  std::optional<std::string> family;
  std::string format = "json";
  std::optional<std::string> out;
  unsigned threads = 1;
};

int run_stream(const StreamArgs& args) {
  Instance instance = read_instance(args.instance_path);
  std::uint64_t seed = args.seed.value_or(default_seed());
  Rng rng(seed);
  StreamOptions options;
  if (args.family) {
    if (*args.family == "exact")
      options.family = StreamFamily::stable_exact;
    else if (*args.family == "fpras")
      options.family = StreamFamily::fpras;
    else
      throw CLI::ValidationError("--family", "use exact or fpras");
  }
  RecourseReport report =
      args.mode == "decr" ? decremental_simulate(instance, args.eps, rng, options)
                          : stream_simulate(instance, args.eps, rng, options);
  if (args.format == "csv") {
    std::string csv = "# mode " + args.mode + ", eps " +
                      std::to_string(args.eps) + ", seed " +
                      std::to_string(seed) + "\n" + report_to_csv(report);
    emit(csv, args.out);
  } else {
    json doc = json::parse(report_to_json(report));
    doc["mode"] = args.mode;
    doc["eps"] = args.eps;
    doc["seed"] = seed;
    emit(doc.dump(2) + "\n", args.out);
  }
  return kExitOk;
}

struct GenArgs {
  std::string family;
  std::int64_t k = 4;
  double eps = 0.04;
  std::size_t n = 100;
  std::string value_dist = "uniform:0,1";
  std::string weight_dist = "uniform:0.01,1";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

int run_gen(const GenArgs& args) {
  Instance instance;
  if (args.family == "prop2") {
    instance = gen_prop2(args.k);
  } else if (args.family == "lowerbound") {
    instance = gen_lowerbound(args.eps);
  } else if (args.family == "random" || args.family == "simple-random") {
    std::uint64_t seed = args.seed.value_or(default_seed());
    instance = gen_random(args.n, parse_dist(args.value_dist),
                          parse_dist(args.weight_dist), seed,
                          args.family == "simple-random");
  } else {
    throw CLI::ValidationError("--family", "unknown family " + args.family);
  }
  emit(instance_to_json(instance), args.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable-on-average knapsack laboratory"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("instance", solve_args.instance_path)->required();
  solve->add_option("--alg", solve_args.alg,
                    "greedy|modified-greedy|stable|fpras|simple");
  solve->add_option("--eps", solve_args.eps);
  solve->add_option("--seed", solve_args.seed);
  solve->add_flag("--json", solve_args.as_json);

  SensitivityArgs sens_args;
  CLI::App* sens = app.add_subcommand("sensitivity",
                                      "measure average sensitivity");
  sens->add_option("instance", sens_args.instance_path)->required();
  sens->add_option("--alg", sens_args.alg);
  sens->add_option("--eps", sens_args.eps);
  sens->add_option("--trials", sens_args.trials);
  sens->add_option("--seed", sens_args.seed);
  sens->add_option("--format", sens_args.format)
      ->check(CLI::IsMember({"json", "csv"}));
  sens->add_option("--out", sens_args.out);
  sens->add_option("--threads", sens_args.threads);

  StreamArgs stream_args;
  CLI::App* stream = app.add_subcommand("stream",
                                        "incremental/decremental simulation");
  stream->add_option("instance", stream_args.instance_path)->required();
  stream->add_option("--eps", stream_args.eps);
  stream->add_option("--seed", stream_args.seed);
  stream->add_option("--mode", stream_args.mode)
      ->check(CLI::IsMember({"incr", "decr"}));
  stream->add_option("--family", stream_args.family,
                     "per-step algorithm: exact|fpras");
  stream->add_option("--format", stream_args.format)
      ->check(CLI::IsMember({"json", "csv"}));
  stream->add_option("--out", stream_args.out);
  stream->add_option("--threads", stream_args.threads,
                     "accepted for parity; a single stream is sequential");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--family", gen_args.family,
                  "prop2|lowerbound|random|simple-random")
      ->required();
  gen->add_option("--k", gen_args.k);
  gen->add_option("--eps", gen_args.eps);
  gen->add_option("--n", gen_args.n);
  gen->add_option("--value-dist", gen_args.value_dist);
  gen->add_option("--weight-dist", gen_args.weight_dist);
  gen->add_option("--seed", gen_args.seed);
  gen->add_option("--out", gen_args.out);

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return run_solve(solve_args);
    if (sens->parsed()) return run_sensitivity(sens_args);
    if (stream->parsed()) return run_stream(stream_args);
    if (gen->parsed()) return run_gen(gen_args);
    return kExitInput;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::length_error& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
