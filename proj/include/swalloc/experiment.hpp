#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "swalloc/instance_io.hpp"

namespace swalloc {

enum class OrderMode { Given, Random, All };

OrderMode parse_order_mode(const std::string& name);  // "given", "random", "all"

struct ExperimentConfig {
  std::vector<ProblemInstance> instances;
  std::string alg = "adv";  // adv | greedy | rrg-smooth | rrg
  OrderMode order = OrderMode::Given;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::optional<std::size_t> T;  // rrg-smooth iterations; default_T(k) when empty
  /// Expectations by branch enumeration instead of sampling (adv only).
  bool exact = false;
  /// Compare every row with the algorithm's guarantee.
  bool check_thresholds = true;
};

/// Orders tried by OrderMode::All: every permutation for m <= 5, otherwise 50
/// random permutations drawn from the seed.
std::vector<std::vector<std::size_t>> experiment_orders(std::size_t items, std::uint64_t seed);

/// "1-2-3" (1-based items).
std::string order_id(const std::vector<std::size_t>& order);

struct ExperimentRow {
  std::string instance_id;
  std::string alg;
  std::string order_id;
  std::size_t trials = 0;  // 0 in exact mode
  std::uint64_t seed = 0;
  double mean_welfare = 0;
  double std_error = 0;
  double opt = 0;
  double ratio_lower = 0;  // (mean - 3 stderr) / opt; NaN when opt == 0
  double threshold = 0;
  bool passed = true;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  bool all_passed = true;
};

/// Guarantee checked for an algorithm: 0.25 for adv and rrg, 0.27493 for greedy and rrg-smooth.
double algorithm_threshold(const std::string& alg);

ExperimentResult run_experiment(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader = "instance_id,alg,order_id,trials,seed,mean_welfare,stderr,opt,ratio_lower";

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

/// Every *.inst file under `path` (or the file itself), parsed.
std::vector<ProblemInstance> load_instances(const std::filesystem::path& path);

}  // namespace swalloc
